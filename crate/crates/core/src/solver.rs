//! Bottom-up dynamic program deciding whether a tree admits a connected
//! `kappa`-subpartition whose parts all have expansion at most `xi` while
//! leaving at most `lambda` vertices uncovered.
//!
//! For every vertex `u` two grids are filled, indexed by part count `k` and
//! residue budget `l`:
//!
//! * `gamma(u, k, l)`: the least total charge `eps(e) = xi*w(T_e) + c(e)`
//!   (minus `p(T_e)` with potentials) of the edges cut off the part that
//!   contains `u`, over subpartitions of `T_u` whose other parts are already
//!   within the threshold. `Infinity` when no such subpartition exists.
//! * `mu(u, k, l)`: whether `T_u` admits a feasible subpartition, with the
//!   part containing `u` paying for the edge to `u`'s parent.
//!
//! A part containing `u` is feasible exactly when its charge total is at
//! most `xi*w(T_u) - c(e_u) - p(T_u)`, so every decision is an integer
//! comparison once the instance is scaled.
//!
//! Grids are capped at `k <= |T_u|`; entries past the cap are `Infinity`
//! and `false`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::ratio::IntoRational;
use crate::tree::{scale_instance, RootedTree, ScaledValue};

/// Parameters of one decision query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    /// Expansion threshold; nonnegative.
    pub xi: BigRational,
    /// Number of parts; at least one.
    pub kappa: usize,
    /// Maximum number of uncovered vertices.
    pub lambda: usize,
    /// Add vertex potentials to each part's cut cost.
    pub use_potentials: bool,
    /// Vertex ids that must not be left uncovered.
    pub forbidden: BTreeSet<String>,
}

impl ProblemSpec {
    pub fn new(xi: impl IntoRational, kappa: usize, lambda: usize) -> Self {
        ProblemSpec {
            xi: xi.into_rational(),
            kappa,
            lambda,
            use_potentials: false,
            forbidden: BTreeSet::new(),
        }
    }

    pub fn with_potentials(mut self, on: bool) -> Self {
        self.use_potentials = on;
        self
    }

    pub fn with_forbidden<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.forbidden = ids.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_xi(&self, xi: impl IntoRational) -> Self {
        ProblemSpec {
            xi: xi.into_rational(),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.kappa == 0 {
            return Err(Error::InvalidSpec("kappa must be at least 1".into()));
        }
        if self.xi.is_negative() {
            return Err(Error::InvalidSpec("xi must be nonnegative".into()));
        }
        Ok(())
    }
}

pub(crate) trait Exact: Clone + Ord + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Per-vertex cut charge of the parent edge and feasibility threshold.
struct Charges<N> {
    eps: Vec<N>,
    threshold: Vec<N>,
}

fn charges_wide(tree: &RootedTree, xi: &BigRational, potentials: bool) -> Charges<BigInt> {
    let s = scale_instance(tree, xi);
    let n = tree.len();
    let mut eps = Vec::with_capacity(n);
    let mut threshold = Vec::with_capacity(n);
    for v in 0..n {
        let mut e = &s.xi_subtree_weight[v] + &s.parent_edge_cost[v];
        let mut t = &s.xi_subtree_weight[v] - &s.parent_edge_cost[v];
        if potentials {
            e -= &s.subtree_potential[v];
            t -= &s.subtree_potential[v];
        }
        eps.push(e);
        threshold.push(t);
    }
    Charges { eps, threshold }
}

/// `i128` charges when every partial sum the sweep can form provably fits.
fn charges_narrow(tree: &RootedTree, xi: &BigRational, potentials: bool) -> Option<Charges<i128>> {
    let (w_total, c_total, p_total) = tree.scaled_totals();
    let a = xi.numer();
    let b = xi.denom();
    let p_total = if potentials { p_total } else { BigInt::from(0) };
    let bound = a * w_total + b * (c_total + p_total);
    if bound.bits() > 124 {
        return None;
    }
    let a = a.to_i128()?;
    let b = b.to_i128()?;
    let wt = tree.subtree_weight_column().narrow()?;
    let cost = tree.cost_column().narrow()?;
    let pt = tree.subtree_potential_column().narrow()?;
    let n = tree.len();
    let mut eps = Vec::with_capacity(n);
    let mut threshold = Vec::with_capacity(n);
    for v in 0..n {
        let xw = a * wt[v];
        let c = b * cost[v];
        let p = if potentials { b * pt[v] } else { 0 };
        eps.push(xw + c - p);
        threshold.push(xw - c - p);
    }
    Some(Charges { eps, threshold })
}

/// How `mu(u, k, l)` was satisfied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Via {
    Infeasible,
    /// `u` lies in a part; see the gamma records.
    Gamma,
    /// `u` is uncovered; for `k = 0` so is its whole subtree.
    Residue,
}

/// Backtrack records for one vertex.
#[derive(Clone, Debug, Default)]
pub(crate) struct Choices {
    pub(crate) via: Vec<Via>,
    /// Per child: whether the child edge is cut in `X(i, k, l)`.
    pub(crate) cut: Vec<Vec<bool>>,
    /// Per child `i >= 1`: the `(k', l')` kept by the prefix in `Y(i, k, l)`.
    pub(crate) gamma_split: Vec<Vec<(u32, u32)>>,
    /// Per child `i >= 1`: the `(k', l')` kept by the prefix in `U(i, k, l)`.
    pub(crate) residue_split: Vec<Vec<(u32, u32)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Rows<N> {
    /// Largest stored part count, `min(kappa, |T_u|)`.
    kcap: usize,
    /// `(kcap + 1) * width` entries, `k = 0` row unused.
    gamma: Vec<ScaledValue<N>>,
    mu: Vec<bool>,
}

impl<N> Rows<N> {
    #[inline]
    fn gamma(&self, k: usize, l: usize, width: usize) -> Option<&ScaledValue<N>> {
        if k == 0 || k > self.kcap {
            None
        } else {
            Some(&self.gamma[k * width + l])
        }
    }

    #[inline]
    fn mu(&self, k: usize, l: usize, width: usize) -> bool {
        k <= self.kcap && self.mu[k * width + l]
    }
}

struct Sweep<N> {
    rows: Vec<Option<Rows<N>>>,
    choices: Option<Vec<Choices>>,
}

struct Setup {
    kappa: usize,
    width: usize,
    forbidden: Vec<bool>,
    forbidden_below: Vec<usize>,
}

fn setup(tree: &RootedTree, spec: &ProblemSpec) -> Result<Setup> {
    spec.validate()?;
    let n = tree.len();
    let mut forbidden = vec![false; n];
    for id in &spec.forbidden {
        let v = tree
            .index_of(id)
            .ok_or_else(|| Error::UnknownVertexId(id.clone()))?;
        forbidden[v] = true;
    }
    let mut forbidden_below: Vec<usize> = forbidden.iter().map(|&f| f as usize).collect();
    for &u in tree.processing_order() {
        if let Some(p) = tree.parent(u) {
            forbidden_below[p] += forbidden_below[u];
        }
    }
    let lambda = if spec.lambda > n {
        log::warn!("outlier budget {} exceeds the {} vertices; using {}", spec.lambda, n, n);
        n
    } else {
        spec.lambda
    };
    Ok(Setup {
        kappa: spec.kappa,
        width: lambda + 1,
        forbidden,
        forbidden_below,
    })
}

fn sweep<N: Exact>(tree: &RootedTree, charges: &Charges<N>, setup: &Setup, record: bool) -> Sweep<N> {
    let n = tree.len();
    let mut rows: Vec<Option<Rows<N>>> = (0..n).map(|_| None).collect();
    let mut choices = record.then(|| vec![Choices::default(); n]);
    for &u in tree.processing_order() {
        let (row, choice) = if tree.is_leaf(u) {
            leaf_base_case(u, charges, setup, record)
        } else {
            let (gamma, gamma_choice) = gamma_table(tree, u, charges, setup, &rows, record);
            mu_table(tree, u, gamma, gamma_choice, charges, setup, &rows, record)
        };
        rows[u] = Some(row);
        if let Some(all) = choices.as_mut() {
            all[u] = choice;
        } else {
            for &c in tree.children(u) {
                rows[c] = None;
            }
        }
    }
    Sweep { rows, choices }
}

/// A leaf forms a part on its own (feasible iff `c(e_u) + p(u) <= xi*w(u)`)
/// or is uncovered.
fn leaf_base_case<N: Exact>(u: usize, charges: &Charges<N>, setup: &Setup, record: bool) -> (Rows<N>, Choices) {
    let w = setup.width;
    let kcap = 1;
    let mut gamma = vec![ScaledValue::Infinity; (kcap + 1) * w];
    let mut mu = vec![false; (kcap + 1) * w];
    let mut via = if record { vec![Via::Infeasible; (kcap + 1) * w] } else { Vec::new() };
    let own_part = charges.threshold[u] >= N::zero();
    for l in 0..w {
        if l >= 1 && !setup.forbidden[u] {
            mu[l] = true;
            if record {
                via[l] = Via::Residue;
            }
        }
        gamma[w + l] = ScaledValue::Finite(N::zero());
        if own_part {
            mu[w + l] = true;
            if record {
                via[w + l] = Via::Gamma;
            }
        }
    }
    let choice = Choices {
        via,
        ..Choices::default()
    };
    (Rows { kcap, gamma, mu }, choice)
}

/// Gamma grid of an internal vertex by a knapsack over its children.
///
/// `X(i, k, l)` is the cheaper of cutting child `i` (charge `eps`, allowed
/// when its subtree holds `k - 1` feasible parts) and keeping it in `u`'s
/// part (`gamma(u_i, k, l)`); ties cut. `Y` folds the children left to
/// right, the shared part being counted once: `k' + k'' = k + 1`.
fn gamma_table<N: Exact>(
    tree: &RootedTree,
    u: usize,
    charges: &Charges<N>,
    setup: &Setup,
    rows: &[Option<Rows<N>>],
    record: bool,
) -> (Rows<N>, Choices) {
    let w = setup.width;
    let kids = tree.children(u);
    let mut choice = Choices::default();
    if record {
        choice.cut.reserve(kids.len());
        choice.gamma_split.reserve(kids.len());
    }
    let mut y: Vec<ScaledValue<N>> = Vec::new();
    let mut y_cap = 0;
    let mut covered = 1;
    for (i, &c) in kids.iter().enumerate() {
        let child = rows[c].as_ref().expect("child processed before parent");
        let x_cap = setup.kappa.min(tree.subtree_size(c) + 1);
        let eps = &charges.eps[c];
        let mut x = vec![ScaledValue::Infinity; (x_cap + 1) * w];
        let mut cut = if record { vec![false; (x_cap + 1) * w] } else { Vec::new() };
        for k in 1..=x_cap {
            for l in 0..w {
                let keep = child.gamma(k, l, w);
                let cheaper_cut = match keep {
                    Some(ScaledValue::Finite(g)) => eps <= g,
                    _ => true,
                };
                if child.mu(k - 1, l, w) && cheaper_cut {
                    x[k * w + l] = ScaledValue::Finite(eps.clone());
                    if record {
                        cut[k * w + l] = true;
                    }
                } else if let Some(g) = keep {
                    x[k * w + l] = g.clone();
                }
            }
        }
        if record {
            choice.cut.push(cut);
        }

        if i == 0 {
            y = x;
            y_cap = x_cap;
            if record {
                choice.gamma_split.push(Vec::new());
            }
        } else {
            let cap = setup.kappa.min(covered + tree.subtree_size(c));
            let mut next = vec![ScaledValue::Infinity; (cap + 1) * w];
            let mut split = if record { vec![(0u32, 0u32); (cap + 1) * w] } else { Vec::new() };
            for k in 1..=cap {
                let k_lo = (k + 1).saturating_sub(x_cap).max(1);
                let k_hi = k.min(y_cap);
                for l in 0..w {
                    let mut best: Option<N> = None;
                    let mut arg = (0u32, 0u32);
                    for lp in 0..=l {
                        for kp in k_lo..=k_hi {
                            let (ScaledValue::Finite(a), ScaledValue::Finite(b)) =
                                (&y[kp * w + lp], &x[(k + 1 - kp) * w + (l - lp)])
                            else {
                                continue;
                            };
                            let total = a.plus(b);
                            if best.as_ref().is_none_or(|cur| total < *cur) {
                                best = Some(total);
                                arg = (kp as u32, lp as u32);
                            }
                        }
                    }
                    if let Some(best) = best {
                        next[k * w + l] = ScaledValue::Finite(best);
                        if record {
                            split[k * w + l] = arg;
                        }
                    }
                }
            }
            y = next;
            y_cap = cap;
            if record {
                choice.gamma_split.push(split);
            }
        }
        covered += tree.subtree_size(c);
    }
    debug_assert_eq!(y_cap, setup.kappa.min(tree.subtree_size(u)));
    (
        Rows {
            kcap: y_cap,
            gamma: y,
            mu: Vec::new(),
        },
        choice,
    )
}

/// Feasibility grid of an internal vertex.
///
/// `mu(u, k, l)` holds when the best part through `u` meets the threshold,
/// or when `u` may be uncovered (`l >= 1`, `u` not forbidden) and the
/// children together hold `k` feasible parts with at most `l - 1` uncovered
/// vertices. `U(i, k, l)` tracks the latter over the first `i` children with
/// residue total at most `l`; the single unit for `u` is charged once.
#[allow(clippy::too_many_arguments)]
fn mu_table<N: Exact>(
    tree: &RootedTree,
    u: usize,
    mut row: Rows<N>,
    mut choice: Choices,
    charges: &Charges<N>,
    setup: &Setup,
    rows: &[Option<Rows<N>>],
    record: bool,
) -> (Rows<N>, Choices) {
    let w = setup.width;
    let kids = tree.children(u);
    let mut combo: Vec<bool> = Vec::new();
    let mut combo_cap = 0;
    let mut covered = 0;
    if record {
        choice.residue_split.reserve(kids.len());
    }
    for (i, &c) in kids.iter().enumerate() {
        let child = rows[c].as_ref().expect("child processed before parent");
        if i == 0 {
            combo = child.mu.clone();
            combo_cap = child.kcap;
            if record {
                choice.residue_split.push(Vec::new());
            }
        } else {
            let cap = setup.kappa.min(covered + tree.subtree_size(c));
            let mut next = vec![false; (cap + 1) * w];
            let mut split = if record { vec![(0u32, 0u32); (cap + 1) * w] } else { Vec::new() };
            for k in 0..=cap {
                let k_lo = k.saturating_sub(child.kcap);
                let k_hi = k.min(combo_cap);
                for l in 0..w {
                    'search: for lp in 0..=l {
                        for kp in k_lo..=k_hi {
                            if combo[kp * w + lp] && child.mu[(k - kp) * w + (l - lp)] {
                                next[k * w + l] = true;
                                if record {
                                    split[k * w + l] = (kp as u32, lp as u32);
                                }
                                break 'search;
                            }
                        }
                    }
                }
            }
            combo = next;
            combo_cap = cap;
            if record {
                choice.residue_split.push(split);
            }
        }
        covered += tree.subtree_size(c);
    }

    let kcap = row.kcap;
    let mut mu = vec![false; (kcap + 1) * w];
    let mut via = if record { vec![Via::Infeasible; (kcap + 1) * w] } else { Vec::new() };
    let threshold = &charges.threshold[u];
    let whole_residue_ok = setup.forbidden_below[u] == 0;
    for l in 0..w {
        if whole_residue_ok && tree.subtree_size(u) <= l {
            mu[l] = true;
            if record {
                via[l] = Via::Residue;
            }
        }
    }
    for k in 1..=kcap {
        for l in 0..w {
            let idx = k * w + l;
            let through_u = matches!(&row.gamma[idx], ScaledValue::Finite(g) if g <= threshold);
            if through_u {
                mu[idx] = true;
                if record {
                    via[idx] = Via::Gamma;
                }
            } else if l >= 1 && !setup.forbidden[u] && k <= combo_cap && combo[k * w + l - 1] {
                mu[idx] = true;
                if record {
                    via[idx] = Via::Residue;
                }
            }
        }
    }
    row.mu = mu;
    choice.via = via;
    (row, choice)
}

enum Store {
    Narrow(Vec<Option<Rows<i128>>>),
    Wide(Vec<Option<Rows<BigInt>>>),
}

fn run(tree: &RootedTree, spec: &ProblemSpec, record: bool) -> Result<(Setup, Store, Option<Vec<Choices>>)> {
    let setup = setup(tree, spec)?;
    let (store, choices) = match charges_narrow(tree, &spec.xi, spec.use_potentials) {
        Some(ch) => {
            let s = sweep(tree, &ch, &setup, record);
            (Store::Narrow(s.rows), s.choices)
        }
        None => {
            let ch = charges_wide(tree, &spec.xi, spec.use_potentials);
            let s = sweep(tree, &ch, &setup, record);
            (Store::Wide(s.rows), s.choices)
        }
    };
    Ok((setup, store, choices))
}

/// Full DP output: gamma and mu grids of every vertex plus backtrack records.
pub struct DpTables {
    spec: ProblemSpec,
    vertex_count: usize,
    root: usize,
    width: usize,
    store: Store,
    choices: Vec<Choices>,
}

impl fmt::Debug for DpTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DpTables")
            .field("spec", &self.spec)
            .field("vertex_count", &self.vertex_count)
            .field("feasible", &self.feasible())
            .finish_non_exhaustive()
    }
}

/// Backtrack record of one `mu(u, k, l)` entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Choice {
    /// `u` lies in a part whose cut edges are given by the gamma records.
    GammaWitness,
    /// Leaf forming a part on its own.
    LeafPart,
    /// Leaf left uncovered.
    LeafResidue,
    /// `u` is uncovered; child `i` receives `splits[i] = (k_i, l_i)`.
    ResidueRoot { splits: Vec<(usize, usize)> },
    Infeasible,
}

impl DpTables {
    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    /// Answer at the root for the requested `(kappa, lambda)`.
    pub fn feasible(&self) -> bool {
        self.mu(self.root, self.spec.kappa, self.spec.lambda)
    }

    /// Largest residue budget held in the grids.
    pub fn lambda_cap(&self) -> usize {
        self.width - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// `mu(u, k, l)`; budgets above the grid saturate.
    pub fn mu(&self, u: usize, k: usize, l: usize) -> bool {
        let l = l.min(self.width - 1);
        match &self.store {
            Store::Narrow(r) => r[u].as_ref().unwrap().mu(k, l, self.width),
            Store::Wide(r) => r[u].as_ref().unwrap().mu(k, l, self.width),
        }
    }

    /// `gamma(u, k, l)` in the units of [`scale_instance`] for this `xi`.
    pub fn gamma(&self, u: usize, k: usize, l: usize) -> ScaledValue {
        let l = l.min(self.width - 1);
        fn lift<N: Exact>(v: Option<&ScaledValue<N>>) -> ScaledValue {
            match v {
                Some(ScaledValue::Finite(x)) => ScaledValue::Finite(x.to_big()),
                _ => ScaledValue::Infinity,
            }
        }
        match &self.store {
            Store::Narrow(r) => lift(r[u].as_ref().unwrap().gamma(k, l, self.width)),
            Store::Wide(r) => lift(r[u].as_ref().unwrap().gamma(k, l, self.width)),
        }
    }

    pub(crate) fn via(&self, u: usize, k: usize, l: usize) -> Via {
        let l = l.min(self.width - 1);
        self.choices[u]
            .via
            .get(k * self.width + l)
            .copied()
            .unwrap_or(Via::Infeasible)
    }

    /// Part/residue split handed to each child when `u` is uncovered.
    pub(crate) fn residue_children(&self, tree: &RootedTree, u: usize, k: usize, l: usize) -> Vec<(usize, usize)> {
        let kids = tree.children(u);
        if k == 0 {
            return kids.iter().map(|&c| (0, tree.subtree_size(c))).collect();
        }
        let w = self.width;
        let rec = &self.choices[u].residue_split;
        let mut out = vec![(0, 0); kids.len()];
        let (mut k, mut l) = (k, l.min(w - 1) - 1);
        for i in (1..kids.len()).rev() {
            let (kp, lp) = rec[i][k * w + l];
            let (kp, lp) = (kp as usize, lp as usize);
            out[i] = (k - kp, l - lp);
            k = kp;
            l = lp;
        }
        if !kids.is_empty() {
            out[0] = (k, l);
        }
        out
    }

    /// Per-child `(k_i, l_i, cut)` behind `gamma(u, k, l)`: a cut child holds
    /// `k_i - 1` parts of its own, a kept child shares `u`'s part.
    pub(crate) fn gamma_children(&self, tree: &RootedTree, u: usize, k: usize, l: usize) -> Vec<(usize, usize, bool)> {
        let kids = tree.children(u);
        let w = self.width;
        let rec = &self.choices[u];
        let mut out = vec![(0, 0, false); kids.len()];
        let (mut k, mut l) = (k, l.min(w - 1));
        for i in (1..kids.len()).rev() {
            let (kp, lp) = rec.gamma_split[i][k * w + l];
            let (kp, lp) = (kp as usize, lp as usize);
            let (kc, lc) = (k + 1 - kp, l - lp);
            out[i] = (kc, lc, rec.cut[i][kc * w + lc]);
            k = kp;
            l = lp;
        }
        if !kids.is_empty() {
            out[0] = (k, l, rec.cut[0][k * w + l]);
        }
        out
    }

    /// Backtrack record for `mu(u, k, l)`.
    pub fn choice(&self, tree: &RootedTree, u: usize, k: usize, l: usize) -> Choice {
        match (self.via(u, k, l), tree.is_leaf(u)) {
            (Via::Infeasible, _) => Choice::Infeasible,
            (Via::Gamma, true) => Choice::LeafPart,
            (Via::Gamma, false) => Choice::GammaWitness,
            (Via::Residue, true) => Choice::LeafResidue,
            (Via::Residue, false) => Choice::ResidueRoot {
                splits: self.residue_children(tree, u, k, l),
            },
        }
    }

    /// Whether both tables hold identical grids (choices excluded).
    pub fn same_grids(&self, other: &DpTables) -> bool {
        if self.width != other.width || self.vertex_count != other.vertex_count {
            return false;
        }
        match (&self.store, &other.store) {
            (Store::Narrow(a), Store::Narrow(b)) => a == b,
            (Store::Wide(a), Store::Wide(b)) => a == b,
            _ => (0..self.vertex_count).all(|u| {
                (0..=self.spec.kappa.max(other.spec.kappa)).all(|k| {
                    (0..self.width).all(|l| self.mu(u, k, l) == other.mu(u, k, l) && self.gamma(u, k, l) == other.gamma(u, k, l))
                })
            }),
        }
    }

    pub(crate) fn matches(&self, tree: &RootedTree, spec: &ProblemSpec) -> bool {
        self.vertex_count == tree.len() && self.root == tree.root() && self.spec == *spec
    }
}

/// Root feasibility bits `mu(r, k, l)` for `0 <= k <= min(kappa, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFeasibility {
    kcap: usize,
    width: usize,
    bits: Vec<bool>,
}

impl RootFeasibility {
    pub(crate) fn new(kcap: usize, width: usize, bits: Vec<bool>) -> Self {
        debug_assert_eq!(bits.len(), (kcap + 1) * width);
        RootFeasibility { kcap, width, bits }
    }

    /// Budgets above the grid saturate; part counts above it are infeasible.
    pub fn get(&self, k: usize, l: usize) -> bool {
        k <= self.kcap && self.bits[k * self.width + l.min(self.width - 1)]
    }

    pub fn kcap(&self) -> usize {
        self.kcap
    }

    pub fn lambda_cap(&self) -> usize {
        self.width - 1
    }
}

/// Charge `eps(e_v)` of the edge from `v` to its parent, in the units of
/// [`scale_instance`] for `spec.xi`.
pub fn epsilon(tree: &RootedTree, spec: &ProblemSpec, v: usize) -> Result<ScaledValue> {
    if v == tree.root() {
        return Err(Error::RootHasNoParentEdge(tree.id(v).to_string()));
    }
    let s = scale_instance(tree, &spec.xi);
    let mut e = &s.xi_subtree_weight[v] + &s.parent_edge_cost[v];
    if spec.use_potentials {
        e -= &s.subtree_potential[v];
    }
    Ok(ScaledValue::Finite(e))
}

/// Runs the full sweep keeping every grid and backtrack record.
pub fn solve(tree: &RootedTree, spec: &ProblemSpec) -> Result<DpTables> {
    let (setup, store, choices) = run(tree, spec, true)?;
    Ok(DpTables {
        spec: spec.clone(),
        vertex_count: tree.len(),
        root: tree.root(),
        width: setup.width,
        store,
        choices: choices.expect("recorded"),
    })
}

/// Decision plus the tables needed to reconstruct a witness.
pub fn decide_cmsc(tree: &RootedTree, spec: &ProblemSpec) -> Result<(bool, DpTables)> {
    let tables = solve(tree, spec)?;
    Ok((tables.feasible(), tables))
}

/// Decision only. Child grids are released as soon as the parent is done.
pub fn decide(tree: &RootedTree, spec: &ProblemSpec) -> Result<bool> {
    Ok(root_feasibility(tree, spec)?.get(spec.kappa, spec.lambda))
}

/// Root grid of a decision-only sweep.
pub fn root_feasibility(tree: &RootedTree, spec: &ProblemSpec) -> Result<RootFeasibility> {
    let (setup, store, _) = run(tree, spec, false)?;
    let root = tree.root();
    let (kcap, bits) = match store {
        Store::Narrow(mut r) => {
            let row = r[root].take().unwrap();
            (row.kcap, row.mu)
        }
        Store::Wide(mut r) => {
            let row = r[root].take().unwrap();
            (row.kcap, row.mu)
        }
    };
    Ok(RootFeasibility {
        kcap,
        width: setup.width,
        bits,
    })
}
