use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::reconstruct::{backtrack, Subpartition};
use crate::solver::{root_feasibility, solve, DpTables, ProblemSpec, RootFeasibility};
use crate::tree::RootedTree;

/// Vertex-disjoint rooted trees.
#[derive(Clone, Debug)]
pub struct Forest {
    trees: Vec<RootedTree>,
}

impl Forest {
    pub fn new(trees: Vec<RootedTree>) -> Result<Self> {
        let mut seen = HashSet::new();
        for t in &trees {
            for id in t.ids() {
                if !seen.insert(id.as_str()) {
                    return Err(Error::DuplicateVertexId(id.clone()));
                }
            }
        }
        Ok(Forest { trees })
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.trees
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(RootedTree::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestDecision {
    pub feasible: bool,
    /// Expansions are measured in each part's own tree.
    pub witness: Option<Subpartition>,
}

/// The forbidden ids that belong to `tree`.
fn local_spec(tree: &RootedTree, spec: &ProblemSpec) -> ProblemSpec {
    let mut s = spec.clone();
    s.forbidden.retain(|id| tree.index_of(id).is_some());
    s
}

fn check_forbidden(forest: &Forest, spec: &ProblemSpec) -> Result<()> {
    match spec
        .forbidden
        .iter()
        .find(|id| forest.trees.iter().all(|t| t.index_of(id).is_none()))
    {
        Some(id) => Err(Error::UnknownVertexId(id.clone())),
        None => Ok(()),
    }
}

/// `Z(i, k, l)`: the first `i` trees hold `k` parts with at most `l`
/// outliers. Row-major `(kcap + 1) x width`.
struct Combined {
    kcap: usize,
    width: usize,
    layers: Vec<Vec<bool>>,
}

fn combine(rows: &[RootFeasibility], kcap: usize, width: usize) -> Combined {
    let mut layers: Vec<Vec<bool>> = Vec::with_capacity(rows.len());
    for (i, mu) in rows.iter().enumerate() {
        let mut z = vec![false; (kcap + 1) * width];
        for k in 0..=kcap {
            for l in 0..width {
                z[k * width + l] = if i == 0 {
                    mu.get(k, l)
                } else {
                    let prev = &layers[i - 1];
                    (0..=k).any(|kp| (0..=l).any(|lp| prev[kp * width + lp] && mu.get(k - kp, l - lp)))
                };
            }
        }
        layers.push(z);
    }
    Combined { kcap, width, layers }
}

fn budgets(forest: &Forest, spec: &ProblemSpec) -> (usize, usize) {
    let n = forest.vertex_count();
    let lambda = if spec.lambda > n {
        log::warn!("outlier budget {} exceeds the {} vertices; using {}", spec.lambda, n, n);
        n
    } else {
        spec.lambda
    };
    (spec.kappa.min(n), lambda + 1)
}

/// Root feasibility of the whole forest for every `k <= min(kappa, n)` and
/// `l <= lambda`; with one tree this is that tree's root row.
pub fn forest_root_feasibility(forest: &Forest, spec: &ProblemSpec) -> Result<RootFeasibility> {
    spec.validate()?;
    check_forbidden(forest, spec)?;
    let (kcap, width) = budgets(forest, spec);
    if forest.trees.is_empty() {
        let mut bits = vec![false; (kcap + 1) * width];
        bits[..width].iter_mut().for_each(|b| *b = true);
        return Ok(RootFeasibility::new(kcap, width, bits));
    }
    let rows = forest
        .trees
        .par_iter()
        .map(|t| root_feasibility(t, &local_spec(t, spec)))
        .collect::<Result<Vec<_>>>()?;
    let z = combine(&rows, kcap, width);
    Ok(RootFeasibility::new(kcap, width, z.layers.last().unwrap().clone()))
}

/// Decision on a forest plus a witness assembled from per-tree witnesses.
/// Part counts and outlier budgets are split across trees; each tree's
/// root is an ordinary vertex, so budgets add without adjustment.
pub fn decide_forest(forest: &Forest, spec: &ProblemSpec) -> Result<ForestDecision> {
    spec.validate()?;
    check_forbidden(forest, spec)?;
    let (kcap, width) = budgets(forest, spec);
    if forest.trees.is_empty() || spec.kappa > kcap {
        return Ok(ForestDecision {
            feasible: false,
            witness: None,
        });
    }
    let tables = forest
        .trees
        .par_iter()
        .map(|t| solve(t, &local_spec(t, spec)))
        .collect::<Result<Vec<DpTables>>>()?;
    let rows: Vec<RootFeasibility> = forest
        .trees
        .iter()
        .zip(&tables)
        .map(|(t, tb)| {
            let kc = spec.kappa.min(t.len());
            let w = tb.lambda_cap() + 1;
            let bits = (0..=kc)
                .flat_map(|k| (0..w).map(move |l| (k, l)))
                .map(|(k, l)| tb.mu(t.root(), k, l))
                .collect();
            RootFeasibility::new(kc, w, bits)
        })
        .collect();
    let z = combine(&rows, kcap, width);
    let (k, l) = (spec.kappa, width - 1);
    if !z.layers.last().unwrap()[k * z.width + l] {
        return Ok(ForestDecision {
            feasible: false,
            witness: None,
        });
    }

    // peel trees off the back, first split found wins
    let mut split = vec![(0, 0); rows.len()];
    let (mut k, mut l) = (k, l);
    for i in (1..rows.len()).rev() {
        let prev = &z.layers[i - 1];
        let (kp, lp) = (0..=k)
            .flat_map(|kp| (0..=l).map(move |lp| (kp, lp)))
            .find(|&(kp, lp)| prev[kp * z.width + lp] && rows[i].get(k - kp, l - lp))
            .expect("combined entry has a split");
        split[i] = (k - kp, l - lp);
        k = kp;
        l = lp;
    }
    split[0] = (k, l);
    debug_assert!(z.kcap >= spec.kappa);

    let mut parts = Vec::new();
    let mut residue = Vec::new();
    let mut expansions = Vec::new();
    for ((t, tb), &(ki, li)) in forest.trees.iter().zip(&tables).zip(&split) {
        let (p, r) = backtrack(t, tb, t.root(), ki, li.min(tb.lambda_cap()));
        let sub = Subpartition::from_indices(t, &p, &r, spec.use_potentials)?;
        parts.extend(sub.parts);
        residue.extend(sub.residue);
        expansions.extend(sub.expansions);
    }
    Ok(ForestDecision {
        feasible: true,
        witness: Some(Subpartition::new(parts, residue, expansions)),
    })
}
