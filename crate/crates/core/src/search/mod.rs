//! Drivers above the decision procedure: minimizing the expansion bound,
//! the largest feasible part count, forests, and prescribed outliers.

mod forest;
mod semisupervised;

pub use forest::{decide_forest, forest_root_feasibility, Forest, ForestDecision};
pub use semisupervised::decide_semisupervised;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::ratio::{common_denominator, format_rational, simplest_in_interval, IntoRational};
use crate::reconstruct::{reconstruct_subpartition, Subpartition};
use crate::solver::{decide, root_feasibility, solve, ProblemSpec};
use crate::tree::RootedTree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// The exact minimum as a rational.
    Exact,
    /// Bisection until the bracket is at most this wide; reports its upper end.
    Tolerance(BigRational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimizationResult {
    /// `None` when no connected subpartition satisfies the part count,
    /// outlier budget and forbidden set at any bound.
    pub xi_star: Option<BigRational>,
    pub witness: Option<Subpartition>,
    /// Number of decision runs made.
    pub probes: usize,
    pub mode: SearchMode,
}

/// Every part has expansion at most `(c(E) + p(V)) / min w`, so a negative
/// answer here is final.
pub fn upper_bound(tree: &RootedTree, use_potentials: bool) -> BigRational {
    let mut num = tree.total_cost();
    if use_potentials {
        num += tree.total_potential();
    }
    num / tree.min_weight()
}

/// Bisection bracket for one instance: a bound at which any feasible
/// instance is feasible, and the total weight in a scale where every
/// weight, cost and potential is an integer.
struct Bracket {
    upper: BigRational,
    scaled_weight: BigInt,
}

impl Bracket {
    fn new<'a>(
        weights: impl IntoIterator<Item = &'a BigRational>,
        costs: impl IntoIterator<Item = &'a BigRational>,
        potentials: impl IntoIterator<Item = &'a BigRational>,
    ) -> Self {
        let weights: Vec<&BigRational> = weights.into_iter().collect();
        let costs: Vec<&BigRational> = costs.into_iter().collect();
        let potentials: Vec<&BigRational> = potentials.into_iter().collect();
        let scale = common_denominator(weights.iter().chain(&costs).chain(&potentials).copied());
        let total_w: BigRational = weights.iter().copied().sum();
        let numer: BigRational = costs.iter().chain(&potentials).copied().sum();
        let min_w = weights.iter().copied().min().cloned().unwrap_or_else(BigRational::one);
        Bracket {
            upper: numer / min_w,
            scaled_weight: (total_w * BigRational::from_integer(scale)).to_integer(),
        }
    }
}

/// Smallest `xi` accepted by `probe`, assuming `probe` is monotone.
///
/// Every achievable maximum expansion is a fraction whose denominator, in
/// the common integer scale, is at most the scaled total weight `W`; two
/// such fractions differ by at least `1/W^2`. Exact mode bisects to a
/// bracket narrower than that and returns the simplest fraction inside it.
fn minimize<F>(mut probe: F, bracket: Bracket, mode: &SearchMode) -> Result<(Option<BigRational>, usize)>
where
    F: FnMut(&BigRational) -> Result<bool>,
{
    if let SearchMode::Tolerance(tol) = mode {
        if !tol.is_positive() {
            return Err(Error::InvalidSpec("tolerance must be positive".into()));
        }
    }
    let mut probes = 0;
    let mut at = |xi: &BigRational| -> Result<bool> {
        probes += 1;
        let ok = probe(xi)?;
        log::debug!("probe {probes} at xi={}: {ok}", format_rational(xi));
        Ok(ok)
    };
    let mut lo = BigRational::zero();
    if at(&lo)? {
        return Ok((Some(lo), probes));
    }
    let mut hi = bracket.upper;
    if !at(&hi)? {
        return Ok((None, probes));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let width = match mode {
        SearchMode::Tolerance(tol) => tol.clone(),
        SearchMode::Exact => {
            let w = BigRational::from_integer(bracket.scaled_weight);
            // strictly narrower than 1/W^2
            BigRational::one() / (&w * &w * &two)
        }
    };
    // infeasible at lo, feasible at hi
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if at(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let star = match mode {
        SearchMode::Tolerance(_) => hi,
        SearchMode::Exact => {
            let star = simplest_in_interval(&lo, true, Some(&hi), false);
            if !at(&star)? {
                return Err(Error::NonMonotone(format!(
                    "feasible at {} but not at {}",
                    format_rational(&hi),
                    format_rational(&star)
                )));
            }
            star
        }
    };
    Ok((Some(star), probes))
}

fn finish(
    xi_star: Option<BigRational>,
    probes: usize,
    mode: SearchMode,
    witness: impl FnOnce(&BigRational) -> Result<Option<Subpartition>>,
) -> Result<OptimizationResult> {
    let witness = match &xi_star {
        None => None,
        Some(xi) => match witness(xi)? {
            None => {
                return Err(Error::NonMonotone(format!(
                    "infeasible at the recovered optimum {}",
                    format_rational(xi)
                )))
            }
            w => w,
        },
    };
    Ok(OptimizationResult {
        xi_star,
        witness,
        probes: probes + 1,
        mode,
    })
}

/// Smallest `xi` for which `spec` (with `xi` replaced) is feasible on a
/// tree. `probes` counts every DP run, including the witness run.
pub fn min_xi(tree: &RootedTree, spec: &ProblemSpec, mode: SearchMode) -> Result<OptimizationResult> {
    let base = spec.with_xi(0);
    base.validate()?;
    let n = tree.len();
    let weights: Vec<BigRational> = (0..n).map(|v| tree.weight(v)).collect();
    let costs: Vec<BigRational> = (0..n).map(|v| tree.parent_edge_cost(v)).collect();
    let potentials: Vec<BigRational> = if spec.use_potentials {
        (0..n).map(|v| tree.potential(v)).collect()
    } else {
        Vec::new()
    };
    let bracket = Bracket::new(&weights, &costs, &potentials);
    let (xi_star, probes) = minimize(|xi| decide(tree, &base.with_xi(xi)), bracket, &mode)?;
    finish(xi_star, probes, mode, |xi| {
        let at = spec.with_xi(xi);
        reconstruct_subpartition(tree, &at, &solve(tree, &at)?)
    })
}

/// [`min_xi`] over a forest; parts and outliers are shared across trees.
pub fn min_xi_forest(forest: &Forest, spec: &ProblemSpec, mode: SearchMode) -> Result<OptimizationResult> {
    let base = spec.with_xi(0);
    base.validate()?;
    let (mut weights, mut costs, mut potentials) = (Vec::new(), Vec::new(), Vec::new());
    for t in forest.trees() {
        for v in 0..t.len() {
            weights.push(t.weight(v));
            costs.push(t.parent_edge_cost(v));
            if spec.use_potentials {
                potentials.push(t.potential(v));
            }
        }
    }
    let bracket = Bracket::new(&weights, &costs, &potentials);
    let (xi_star, probes) = minimize(
        |xi| Ok(forest_root_feasibility(forest, &base.with_xi(xi))?.get(spec.kappa, spec.lambda)),
        bracket,
        &mode,
    )?;
    finish(xi_star, probes, mode, |xi| Ok(decide_forest(forest, &spec.with_xi(xi))?.witness))
}

/// [`min_xi`] for the problem with prescribed outliers on a general graph;
/// expansions are measured in the graph.
pub fn min_xi_semisupervised(
    graph: &WeightedGraph,
    required: &BTreeSet<String>,
    spec: &ProblemSpec,
    mode: SearchMode,
) -> Result<OptimizationResult> {
    let base = spec.with_xi(0);
    base.validate()?;
    // surface precondition errors before searching
    decide_semisupervised(graph, required, &base)?;
    let weights: Vec<&BigRational> = graph.vertices().iter().map(|v| &v.weight).collect();
    let costs: Vec<&BigRational> = graph.edges().iter().map(|e| &e.cost).collect();
    let potentials: Vec<&BigRational> = if spec.use_potentials {
        graph.vertices().iter().map(|v| &v.potential).collect()
    } else {
        Vec::new()
    };
    let bracket = Bracket::new(weights, costs, potentials);
    let (xi_star, probes) = minimize(
        |xi| Ok(decide_semisupervised(graph, required, &base.with_xi(xi))?.feasible),
        bracket,
        &mode,
    )?;
    finish(xi_star, probes, mode, |xi| {
        Ok(decide_semisupervised(graph, required, &spec.with_xi(xi))?.witness)
    })
}

/// Largest part count feasible at `xi` with at most `lambda` outliers; 0
/// when none is. The whole row is scanned, not bisected.
pub fn k_max(tree: &RootedTree, xi: impl IntoRational, lambda: usize) -> Result<usize> {
    k_max_for(tree, &ProblemSpec::new(xi, 1, lambda))
}

/// [`k_max`] honouring the potentials and forbidden set of `spec`; its
/// part count is ignored.
pub fn k_max_for(tree: &RootedTree, spec: &ProblemSpec) -> Result<usize> {
    let mut all = spec.clone();
    all.kappa = tree.len();
    let row = root_feasibility(tree, &all)?;
    Ok((1..=row.kcap()).rev().find(|&k| row.get(k, spec.lambda)).unwrap_or(0))
}

/// [`k_max_for`] on a forest.
pub fn k_max_forest(forest: &Forest, spec: &ProblemSpec) -> Result<usize> {
    let mut all = spec.clone();
    all.kappa = forest.vertex_count().max(1);
    let row = forest_root_feasibility(forest, &all)?;
    Ok((1..=row.kcap()).rev().find(|&k| row.get(k, spec.lambda)).unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use crate::tree::TreeBuilder;

    fn star() -> RootedTree {
        TreeBuilder::new()
            .vertex("r", 1)
            .vertex("x", 1)
            .vertex("y", 1)
            .vertex("z", 1)
            .edge("r", "x", 1)
            .edge("r", "y", 1)
            .edge("r", "z", 1)
            .build()
            .unwrap()
    }

    fn pair() -> RootedTree {
        TreeBuilder::new().vertex("a", 1).vertex("b", 1).edge("a", "b", 1).build().unwrap()
    }

    #[test]
    fn minimum_examples() {
        let r = min_xi(&pair(), &ProblemSpec::new(0, 2, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(1, 1)));
        assert_eq!(r.witness.unwrap().max_expansion, ratio(1, 1));

        let r = min_xi(&star(), &ProblemSpec::new(0, 1, 1), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(0, 1)));
        assert_eq!(r.probes, 2);

        let r = min_xi(&star(), &ProblemSpec::new(0, 4, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(3, 1)));

        let r = min_xi(&star(), &ProblemSpec::new(0, 5, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, None);
        assert!(r.witness.is_none());
    }

    #[test]
    fn non_integer_minimum() {
        let t = TreeBuilder::new()
            .vertex("a", 3)
            .vertex("b", 4)
            .vertex("c", 2)
            .edge("a", "b", 5)
            .edge("b", "c", 1)
            .build()
            .unwrap();
        // {a,b} | {c}: max(1/7, 1/2); {a} | {b,c}: max(5/3, 5/6)
        let r = min_xi(&t, &ProblemSpec::new(0, 2, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(1, 2)));
        // {a} | {b}: max(5/3, 5/4)
        let t = TreeBuilder::new()
            .vertex("a", 3)
            .vertex("b", 4)
            .edge("a", "b", 5)
            .build()
            .unwrap();
        let r = min_xi(&t, &ProblemSpec::new(0, 2, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(5, 3)));
    }

    #[test]
    fn tolerance_mode_brackets_the_minimum() {
        let tol = ratio(1, 1000);
        let r = min_xi(&pair(), &ProblemSpec::new(0, 2, 0), SearchMode::Tolerance(tol.clone())).unwrap();
        let xi = r.xi_star.unwrap();
        assert!(xi >= ratio(1, 1) && xi <= ratio(1, 1) + tol);
        assert!(min_xi(&pair(), &ProblemSpec::new(0, 2, 0), SearchMode::Tolerance(ratio(0, 1))).is_err());
    }

    #[test]
    fn k_max_examples() {
        assert_eq!(k_max(&star(), 1, 0).unwrap(), 3);
        assert_eq!(k_max(&star(), 3, 0).unwrap(), 4);
        assert_eq!(k_max(&pair(), ratio(1, 2), 0).unwrap(), 1);
        assert_eq!(k_max(&star(), upper_bound(&star(), false), 0).unwrap(), 4);
    }

    #[test]
    fn k_max_zero_when_nothing_fits() {
        let t = TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .vertex("c", 1)
            .edge("a", "b", 1)
            .edge("b", "c", 1)
            .build()
            .unwrap();
        let spec = ProblemSpec::new(0, 1, 0).with_forbidden(["a"]);
        assert_eq!(k_max_for(&t, &spec).unwrap(), 1);
        let spec = ProblemSpec::new(ratio(1, 10), 1, 0).with_potentials(true);
        assert_eq!(k_max_for(&t, &spec).unwrap(), 1);
        let p = TreeBuilder::new().vertex_with_potential("a", 1, 5).build().unwrap();
        assert_eq!(k_max_for(&p, &ProblemSpec::new(1, 1, 0).with_potentials(true)).unwrap(), 0);
    }

    #[test]
    fn forest_and_prescribed_outlier_minima() {
        let f = Forest::new(vec![pair(), {
            TreeBuilder::new().vertex("c", 1).vertex("d", 1).edge("c", "d", 1).build().unwrap()
        }])
        .unwrap();
        let r = min_xi_forest(&f, &ProblemSpec::new(0, 2, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(0, 1)));
        let r = min_xi_forest(&f, &ProblemSpec::new(0, 3, 0), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(1, 1)));
        assert_eq!(r.witness.unwrap().parts.len(), 3);
        let single = Forest::new(vec![star()]).unwrap();
        for kappa in 1..=5 {
            let spec = ProblemSpec::new(0, kappa, 1);
            let a = min_xi_forest(&single, &spec, SearchMode::Exact).unwrap();
            let b = min_xi(&star(), &spec, SearchMode::Exact).unwrap();
            assert_eq!(a.xi_star, b.xi_star);
        }
        assert_eq!(k_max_forest(&f, &ProblemSpec::new(1, 1, 0)).unwrap(), 4);

        let mut g = WeightedGraph::new();
        for id in ["a", "b", "c"] {
            g.add_vertex(id, 1).unwrap();
        }
        g.add_edge("a", "b", 1).unwrap();
        g.add_edge("b", "c", 1).unwrap();
        let required: BTreeSet<String> = ["b".to_string()].into();
        let r = min_xi_semisupervised(&g, &required, &ProblemSpec::new(0, 2, 1), SearchMode::Exact).unwrap();
        assert_eq!(r.xi_star, Some(ratio(1, 1)));
        assert_eq!(r.witness.unwrap().residue, vec!["b".to_string()]);
        assert!(min_xi_semisupervised(&g, &required, &ProblemSpec::new(0, 2, 0), SearchMode::Exact).is_err());
    }
}
