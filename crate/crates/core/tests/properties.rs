mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use treecut::oracle::{oracle_decide, oracle_min_xi, EnumerationBudget};
use treecut::ratio::ratio;
use treecut::search::SearchMode;
use treecut::{
    decide, decide_cmsc, decide_forest, decide_semisupervised, k_max_for, min_xi, reconstruct_subpartition,
    validate_subpartition, Forest, ProblemSpec, RootedTree, TreeBuilder, WeightedGraph,
};

use common::{prufer_edges, vid};

#[derive(Clone, Debug)]
struct Instance {
    n: usize,
    edges: Vec<(usize, usize)>,
    weight: Vec<(i64, i64)>,
    cost: Vec<(i64, i64)>,
    potential: Option<Vec<(i64, i64)>>,
    root: usize,
}

fn value() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=4, 1i64..=3)
}

fn instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(0..n, n.saturating_sub(2)),
            proptest::collection::vec(value(), n),
            proptest::collection::vec(value(), n.saturating_sub(1)),
            proptest::option::of(proptest::collection::vec((0i64..=3, 1i64..=2), n)),
            0..n,
        )
            .prop_map(move |(seq, weight, cost, potential, root)| Instance {
                n,
                edges: prufer_edges(&seq, n),
                weight,
                cost,
                potential,
                root,
            })
    })
}

fn q((p, d): (i64, i64)) -> BigRational {
    ratio(p, d)
}

impl Instance {
    fn tree(&self) -> RootedTree {
        let mut b = TreeBuilder::new();
        for v in 0..self.n {
            b = match &self.potential {
                Some(p) => b.vertex_with_potential(vid(v), q(self.weight[v]), q(p[v])),
                None => b.vertex(vid(v), q(self.weight[v])),
            };
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            b = b.edge(vid(u), vid(v), q(self.cost[i]));
        }
        b.root(vid(self.root)).build().unwrap()
    }

    fn graph(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new();
        for v in 0..self.n {
            let p = self.potential.as_ref().map_or((0, 1), |p| p[v]);
            g.add_vertex_with_potential(vid(v), q(self.weight[v]), q(p)).unwrap();
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            g.add_edge(&vid(u), &vid(v), q(self.cost[i])).unwrap();
        }
        g
    }
}

fn constraints() -> impl Strategy<Value = ((i64, i64), usize, usize, bool, Vec<usize>)> {
    ((0i64..=12, 1i64..=4), 1usize..=3, 0usize..=2, any::<bool>(), proptest::collection::vec(0usize..7, 0..3))
}

fn spec_for(n: usize, (xi, kappa, lambda, pot, forbid): &((i64, i64), usize, usize, bool, Vec<usize>)) -> ProblemSpec {
    let forbidden: BTreeSet<String> = forbid.iter().filter(|&&v| v < n).map(|&v| vid(v)).collect();
    ProblemSpec::new(q(*xi), *kappa, *lambda)
        .with_potentials(*pot)
        .with_forbidden(forbidden)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn subtree_aggregates_are_sums(inst in instance(9)) {
        let t = inst.tree();
        for v in 0..t.len() {
            let below = t.subtree_vertices(v);
            prop_assert_eq!(below.len(), t.subtree_size(v));
            let w: BigRational = below.iter().map(|&x| t.weight(x)).sum();
            let p: BigRational = below.iter().map(|&x| t.potential(x)).sum();
            prop_assert_eq!(t.subtree_weight(v), w);
            prop_assert_eq!(t.subtree_potential(v), p);
        }
        prop_assert_eq!(t.processing_order().len(), t.len());
        prop_assert_eq!(*t.processing_order().last().unwrap(), t.root());
    }

    #[test]
    fn decision_matches_enumeration(inst in instance(7), c in constraints()) {
        let t = inst.tree();
        let spec = spec_for(inst.n, &c);
        let budget = EnumerationBudget::default();
        prop_assert_eq!(decide(&t, &spec).unwrap(), oracle_decide(&t, &spec, &budget).unwrap());
    }

    #[test]
    fn witness_exists_exactly_when_feasible(inst in instance(8), c in constraints()) {
        let t = inst.tree();
        let spec = spec_for(inst.n, &c);
        let (ok, tables) = decide_cmsc(&t, &spec).unwrap();
        match reconstruct_subpartition(&t, &spec, &tables).unwrap() {
            Some(w) => {
                prop_assert!(ok);
                prop_assert_eq!(w.parts.len(), spec.kappa);
                prop_assert!(w.max_expansion <= spec.xi);
                let violations = validate_subpartition(&t, &spec, &w);
                prop_assert!(violations.is_empty(), "{:?}", violations);
            }
            None => prop_assert!(!ok),
        }
    }

    #[test]
    fn feasibility_is_monotone(inst in instance(8), c in constraints()) {
        let t = inst.tree();
        let spec = spec_for(inst.n, &c);
        if decide(&t, &spec).unwrap() {
            let looser = spec.with_xi(spec.xi.clone() + ratio(1, 3));
            prop_assert!(decide(&t, &looser).unwrap());
            let mut more = spec.clone();
            more.lambda += 1;
            prop_assert!(decide(&t, &more).unwrap());
        }
    }

    #[test]
    fn answer_does_not_depend_on_root(inst in instance(8), c in constraints(), other in 0usize..8) {
        let spec = spec_for(inst.n, &c);
        let mut moved = inst.clone();
        moved.root = other % inst.n;
        prop_assert_eq!(decide(&inst.tree(), &spec).unwrap(), decide(&moved.tree(), &spec).unwrap());
    }

    #[test]
    fn single_tree_forest_degenerates(inst in instance(8), c in constraints()) {
        let t = inst.tree();
        let spec = spec_for(inst.n, &c);
        let alone = decide(&t, &spec).unwrap();
        let forest = Forest::new(vec![t]).unwrap();
        let d = decide_forest(&forest, &spec).unwrap();
        prop_assert_eq!(d.feasible, alone);
        prop_assert_eq!(d.witness.is_some(), alone);
    }

    #[test]
    fn empty_required_set_degenerates(inst in instance(8), c in constraints()) {
        let spec = spec_for(inst.n, &c);
        let alone = decide(&inst.tree(), &spec).unwrap();
        let d = decide_semisupervised(&inst.graph(), &BTreeSet::new(), &spec).unwrap();
        prop_assert_eq!(d.feasible, alone);
    }

    #[test]
    fn minimum_matches_enumeration(inst in instance(7), c in constraints()) {
        let t = inst.tree();
        let spec = spec_for(inst.n, &c);
        let r = min_xi(&t, &spec, SearchMode::Exact).unwrap();
        let expected = oracle_min_xi(&t, &spec, &EnumerationBudget::default()).unwrap();
        prop_assert_eq!(&r.xi_star, &expected);
        if let Some(xi) = &r.xi_star {
            let w = r.witness.as_ref().unwrap();
            prop_assert_eq!(&w.max_expansion, xi);
            prop_assert!(validate_subpartition(&t, &spec.with_xi(xi.clone()), w).is_empty());
            if !xi.is_zero() {
                prop_assert!(!decide(&t, &spec.with_xi(xi.clone() - ratio(1, 1_000_000))).unwrap());
            }
        }
    }

    #[test]
    fn k_max_is_the_last_feasible_count(inst in instance(8), c in constraints()) {
        let t = inst.tree();
        let spec = spec_for(inst.n, &c);
        let k = k_max_for(&t, &spec).unwrap();
        let feasible = |kappa: usize| {
            let mut s = spec.clone();
            s.kappa = kappa;
            decide(&t, &s).unwrap()
        };
        if k > 0 {
            prop_assert!(feasible(k));
        }
        for kappa in k + 1..=inst.n {
            prop_assert!(!feasible(kappa));
        }
    }
}
