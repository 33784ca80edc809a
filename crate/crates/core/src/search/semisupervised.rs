use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::forest::{decide_forest, Forest, ForestDecision};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::reconstruct::Subpartition;
use crate::solver::ProblemSpec;

/// Decision on a general graph where every vertex of `required` must be an
/// outlier and every vertex of `spec.forbidden` must not be. Deleting
/// `required` has to leave a forest; required vertices count against
/// `spec.lambda`. Each edge into a required vertex becomes potential on its
/// other endpoint, so the forest expansions equal the graph expansions.
/// The witness is on the original graph with `required` in its residue.
pub fn decide_semisupervised(
    graph: &WeightedGraph,
    required: &BTreeSet<String>,
    spec: &ProblemSpec,
) -> Result<ForestDecision> {
    spec.validate()?;
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut removed = vec![false; graph.len()];
    for id in required.iter().chain(&spec.forbidden) {
        graph.index_of(id).ok_or_else(|| Error::UnknownVertexId(id.clone()))?;
    }
    for id in required {
        if spec.forbidden.contains(id) {
            return Err(Error::Precollision(id.clone()));
        }
        removed[graph.index_of(id).unwrap()] = true;
    }
    if spec.lambda < required.len() {
        return Err(Error::LambdaTooSmall {
            lambda: spec.lambda,
            required: required.len(),
        });
    }
    if !graph.is_forest_without(&removed) {
        return Err(Error::NotForestAfterDeletion);
    }

    let mut extra = vec![BigRational::zero(); graph.len()];
    let mut kept_edges = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        match (removed[e.u], removed[e.v]) {
            (false, false) => kept_edges.push(i),
            (false, true) => extra[e.u] += &e.cost,
            (true, false) => extra[e.v] += &e.cost,
            (true, true) => {}
        }
    }
    let components = graph.components(&removed);
    let mut comp_of = vec![usize::MAX; graph.len()];
    for (c, vs) in components.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let mut edges_of = vec![Vec::new(); components.len()];
    for i in kept_edges {
        edges_of[comp_of[graph.edges()[i].u]].push(i);
    }
    let trees = components
        .iter()
        .zip(&edges_of)
        .map(|(vs, es)| graph.induced_tree(vs, es, graph.heaviest(vs), spec.use_potentials, Some(&extra)))
        .collect::<Result<Vec<_>>>()?;
    let forest = Forest::new(trees)?;

    let mut reduced = spec.clone();
    reduced.lambda = spec.lambda - required.len();
    reduced.use_potentials = true;
    let decision = decide_forest(&forest, &reduced)?;
    let witness = match decision.witness {
        None => None,
        Some(sub) => {
            let index = |id: &String| graph.index_of(id).expect("forest ids come from the graph");
            let parts: Vec<Vec<usize>> = sub.parts.iter().map(|p| p.iter().map(index).collect()).collect();
            let expansions = parts
                .iter()
                .map(|p| graph.expansion(p, spec.use_potentials))
                .collect::<Result<Vec<_>>>()?;
            let mut residue = sub.residue;
            residue.extend(required.iter().cloned());
            Some(Subpartition::new(sub.parts, residue, expansions))
        }
    };
    Ok(ForestDecision {
        feasible: decision.feasible,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use crate::search::forest::decide_forest;
    use crate::solver::decide;

    fn path3() -> WeightedGraph {
        let mut g = WeightedGraph::new();
        for id in ["a", "b", "c"] {
            g.add_vertex(id, 1).unwrap();
        }
        g.add_edge("a", "b", 1).unwrap();
        g.add_edge("b", "c", 1).unwrap();
        g
    }

    fn set(ids: &[&str]) -> BTreeSet<String> {
        ids.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn required_middle_vertex() {
        let g = path3();
        let d = decide_semisupervised(&g, &set(&["b"]), &ProblemSpec::new(1, 2, 1)).unwrap();
        assert!(d.feasible);
        let w = d.witness.unwrap();
        assert_eq!(w.parts, vec![vec!["a".to_string()], vec!["c".to_string()]]);
        assert_eq!(w.residue, vec!["b".to_string()]);
        assert_eq!(w.expansions, vec![ratio(1, 1), ratio(1, 1)]);
        assert!(!decide_semisupervised(&g, &set(&["b"]), &ProblemSpec::new(ratio(1, 2), 2, 1)).unwrap().feasible);
    }

    #[test]
    fn empty_sets_reduce_to_the_tree_problem() {
        let g = path3();
        let t = g.similarity_spanning_tree().unwrap();
        for xi in [ratio(0, 1), ratio(1, 2), ratio(1, 1)] {
            for kappa in 1..=3 {
                for lambda in 0..=2 {
                    let spec = ProblemSpec::new(xi.clone(), kappa, lambda);
                    let d = decide_semisupervised(&g, &BTreeSet::new(), &spec).unwrap();
                    assert_eq!(d.feasible, decide(&t, &spec).unwrap());
                    let f = Forest::new(vec![t.clone()]).unwrap();
                    assert_eq!(d.feasible, decide_forest(&f, &spec).unwrap().feasible);
                }
            }
        }
    }

    #[test]
    fn precondition_errors() {
        let mut g = path3();
        let spec = ProblemSpec::new(1, 1, 1).with_forbidden(["b"]);
        assert_eq!(
            decide_semisupervised(&g, &set(&["b"]), &spec).unwrap_err(),
            Error::Precollision("b".into())
        );
        assert_eq!(
            decide_semisupervised(&g, &set(&["a", "b"]), &ProblemSpec::new(1, 1, 1)).unwrap_err(),
            Error::LambdaTooSmall { lambda: 1, required: 2 }
        );
        g.add_edge("a", "c", 1).unwrap();
        assert_eq!(
            decide_semisupervised(&g, &BTreeSet::new(), &ProblemSpec::new(1, 1, 1)).unwrap_err(),
            Error::NotForestAfterDeletion
        );
        assert!(decide_semisupervised(&g, &set(&["a"]), &ProblemSpec::new(1, 1, 1)).is_ok());
    }
}
