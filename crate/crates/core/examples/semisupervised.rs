//! Prescribed outliers on a graph with cycles: once the known noise
//! vertices are removed the rest is a forest and solves exactly.

use std::collections::BTreeSet;

use treecut::search::SearchMode;
use treecut::{decide_semisupervised, min_xi_semisupervised, ProblemSpec, WeightedGraph};

fn main() -> treecut::Result<()> {
    let mut g = WeightedGraph::new();
    for id in ["a", "b", "c", "x", "y", "z", "noise"] {
        g.add_vertex(id, 1)?;
    }
    for (u, v, c) in [("a", "b", 4), ("b", "c", 4), ("x", "y", 4), ("y", "z", 4), ("c", "x", 1)] {
        g.add_edge(u, v, c)?;
    }
    // the noise vertex touches everything, closing many cycles
    for v in ["a", "b", "c", "x", "y", "z"] {
        g.add_edge("noise", v, 1)?;
    }
    let required: BTreeSet<String> = ["noise".to_string()].into();

    let spec = ProblemSpec::new((2, 3), 2, 1).with_forbidden(["c"]);
    let d = decide_semisupervised(&g, &required, &spec)?;
    println!("2 parts at xi = 2/3 with c covered: {}", d.feasible);

    let r = min_xi_semisupervised(&g, &required, &ProblemSpec::new(0, 2, 1), SearchMode::Exact)?;
    let w = r.witness.expect("feasible");
    println!("xi* = {}", w.max_expansion);
    for (p, phi) in w.parts.iter().zip(&w.expansions) {
        println!("  {p:?} expansion {phi} (measured in the graph)");
    }
    println!("  uncovered {:?}", w.residue);
    Ok(())
}
