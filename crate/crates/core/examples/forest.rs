//! Parts spread over several disjoint trees.

use treecut::search::SearchMode;
use treecut::{decide_forest, min_xi_forest, Forest, ProblemSpec, TreeBuilder};

fn main() -> treecut::Result<()> {
    let left = TreeBuilder::new()
        .vertex("l0", 1)
        .vertex("l1", 1)
        .vertex("l2", 1)
        .edge("l0", "l1", 1)
        .edge("l1", "l2", 3)
        .root("l0")
        .build()?;
    let right = TreeBuilder::new()
        .vertex("r0", 2)
        .vertex("r1", 2)
        .edge("r0", "r1", 1)
        .root("r0")
        .build()?;
    let forest = Forest::new(vec![left, right])?;

    let d = decide_forest(&forest, &ProblemSpec::new(0, 2, 0))?;
    println!("one part per tree at xi = 0: {}", d.feasible);

    for kappa in 2..=4 {
        let r = min_xi_forest(&forest, &ProblemSpec::new(0, kappa, 1), SearchMode::Exact)?;
        let w = r.witness.expect("feasible");
        println!("k = {kappa}, 1 outlier: xi* = {} parts {:?} uncovered {:?}", w.max_expansion, w.parts, w.residue);
    }
    Ok(())
}
