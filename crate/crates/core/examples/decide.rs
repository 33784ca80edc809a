//! Decide whether a small weighted tree splits into connected parts of
//! bounded expansion, and print the witness.

use treecut::{decide_cmsc, reconstruct_subpartition, ProblemSpec, TreeBuilder};

fn main() -> treecut::Result<()> {
    // two dense clusters joined by a cheap edge, plus a dangling leaf
    let tree = TreeBuilder::new()
        .vertex("a", 2)
        .vertex("b", 2)
        .vertex("c", 1)
        .vertex("d", 2)
        .vertex("e", 2)
        .vertex("f", 1)
        .vertex("stray", 1)
        .edge("a", "b", 5)
        .edge("b", "c", 4)
        .edge("c", "d", (1, 2))
        .edge("d", "e", 5)
        .edge("e", "f", 4)
        .edge("f", "stray", 3)
        .root("a")
        .build()?;

    for (xi, lambda) in [((1, 5), 0), ((1, 5), 1), ((1, 20), 1)] {
        let spec = ProblemSpec::new(xi, 2, lambda);
        let (feasible, tables) = decide_cmsc(&tree, &spec)?;
        println!("xi = {}/{}, 2 parts, {lambda} outlier(s): {feasible}", xi.0, xi.1);
        if let Some(w) = reconstruct_subpartition(&tree, &spec, &tables)? {
            for (part, phi) in w.parts.iter().zip(&w.expansions) {
                println!("  part {part:?} expansion {phi}");
            }
            println!("  uncovered {:?}", w.residue);
        }
    }
    Ok(())
}
