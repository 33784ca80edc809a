//! How many parts fit under an expansion bound, with and without outliers.

use treecut::{k_max, TreeBuilder};

fn main() -> treecut::Result<()> {
    let mut b = TreeBuilder::new().vertex("hub", 1);
    for i in 0..6 {
        let leaf = format!("leaf{i}");
        b = b.vertex(leaf.clone(), 1 + i % 2).edge("hub", leaf, 1);
    }
    let tree = b.root("hub").build()?;

    for xi in [(1, 2), (1, 1), (2, 1)] {
        let row: Vec<usize> = (0..=2).map(|l| k_max(&tree, xi, l)).collect::<treecut::Result<_>>()?;
        println!("xi = {}/{}: k_max for 0, 1, 2 outliers = {row:?}", xi.0, xi.1);
    }
    Ok(())
}
