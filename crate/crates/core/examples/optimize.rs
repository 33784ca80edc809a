//! Smallest expansion bound for a fixed part count, exactly and to a
//! tolerance.

use treecut::ratio::ratio;
use treecut::search::SearchMode;
use treecut::{min_xi, ProblemSpec, RootedTree};

fn main() -> treecut::Result<()> {
    // a caterpillar: spine 0..6, each spine vertex with one leaf
    let n = 12;
    let parent: Vec<Option<usize>> = (0..n)
        .map(|v| match v {
            0 => None,
            1..=5 => Some(v - 1),
            _ => Some(v - 6),
        })
        .collect();
    let weight: Vec<i64> = (0..n).map(|v| 1 + (v as i64 % 3)).collect();
    let cost: Vec<i64> = (0..n).map(|v| if v == 3 { 1 } else { 4 + v as i64 % 2 }).collect();
    let tree = RootedTree::from_parent_array(&parent, &weight, &cost, None)?;

    for kappa in 1..=4 {
        let spec = ProblemSpec::new(0, kappa, 1);
        let exact = min_xi(&tree, &spec, SearchMode::Exact)?;
        let rough = min_xi(&tree, &spec, SearchMode::Tolerance(ratio(1, 100)))?;
        match (&exact.xi_star, &rough.xi_star) {
            (Some(x), Some(r)) => println!(
                "k = {kappa}: xi* = {x} ({} probes), within 1/100: {r} ({} probes)",
                exact.probes, rough.probes
            ),
            _ => println!("k = {kappa}: infeasible"),
        }
    }
    Ok(())
}
