//! Similarity graph to clusters: maximum-similarity spanning tree, then the
//! exact optimum on that tree. Reads `data/similarity.csv` unless a path is
//! given.

use std::path::PathBuf;

use treecut::io::{load_instance, to_dot, tree_edges};
use treecut::search::SearchMode;
use treecut::{min_xi, ProblemSpec};

fn main() -> treecut::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/similarity.csv"));
    let graph = load_instance(&path, None)?.graph;
    let tree = graph.similarity_spanning_tree()?;
    println!("{} vertices, {} graph edges, root {}", tree.len(), graph.edges().len(), tree.id(tree.root()));

    let r = min_xi(&tree, &ProblemSpec::new(0, 3, 1), SearchMode::Exact)?;
    let Some(w) = r.witness else {
        println!("no subpartition");
        return Ok(());
    };
    println!("xi* = {} on the tree", w.max_expansion);
    for (i, p) in w.parts.iter().enumerate() {
        let graph_phi = graph.expansion(&p.iter().map(|id| graph.index_of(id).unwrap()).collect::<Vec<_>>(), false)?;
        println!("  cluster {i}: {p:?} tree {} graph {graph_phi}", w.expansions[i]);
    }
    println!("  outliers {:?}", w.residue);

    let dot = to_dot(tree.ids().iter().map(String::as_str), &tree_edges(&tree), Some(&w));
    println!("\n{dot}");
    Ok(())
}
