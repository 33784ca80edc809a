#![allow(dead_code)]

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use treecut::ratio::ratio;
use treecut::{RootedTree, TreeBuilder, WeightedGraph};

/// Edges of the labelled tree encoded by a Prufer sequence over `0..n`.
pub fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn random_prufer_tree<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    prufer_edges(&seq, n)
}

pub fn vid(v: usize) -> String {
    format!("v{v}")
}

/// Tree over `v0..v{n-1}` rooted at `v0` with the given values.
pub fn build_tree(
    n: usize,
    edges: &[(usize, usize)],
    weight: &[BigRational],
    cost: &[BigRational],
    potential: Option<&[BigRational]>,
) -> RootedTree {
    let mut b = TreeBuilder::new();
    for v in 0..n {
        b = match potential {
            Some(p) => b.vertex_with_potential(vid(v), weight[v].clone(), p[v].clone()),
            None => b.vertex(vid(v), weight[v].clone()),
        };
    }
    for (i, &(u, v)) in edges.iter().enumerate() {
        b = b.edge(vid(u), vid(v), cost[i].clone());
    }
    b.root(vid(0)).build().unwrap()
}

pub fn int_values<R: Rng>(rng: &mut R, count: usize, lo: i64, hi: i64) -> Vec<BigRational> {
    (0..count).map(|_| ratio(rng.gen_range(lo..=hi), 1)).collect()
}

/// Small positive rationals with denominators 1..=3.
pub fn frac_values<R: Rng>(rng: &mut R, count: usize) -> Vec<BigRational> {
    (0..count)
        .map(|_| ratio(rng.gen_range(1..=4), rng.gen_range(1..=3)))
        .collect()
}

/// Prufer tree with integer weights and costs in `[1, 4]`.
pub fn random_int_tree<R: Rng>(rng: &mut R, n: usize) -> RootedTree {
    let edges = random_prufer_tree(rng, n);
    let w = int_values(rng, n, 1, 4);
    let c = int_values(rng, edges.len(), 1, 4);
    build_tree(n, &edges, &w, &c, None)
}

pub fn random_subset<R: Rng>(rng: &mut R, pool: &[usize], size: usize) -> Vec<usize> {
    let mut p = pool.to_vec();
    p.shuffle(rng);
    p.truncate(size);
    p.sort_unstable();
    p
}

pub fn ids_of(set: &[usize]) -> BTreeSet<String> {
    set.iter().map(|&v| vid(v)).collect()
}

/// Random recursive tree: vertex `i` hangs off a uniform earlier vertex.
pub fn random_recursive_parents<R: Rng>(rng: &mut R, n: usize) -> Vec<Option<usize>> {
    (0..n)
        .map(|i| if i == 0 { None } else { Some(rng.gen_range(0..i)) })
        .collect()
}

/// Graph on `v0..v{n-1}` whose vertices outside `s1` induce a forest;
/// vertices in `s1` connect to arbitrary others.
pub fn random_semisupervised_graph<R: Rng>(rng: &mut R, n: usize, s1: &[usize]) -> WeightedGraph {
    let mut g = WeightedGraph::new();
    for v in 0..n {
        g.add_vertex(vid(v), rng.gen_range(1..=4)).unwrap();
    }
    let rest: Vec<usize> = (0..n).filter(|v| !s1.contains(v)).collect();
    if rest.len() >= 2 {
        for (a, b) in random_prufer_tree(rng, rest.len()) {
            // thin the tree into a forest now and then
            if rng.gen_bool(0.8) {
                g.add_edge(&vid(rest[a]), &vid(rest[b]), rng.gen_range(1..=4)).unwrap();
            }
        }
    }
    for &s in s1 {
        for v in 0..n {
            if v != s && (!s1.contains(&v) || v > s) && rng.gen_bool(0.45) {
                g.add_edge(&vid(s), &vid(v), rng.gen_range(1..=4)).unwrap();
            }
        }
    }
    g
}
