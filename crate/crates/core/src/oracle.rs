//! Exhaustive reference implementations for small instances. Nothing here
//! touches the dynamic program; expansions are recomputed from scratch.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::reconstruct::Subpartition;
use crate::solver::ProblemSpec;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_vertices: usize,
    pub max_parts: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_vertices: 10,
            max_parts: 10,
        }
    }
}

impl EnumerationBudget {
    fn check(&self, n: usize, kappa: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::BudgetExceeded {
                actual: n,
                limit: self.max_vertices,
            });
        }
        if kappa > self.max_parts {
            return Err(Error::BudgetExceeded {
                actual: kappa,
                limit: self.max_parts,
            });
        }
        Ok(())
    }
}

/// A connected subpartition by vertex index: parts ordered by smallest
/// member, members and residue ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub parts: Vec<Vec<usize>>,
    pub residue: Vec<usize>,
}

impl Arrangement {
    pub fn into_subpartition(self, tree: &RootedTree, use_potentials: bool) -> Subpartition {
        let expansions = self.parts.iter().map(|p| tree_phi(tree, p, use_potentials)).collect();
        let name = |vs: &[usize]| vs.iter().map(|&v| tree.id(v).to_string()).collect::<Vec<_>>();
        Subpartition::new(self.parts.iter().map(|p| name(p)).collect(), name(&self.residue), expansions)
    }
}

fn tree_phi(tree: &RootedTree, part: &[usize], use_potentials: bool) -> BigRational {
    let inside: BTreeSet<usize> = part.iter().copied().collect();
    let mut num = BigRational::zero();
    let mut den = BigRational::zero();
    for v in 0..tree.len() {
        if let Some(p) = tree.parent(v) {
            if inside.contains(&v) != inside.contains(&p) {
                num += tree.parent_edge_cost(v);
            }
        }
    }
    for &v in part {
        den += tree.weight(v);
        if use_potentials {
            num += tree.potential(v);
        }
    }
    num / den
}

fn find(link: &mut [usize], mut v: usize) -> usize {
    while link[v] != v {
        link[v] = link[link[v]];
        v = link[v];
    }
    v
}

/// Every connected `kappa`-subpartition with at most `lambda` uncovered
/// vertices, each exactly once.
pub fn enumerate_connected_subpartitions(
    tree: &RootedTree,
    kappa: usize,
    lambda: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<Arrangement>> {
    let n = tree.len();
    budget.check(n, kappa)?;
    let mut out = Vec::new();
    if kappa == 0 {
        return Ok(out);
    }
    for rmask in 0u32..(1 << n) {
        if rmask.count_ones() as usize > lambda {
            continue;
        }
        let covered = |v: usize| rmask & (1 << v) == 0;
        let kept: Vec<(usize, usize)> = (0..n)
            .filter_map(|v| tree.parent(v).map(|p| (v, p)))
            .filter(|&(v, p)| covered(v) && covered(p))
            .collect();
        let live = n - rmask.count_ones() as usize;
        let components = live - kept.len();
        if kappa < components || kappa - components > kept.len() {
            continue;
        }
        let cuts = kappa - components;
        for cmask in 0u32..(1 << kept.len()) {
            if cmask.count_ones() as usize != cuts {
                continue;
            }
            let mut link: Vec<usize> = (0..n).collect();
            for (i, &(v, p)) in kept.iter().enumerate() {
                if cmask & (1 << i) == 0 {
                    let (a, b) = (find(&mut link, v), find(&mut link, p));
                    link[a.max(b)] = a.min(b);
                }
            }
            let mut parts: Vec<Vec<usize>> = Vec::new();
            let mut slot = vec![usize::MAX; n];
            for v in (0..n).filter(|&v| covered(v)) {
                let r = find(&mut link, v);
                if slot[r] == usize::MAX {
                    slot[r] = parts.len();
                    parts.push(Vec::new());
                }
                parts[slot[r]].push(v);
            }
            let residue = (0..n).filter(|&v| !covered(v)).collect();
            out.push(Arrangement { parts, residue });
        }
    }
    Ok(out)
}

fn admissible(tree: &RootedTree, spec: &ProblemSpec, a: &Arrangement) -> bool {
    a.residue.iter().all(|&v| !spec.forbidden.contains(tree.id(v)))
}

fn max_phi(tree: &RootedTree, a: &Arrangement, use_potentials: bool) -> BigRational {
    a.parts
        .iter()
        .map(|p| tree_phi(tree, p, use_potentials))
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Exhaustive answer to the decision problem.
pub fn oracle_decide(tree: &RootedTree, spec: &ProblemSpec, budget: &EnumerationBudget) -> Result<bool> {
    spec.validate()?;
    Ok(enumerate_connected_subpartitions(tree, spec.kappa, spec.lambda, budget)?
        .iter()
        .any(|a| admissible(tree, spec, a) && max_phi(tree, a, spec.use_potentials) <= spec.xi))
}

/// Smallest achievable maximum expansion; `None` when no subpartition
/// exists. `spec.xi` is ignored.
pub fn oracle_min_xi(tree: &RootedTree, spec: &ProblemSpec, budget: &EnumerationBudget) -> Result<Option<BigRational>> {
    Ok(enumerate_connected_subpartitions(tree, spec.kappa, spec.lambda, budget)?
        .iter()
        .filter(|a| admissible(tree, spec, a))
        .map(|a| max_phi(tree, a, spec.use_potentials))
        .min())
}

/// Every value the expansion of a connected vertex set can take, plus 0,
/// sorted and deduplicated. All decision thresholds lie in this set.
pub fn oracle_ratio_set(tree: &RootedTree, use_potentials: bool, budget: &EnumerationBudget) -> Result<Vec<BigRational>> {
    let n = tree.len();
    budget.check(n, 1)?;
    let mut out = BTreeSet::new();
    out.insert(BigRational::zero());
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let inner = set
            .iter()
            .filter(|&&v| tree.parent(v).is_some_and(|p| mask & (1 << p) != 0))
            .count();
        if inner + 1 == set.len() {
            out.insert(tree_phi(tree, &set, use_potentials));
        }
    }
    Ok(out.into_iter().collect())
}

fn graph_connected(adj: &[Vec<(usize, usize)>], block: &[usize]) -> bool {
    let mut seen = vec![false; adj.len()];
    let member = |v: usize| block.contains(&v);
    let mut stack = vec![block[0]];
    seen[block[0]] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in &adj[v] {
            if member(w) && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == block.len()
}

/// Exhaustive semi-supervised decision on a general graph: residue contains
/// every vertex of `required`, none of `forbidden` (`spec.forbidden` is
/// ignored), parts connected in the graph, expansions measured in the graph.
pub fn oracle_decide_graph(
    graph: &WeightedGraph,
    required: &BTreeSet<String>,
    forbidden: &BTreeSet<String>,
    spec: &ProblemSpec,
    budget: &EnumerationBudget,
) -> Result<bool> {
    let n = graph.len();
    budget.check(n, spec.kappa)?;
    let adj = graph.adjacency();
    let must: u32 = (0..n)
        .filter(|&v| required.contains(graph.id(v)))
        .fold(0, |m, v| m | (1 << v));
    let never: u32 = (0..n)
        .filter(|&v| forbidden.contains(graph.id(v)))
        .fold(0, |m, v| m | (1 << v));
    for rmask in 0u32..(1 << n) {
        if rmask & must != must || rmask & never != 0 || rmask.count_ones() as usize > spec.lambda {
            continue;
        }
        let live: Vec<usize> = (0..n).filter(|&v| rmask & (1 << v) == 0).collect();
        if live.len() < spec.kappa {
            continue;
        }
        let mut labels = vec![0usize; live.len()];
        if search_blocks(graph, &adj, spec, &live, &mut labels, 0, 0) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Restricted-growth labelling of `live` into exactly `spec.kappa` blocks.
fn search_blocks(
    graph: &WeightedGraph,
    adj: &[Vec<(usize, usize)>],
    spec: &ProblemSpec,
    live: &[usize],
    labels: &mut [usize],
    i: usize,
    used: usize,
) -> bool {
    if i == live.len() {
        if used != spec.kappa {
            return false;
        }
        return (0..used).all(|b| {
            let block: Vec<usize> = live.iter().zip(labels.iter()).filter(|(_, &l)| l == b).map(|(&v, _)| v).collect();
            graph_connected(adj, &block)
                && graph.expansion(&block, spec.use_potentials).expect("nonempty block") <= spec.xi
        });
    }
    if spec.kappa - used > live.len() - i {
        return false;
    }
    let top = if used < spec.kappa { used + 1 } else { used };
    for b in 0..top {
        labels[i] = b;
        if search_blocks(graph, adj, spec, live, labels, i + 1, used.max(b + 1)) {
            return true;
        }
    }
    false
}
