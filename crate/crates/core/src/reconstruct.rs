//! Witness subpartitions: backtracking through the DP records, exact
//! expansions, and validation against the problem constraints.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::solver::{DpTables, ProblemSpec, Via};
use crate::tree::RootedTree;

/// Disjoint connected parts plus the uncovered vertices, by vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subpartition {
    pub parts: Vec<Vec<String>>,
    pub residue: Vec<String>,
    /// Expansion of each part, in the same order as `parts`.
    pub expansions: Vec<BigRational>,
    pub max_expansion: BigRational,
}

impl Subpartition {
    pub fn new(parts: Vec<Vec<String>>, residue: Vec<String>, expansions: Vec<BigRational>) -> Self {
        let max_expansion = expansions.iter().max().cloned().unwrap_or_else(BigRational::zero);
        Subpartition {
            parts,
            residue,
            expansions,
            max_expansion,
        }
    }

    /// Builds a subpartition of `tree` from vertex indices, computing each
    /// part's expansion on the tree.
    pub fn from_indices(
        tree: &RootedTree,
        parts: &[Vec<usize>],
        residue: &[usize],
        use_potentials: bool,
    ) -> Result<Self> {
        let expansions = parts
            .iter()
            .map(|p| expansion(tree, p, use_potentials))
            .collect::<Result<Vec<_>>>()?;
        let name = |vs: &[usize]| vs.iter().map(|&v| tree.id(v).to_string()).collect::<Vec<_>>();
        Ok(Subpartition::new(
            parts.iter().map(|p| name(p)).collect(),
            name(residue),
            expansions,
        ))
    }
}

/// `(c(boundary) + p(part)) / w(part)` on the full tree; the root's virtual
/// parent edge never counts. Potentials are added only when requested.
pub fn expansion(tree: &RootedTree, part: &[usize], use_potentials: bool) -> Result<BigRational> {
    if part.is_empty() {
        return Err(Error::EmptyPart);
    }
    let mut inside = vec![false; tree.len()];
    for &v in part {
        inside[v] = true;
    }
    let mut cut = BigRational::zero();
    let mut weight = BigRational::zero();
    for &v in part {
        weight += tree.weight(v);
        if use_potentials {
            cut += tree.potential(v);
        }
        if let Some(p) = tree.parent(v) {
            if !inside[p] {
                cut += tree.parent_edge_cost(v);
            }
        }
        for &c in tree.children(v) {
            if !inside[c] {
                cut += tree.parent_edge_cost(c);
            }
        }
    }
    Ok(cut / weight)
}

/// Rebuilds the witness behind `mu(root, kappa, lambda)`, or `None` when the
/// answer is negative.
pub fn reconstruct_subpartition(
    tree: &RootedTree,
    spec: &ProblemSpec,
    tables: &DpTables,
) -> Result<Option<Subpartition>> {
    if !tables.matches(tree, spec) {
        return Err(Error::TableMismatch);
    }
    if !tables.feasible() {
        return Ok(None);
    }
    let (parts, residue) = backtrack(tree, tables, tree.root(), spec.kappa, spec.lambda);
    Subpartition::from_indices(tree, &parts, &residue, spec.use_potentials).map(Some)
}

enum Task {
    /// Realize `mu(u, k, l)`.
    Feasible(usize, usize, usize),
    /// Realize `gamma(u, k, l)`, `u` joining part number `.3`.
    Part(usize, usize, usize, usize),
}

/// Vertex-index witness for `mu(u, k, l)`; parts are numbered in discovery
/// order, their members and the residue sorted by index.
pub(crate) fn backtrack(
    tree: &RootedTree,
    tables: &DpTables,
    u: usize,
    k: usize,
    l: usize,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut residue = Vec::new();
    let mut stack = vec![Task::Feasible(u, k, l)];
    while let Some(task) = stack.pop() {
        match task {
            Task::Feasible(u, 0, _) => residue.extend(tree.subtree_vertices(u)),
            Task::Feasible(u, k, l) => match tables.via(u, k, l) {
                Via::Gamma => {
                    parts.push(Vec::new());
                    stack.push(Task::Part(u, k, l, parts.len() - 1));
                }
                Via::Residue => {
                    residue.push(u);
                    let splits = tables.residue_children(tree, u, k, l);
                    for (&c, &(kc, lc)) in tree.children(u).iter().zip(&splits).rev() {
                        stack.push(Task::Feasible(c, kc, lc));
                    }
                }
                Via::Infeasible => panic!("backtrack reached an infeasible entry at vertex {u}"),
            },
            Task::Part(u, k, l, p) => {
                parts[p].push(u);
                if tree.is_leaf(u) {
                    debug_assert_eq!(k, 1);
                    continue;
                }
                let kids = tables.gamma_children(tree, u, k, l);
                for (&c, &(kc, lc, cut)) in tree.children(u).iter().zip(&kids).rev() {
                    if cut {
                        stack.push(Task::Feasible(c, kc - 1, lc));
                    } else {
                        stack.push(Task::Part(c, kc, lc, p));
                    }
                }
            }
        }
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    residue.sort_unstable();
    (parts, residue)
}

/// One violated constraint of a candidate subpartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    PartCount { expected: usize, found: usize },
    EmptyPart(usize),
    UnknownVertex(String),
    DisconnectedPart(usize),
    Overlap(String),
    Uncovered(String),
    ResidueTooLarge { size: usize, limit: usize },
    ExpansionTooLarge { part: usize, expansion: BigRational },
    ForbiddenInResidue(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PartCount { expected, found } => write!(f, "expected {expected} parts, found {found}"),
            Violation::EmptyPart(i) => write!(f, "part {i} is empty"),
            Violation::UnknownVertex(id) => write!(f, "unknown vertex `{id}`"),
            Violation::DisconnectedPart(i) => write!(f, "part {i} is not connected"),
            Violation::Overlap(id) => write!(f, "vertex `{id}` appears more than once"),
            Violation::Uncovered(id) => write!(f, "vertex `{id}` is neither in a part nor in the residue"),
            Violation::ResidueTooLarge { size, limit } => write!(f, "residue has {size} vertices, limit {limit}"),
            Violation::ExpansionTooLarge { part, expansion } => write!(f, "part {part} has expansion {expansion}"),
            Violation::ForbiddenInResidue(id) => write!(f, "forbidden vertex `{id}` is in the residue"),
        }
    }
}

/// Checks `sub` against every constraint of `spec` on `tree`. Expansions
/// are recomputed, not read from `sub`.
pub fn validate_subpartition(tree: &RootedTree, spec: &ProblemSpec, sub: &Subpartition) -> Vec<Violation> {
    let mut out = Vec::new();
    if sub.parts.len() != spec.kappa {
        out.push(Violation::PartCount {
            expected: spec.kappa,
            found: sub.parts.len(),
        });
    }
    let index: HashMap<&str, usize> = tree.ids().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut seen = vec![false; tree.len()];
    let mut mark = |id: &String, out: &mut Vec<Violation>| -> Option<usize> {
        match index.get(id.as_str()) {
            None => {
                out.push(Violation::UnknownVertex(id.clone()));
                None
            }
            Some(&v) => {
                if seen[v] {
                    out.push(Violation::Overlap(id.clone()));
                }
                seen[v] = true;
                Some(v)
            }
        }
    };
    let mut resolved_parts = Vec::with_capacity(sub.parts.len());
    for part in &sub.parts {
        let vs: Vec<usize> = part.iter().filter_map(|id| mark(id, &mut out)).collect();
        resolved_parts.push(vs);
    }
    for id in &sub.residue {
        mark(id, &mut out);
        if spec.forbidden.contains(id) {
            out.push(Violation::ForbiddenInResidue(id.clone()));
        }
    }
    for (v, s) in seen.iter().enumerate() {
        if !s {
            out.push(Violation::Uncovered(tree.id(v).to_string()));
        }
    }
    if sub.residue.len() > spec.lambda {
        out.push(Violation::ResidueTooLarge {
            size: sub.residue.len(),
            limit: spec.lambda,
        });
    }
    for (i, part) in resolved_parts.iter().enumerate() {
        if part.is_empty() {
            out.push(Violation::EmptyPart(i));
            continue;
        }
        if !is_connected(tree, part) {
            out.push(Violation::DisconnectedPart(i));
        }
        let phi = expansion(tree, part, spec.use_potentials).expect("nonempty part");
        if phi > spec.xi {
            out.push(Violation::ExpansionTooLarge { part: i, expansion: phi });
        }
    }
    out
}

/// A vertex set of a tree is connected iff it spans `|set| - 1` tree edges.
fn is_connected(tree: &RootedTree, set: &[usize]) -> bool {
    let mut inside = vec![false; tree.len()];
    for &v in set {
        inside[v] = true;
    }
    let mut unique = set.to_vec();
    unique.sort_unstable();
    unique.dedup();
    let edges = unique
        .iter()
        .filter(|&&v| tree.parent(v).is_some_and(|p| inside[p]))
        .count();
    edges + 1 == unique.len()
}
