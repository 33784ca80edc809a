//! General weighted similarity graphs, and the spanning trees the solver
//! runs on.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::ratio::IntoRational;
use crate::tree::{EdgeSpec, RootedTree, VertexSpec};

/// Orders ids numerically when both are unsigned integers, otherwise
/// lexicographically; numeric ids sort first.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let num = |s: &str| -> Option<u128> {
        if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
            None
        } else {
            s.parse().ok()
        }
    };
    match (num(a), num(b)) {
        (Some(x), Some(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub id: String,
    pub weight: BigRational,
    pub potential: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    /// Similarity; this is what a cut pays.
    pub cost: BigRational,
    /// Spanning-tree length; `1/cost` when absent.
    pub distance: Option<BigRational>,
}

/// Simple undirected graph with positive vertex weights and positive edge
/// similarities.
#[derive(Clone, Debug, Default)]
pub struct WeightedGraph {
    vertices: Vec<GraphVertex>,
    edges: Vec<GraphEdge>,
    index: HashMap<String, usize>,
    pairs: HashSet<(usize, usize)>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, weight: impl IntoRational) -> Result<usize> {
        self.add_vertex_with_potential(id, weight, 0)
    }

    pub fn add_vertex_with_potential(
        &mut self,
        id: impl Into<String>,
        weight: impl IntoRational,
        potential: impl IntoRational,
    ) -> Result<usize> {
        let id = id.into();
        let weight = weight.into_rational();
        let potential = potential.into_rational();
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertexId(id));
        }
        if !weight.is_positive() {
            return Err(Error::NonPositiveVertexWeight(id));
        }
        if potential.is_negative() {
            return Err(Error::NegativeValue { what: "potential", id });
        }
        let v = self.vertices.len();
        self.index.insert(id.clone(), v);
        self.vertices.push(GraphVertex { id, weight, potential });
        Ok(v)
    }

    pub fn add_edge(&mut self, u: &str, v: &str, cost: impl IntoRational) -> Result<()> {
        self.add_edge_with_distance(u, v, cost, None)
    }

    pub fn add_edge_with_distance(
        &mut self,
        u: &str,
        v: &str,
        cost: impl IntoRational,
        distance: Option<BigRational>,
    ) -> Result<()> {
        let cost = cost.into_rational();
        let a = self.index_of(u).ok_or_else(|| Error::UnknownVertexId(u.to_string()))?;
        let b = self.index_of(v).ok_or_else(|| Error::UnknownVertexId(v.to_string()))?;
        if a == b {
            return Err(Error::SelfLoop(u.to_string()));
        }
        if !cost.is_positive() {
            return Err(Error::InvalidSpec(format!("edge {u}-{v} must have a positive cost")));
        }
        if distance.as_ref().is_some_and(|d| d.is_negative()) {
            return Err(Error::NegativeValue {
                what: "distance",
                id: format!("{u}-{v}"),
            });
        }
        if !self.pairs.insert((a.min(b), a.max(b))) {
            return Err(Error::DuplicateEdge(u.to_string(), v.to_string()));
        }
        self.edges.push(GraphEdge { u: a, v: b, cost, distance });
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn has_potentials(&self) -> bool {
        self.vertices.iter().any(|v| !v.potential.is_zero())
    }

    /// Vertex indices sorted by id in natural order.
    pub fn sorted_vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = (0..self.len()).collect();
        vs.sort_by(|&a, &b| natural_cmp(self.id(a), self.id(b)));
        vs
    }

    /// Neighbour lists as `(vertex, edge index)`, in edge order.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        adj
    }

    /// Connected components of the graph minus `removed`, each sorted by
    /// index, listed by smallest member.
    pub fn components(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = removed.to_vec();
        seen.resize(self.len(), false);
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &(w, _) in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the graph minus `removed` has no cycle.
    pub fn is_forest_without(&self, removed: &[bool]) -> bool {
        let kept = (0..self.len()).filter(|&v| !removed[v]).count();
        let edges = self.edges.iter().filter(|e| !removed[e.u] && !removed[e.v]).count();
        edges + self.components(removed).len() == kept
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edges.len() + 1 == self.len() && self.components(&[]).len() == 1
    }

    /// `(c(boundary) + p(part)) / w(part)` in this graph; potentials only
    /// when requested.
    pub fn expansion(&self, part: &[usize], use_potentials: bool) -> Result<BigRational> {
        if part.is_empty() {
            return Err(Error::EmptyPart);
        }
        let mut inside = vec![false; self.len()];
        for &v in part {
            inside[v] = true;
        }
        let mut num = BigRational::zero();
        let mut den = BigRational::zero();
        for &v in part {
            den += &self.vertices[v].weight;
            if use_potentials {
                num += &self.vertices[v].potential;
            }
        }
        for e in &self.edges {
            if inside[e.u] != inside[e.v] {
                num += &e.cost;
            }
        }
        Ok(num / den)
    }

    /// Default root of a vertex set: the heaviest vertex, ties to the
    /// smallest id.
    pub fn heaviest(&self, set: &[usize]) -> usize {
        *set.iter()
            .min_by(|&&a, &&b| {
                self.vertices[b]
                    .weight
                    .cmp(&self.vertices[a].weight)
                    .then_with(|| natural_cmp(self.id(a), self.id(b)))
            })
            .expect("nonempty vertex set")
    }

    /// Rooted tree on `set` using only the listed edges; `extra_potential`
    /// is added to each vertex's own potential (when `use_potentials`).
    pub(crate) fn induced_tree(
        &self,
        set: &[usize],
        edges: &[usize],
        root: usize,
        use_potentials: bool,
        extra_potential: Option<&[BigRational]>,
    ) -> Result<RootedTree> {
        let vertices = set
            .iter()
            .map(|&v| {
                let mut p = if use_potentials {
                    self.vertices[v].potential.clone()
                } else {
                    BigRational::zero()
                };
                if let Some(extra) = extra_potential {
                    p += &extra[v];
                }
                VertexSpec {
                    id: self.vertices[v].id.clone(),
                    weight: self.vertices[v].weight.clone(),
                    potential: p,
                }
            })
            .collect();
        let edges = edges
            .iter()
            .map(|&i| {
                let e = &self.edges[i];
                EdgeSpec {
                    u: self.id(e.u).to_string(),
                    v: self.id(e.v).to_string(),
                    cost: e.cost.clone(),
                }
            })
            .collect();
        RootedTree::build(vertices, edges, self.id(root))
    }

    /// Edge indices of a maximum-similarity spanning forest: Kruskal over
    /// the distance (override or `1/cost`), ties broken by larger cost,
    /// then smaller endpoint ids.
    pub fn spanning_edges(&self) -> Vec<usize> {
        let length = |e: &GraphEdge| e.distance.clone().unwrap_or_else(|| BigRational::one() / &e.cost);
        let key = |e: &GraphEdge| {
            let (a, b) = (self.id(e.u), self.id(e.v));
            if natural_cmp(a, b) == Ordering::Greater {
                (b, a)
            } else {
                (a, b)
            }
        };
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&i, &j| {
            let (a, b) = (&self.edges[i], &self.edges[j]);
            let (ka, kb) = (key(a), key(b));
            length(a)
                .cmp(&length(b))
                .then_with(|| b.cost.cmp(&a.cost))
                .then_with(|| natural_cmp(ka.0, kb.0))
                .then_with(|| natural_cmp(ka.1, kb.1))
        });
        let mut uf = UnionFind::<usize>::new(self.len());
        order.retain(|&i| uf.union(self.edges[i].u, self.edges[i].v));
        order
    }

    /// One rooted tree per connected component of the spanning forest. Tree
    /// edges keep their original similarity as cost.
    pub fn similarity_spanning_forest(&self) -> Result<Vec<RootedTree>> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let kept = self.spanning_edges();
        let comps = self.components(&[]);
        let mut comp_of = vec![0; self.len()];
        for (c, vs) in comps.iter().enumerate() {
            for &v in vs {
                comp_of[v] = c;
            }
        }
        let mut edges_of = vec![Vec::new(); comps.len()];
        for i in kept {
            edges_of[comp_of[self.edges[i].u]].push(i);
        }
        let has_p = self.has_potentials();
        comps
            .iter()
            .zip(&edges_of)
            .map(|(vs, es)| {
                let mut vs = vs.clone();
                vs.sort_by(|&a, &b| natural_cmp(self.id(a), self.id(b)));
                self.induced_tree(&vs, es, self.heaviest(&vs), has_p, None)
            })
            .collect()
    }

    /// Spanning tree of a connected graph; `NotATree` when disconnected.
    pub fn similarity_spanning_tree(&self) -> Result<RootedTree> {
        let mut forest = self.similarity_spanning_forest()?;
        if forest.len() != 1 {
            return Err(Error::NotATree(format!(
                "graph has {} connected components",
                forest.len()
            )));
        }
        Ok(forest.pop().unwrap())
    }
}
