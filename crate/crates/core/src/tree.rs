//! Rooted weighted trees with precomputed subtree aggregates.
//!
//! All vertex weights, edge costs and potentials are exact rationals. On
//! construction they are multiplied by the least common denominator `D` of
//! every input value and stored as integers, so each quantity the solver
//! compares is an integer once the threshold's own denominator is folded in
//! (see [`scale_instance`]).
//!
//! The root carries a virtual parent edge of cost zero; no extra vertex is
//! materialized.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ratio::{common_denominator, IntoRational};

const NONE: usize = usize::MAX;

/// Integers with magnitude at most 2^96 are stored in `i128`; sums over up
/// to 2^30 of them cannot overflow.
const NARROW_BITS: u64 = 96;

/// One integer per vertex, stored narrow when every entry is small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Column {
    Narrow(Vec<i128>),
    Wide(Vec<BigInt>),
}

impl Column {
    fn from_big(values: Vec<BigInt>) -> Self {
        if values.iter().all(|v| v.bits() <= NARROW_BITS) {
            Column::Narrow(values.iter().map(|v| v.to_i128().unwrap()).collect())
        } else {
            Column::Wide(values)
        }
    }

    fn zeros(n: usize) -> Self {
        Column::Narrow(vec![0; n])
    }

    pub(crate) fn get(&self, i: usize) -> BigInt {
        match self {
            Column::Narrow(v) => BigInt::from(v[i]),
            Column::Wide(v) => v[i].clone(),
        }
    }

    pub(crate) fn narrow(&self) -> Option<&[i128]> {
        match self {
            Column::Narrow(v) => Some(v),
            Column::Wide(_) => None,
        }
    }

    fn total(&self) -> BigInt {
        match self {
            Column::Narrow(v) => v.iter().map(|&x| BigInt::from(x)).sum(),
            Column::Wide(v) => v.iter().sum(),
        }
    }

    /// Sums each vertex's value over its subtree, walking `order`
    /// (children before parents).
    fn subtree_sums(&self, order: &[usize], parent: &[usize]) -> Column {
        match self {
            Column::Narrow(v) => {
                let mut acc = v.clone();
                for &u in order {
                    if parent[u] != NONE {
                        acc[parent[u]] += acc[u];
                    }
                }
                let fits = acc.iter().all(|x| x.unsigned_abs() < 1u128 << 126);
                if fits {
                    Column::Narrow(acc)
                } else {
                    Column::Wide(acc.into_iter().map(BigInt::from).collect())
                }
            }
            Column::Wide(v) => {
                let mut acc = v.clone();
                for &u in order {
                    if parent[u] != NONE {
                        let child = acc[u].clone();
                        acc[parent[u]] += child;
                    }
                }
                Column::Wide(acc)
            }
        }
    }
}

/// An exact scaled integer or the absorbing `Infinity` sentinel.
///
/// `Finite` orders below `Infinity`; addition with `Infinity` yields
/// `Infinity`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScaledValue<N = BigInt> {
    Finite(N),
    Infinity,
}

impl<N> ScaledValue<N> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ScaledValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&N> {
        match self {
            ScaledValue::Finite(v) => Some(v),
            ScaledValue::Infinity => None,
        }
    }
}

impl<N: fmt::Display> fmt::Display for ScaledValue<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScaledValue::Finite(v) => write!(f, "{v}"),
            ScaledValue::Infinity => f.write_str("inf"),
        }
    }
}

impl std::ops::Add for ScaledValue<BigInt> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (ScaledValue::Finite(a), ScaledValue::Finite(b)) => ScaledValue::Finite(a + b),
            _ => ScaledValue::Infinity,
        }
    }
}

/// Input description of one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub id: String,
    pub weight: BigRational,
    pub potential: BigRational,
}

/// Input description of one undirected edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    pub cost: BigRational,
}

/// Immutable rooted tree.
///
/// Vertices are addressed by dense indices `0..len()`; [`RootedTree::id`]
/// and [`RootedTree::index_of`] map to and from the external string ids.
#[derive(Clone)]
pub struct RootedTree {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    root: usize,
    parent: Vec<usize>,
    child_start: Vec<usize>,
    child_list: Vec<usize>,
    order: Vec<usize>,
    subtree_size: Vec<usize>,
    scale: BigInt,
    weight: Column,
    cost: Column,
    potential: Column,
    subtree_weight: Column,
    subtree_potential: Column,
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootedTree")
            .field("len", &self.len())
            .field("root", &self.ids[self.root])
            .finish_non_exhaustive()
    }
}

impl RootedTree {
    /// Builds a tree from vertex and edge lists.
    ///
    /// Children are ordered by the position of their edge in `edges`.
    pub fn build(vertices: Vec<VertexSpec>, edges: Vec<EdgeSpec>, root: &str) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertexId(v.id.clone()));
            }
            if !v.weight.is_positive() {
                return Err(Error::NonPositiveVertexWeight(v.id.clone()));
            }
            if v.potential.is_negative() {
                return Err(Error::NegativeValue { what: "potential", id: v.id.clone() });
            }
        }
        let root = *index
            .get(root)
            .ok_or_else(|| Error::UnknownVertexId(root.to_string()))?;
        if edges.len() + 1 != n {
            return Err(Error::NotATree(format!(
                "{} vertices need {} edges, got {}",
                n,
                n - 1,
                edges.len()
            )));
        }

        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, edge) in edges.iter().enumerate() {
            let u = *index
                .get(&edge.u)
                .ok_or_else(|| Error::UnknownVertexId(edge.u.clone()))?;
            let v = *index
                .get(&edge.v)
                .ok_or_else(|| Error::UnknownVertexId(edge.v.clone()))?;
            if u == v {
                return Err(Error::NotATree(format!("self-loop at `{}`", edge.u)));
            }
            if edge.cost.is_negative() {
                return Err(Error::NegativeValue {
                    what: "edge cost",
                    id: format!("{}-{}", edge.u, edge.v),
                });
            }
            adjacency[u].push((v, e));
            adjacency[v].push((u, e));
        }

        let mut parent = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut seen = vec![false; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, e) in &adjacency[u] {
                if e == parent_edge[u] {
                    continue;
                }
                if seen[v] {
                    return Err(Error::NotATree(format!("cycle through `{}`", vertices[v].id)));
                }
                seen[v] = true;
                parent[v] = u;
                parent_edge[v] = e;
                children[u].push(v);
                queue.push_back(v);
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::NotATree(format!("`{}` is unreachable from the root", vertices[v].id)));
        }

        let zero = BigRational::zero();
        let costs: Vec<&BigRational> = (0..n)
            .map(|v| if v == root { &zero } else { &edges[parent_edge[v]].cost })
            .collect();
        let scale = common_denominator(
            vertices
                .iter()
                .flat_map(|v| [&v.weight, &v.potential])
                .chain(costs.iter().copied()),
        );
        let to_scaled = |q: &BigRational| -> BigInt { (q.numer() * &scale) / q.denom() };
        let weight = Column::from_big(vertices.iter().map(|v| to_scaled(&v.weight)).collect());
        let potential = Column::from_big(vertices.iter().map(|v| to_scaled(&v.potential)).collect());
        let cost = Column::from_big(costs.iter().map(|c| to_scaled(c)).collect());

        let (child_start, child_list) = flatten(&children);
        let ids = vertices.into_iter().map(|v| v.id).collect();
        Ok(Self::assemble(ids, index, root, parent, child_start, child_list, scale, weight, cost, potential))
    }

    /// Builds a tree from a parent array with integer data; `parent[root]`
    /// must be `None`. Vertex ids are the decimal indices and children are
    /// ordered by index. Intended for large generated instances.
    pub fn from_parent_array(
        parent: &[Option<usize>],
        weight: &[i64],
        cost: &[i64],
        potential: Option<&[i64]>,
    ) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        if weight.len() != n || cost.len() != n || potential.is_some_and(|p| p.len() != n) {
            return Err(Error::InvalidSpec("per-vertex arrays must have equal length".into()));
        }
        let mut root = NONE;
        let mut parents = vec![NONE; n];
        let mut counts = vec![0usize; n];
        for (v, p) in parent.iter().enumerate() {
            match p {
                None if root == NONE => root = v,
                None => return Err(Error::NotATree("more than one root".into())),
                Some(p) if *p >= n => return Err(Error::UnknownVertexId(p.to_string())),
                Some(p) if *p == v => return Err(Error::NotATree(format!("self-loop at `{v}`"))),
                Some(p) => {
                    parents[v] = *p;
                    counts[*p] += 1;
                }
            }
            if weight[v] <= 0 {
                return Err(Error::NonPositiveVertexWeight(v.to_string()));
            }
            if cost[v] < 0 && p.is_some() {
                return Err(Error::NegativeValue { what: "edge cost", id: v.to_string() });
            }
            if potential.is_some_and(|pot| pot[v] < 0) {
                return Err(Error::NegativeValue { what: "potential", id: v.to_string() });
            }
        }
        if root == NONE {
            return Err(Error::NotATree("no root".into()));
        }
        let mut child_start = vec![0usize; n + 1];
        for v in 0..n {
            child_start[v + 1] = child_start[v] + counts[v];
        }
        let mut fill = child_start.clone();
        let mut child_list = vec![0usize; n - 1];
        for v in 0..n {
            if parents[v] != NONE {
                let p = parents[v];
                child_list[fill[p]] = v;
                fill[p] += 1;
            }
        }
        let ids: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let index = ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let cost_col = Column::Narrow(
            (0..n)
                .map(|v| if v == root { 0 } else { cost[v] as i128 })
                .collect(),
        );
        let potential_col = match potential {
            Some(p) => Column::Narrow(p.iter().map(|&x| x as i128).collect()),
            None => Column::zeros(n),
        };
        let tree = Self::assemble(
            ids,
            index,
            root,
            parents,
            child_start,
            child_list,
            BigInt::from(1),
            Column::Narrow(weight.iter().map(|&x| x as i128).collect()),
            cost_col,
            potential_col,
        );
        if tree.order.len() != n {
            return Err(Error::NotATree("parent array contains a cycle".into()));
        }
        Ok(tree)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        root: usize,
        parent: Vec<usize>,
        child_start: Vec<usize>,
        child_list: Vec<usize>,
        scale: BigInt,
        weight: Column,
        cost: Column,
        potential: Column,
    ) -> Self {
        let n = ids.len();
        // Reverse of a breadth-first sweep from the root.
        let mut order = Vec::with_capacity(n);
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            order.extend_from_slice(&child_list[child_start[u]..child_start[u + 1]]);
            if order.len() > n {
                break;
            }
        }
        order.reverse();

        let mut subtree_size = vec![1usize; n];
        for &u in &order {
            if parent[u] != NONE {
                subtree_size[parent[u]] += subtree_size[u];
            }
        }
        let subtree_weight = weight.subtree_sums(&order, &parent);
        let subtree_potential = potential.subtree_sums(&order, &parent);
        RootedTree {
            ids,
            index,
            root,
            parent,
            child_start,
            child_list,
            order,
            subtree_size,
            scale,
            weight,
            cost,
            potential,
            subtree_weight,
            subtree_potential,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            NONE => None,
            p => Some(p),
        }
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.child_list[self.child_start[v]..self.child_start[v + 1]]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.child_start[v] == self.child_start[v + 1]
    }

    /// Every vertex once, each child before its parent, the root last.
    pub fn processing_order(&self) -> &[usize] {
        &self.order
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v]
    }

    /// Vertices of the subtree rooted at `v`, `v` first.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut head = 0;
        while head < out.len() {
            let u = out[head];
            head += 1;
            out.extend_from_slice(self.children(u));
        }
        out
    }

    fn unscale(&self, value: BigInt) -> BigRational {
        BigRational::new(value, self.scale.clone())
    }

    pub fn weight(&self, v: usize) -> BigRational {
        self.unscale(self.weight.get(v))
    }

    /// Cost of the edge from `v` to its parent; zero for the root.
    pub fn parent_edge_cost(&self, v: usize) -> BigRational {
        self.unscale(self.cost.get(v))
    }

    pub fn potential(&self, v: usize) -> BigRational {
        self.unscale(self.potential.get(v))
    }

    pub fn subtree_weight(&self, v: usize) -> BigRational {
        self.unscale(self.subtree_weight.get(v))
    }

    pub fn subtree_potential(&self, v: usize) -> BigRational {
        self.unscale(self.subtree_potential.get(v))
    }

    /// Least common denominator all stored integers are expressed in.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn has_potentials(&self) -> bool {
        match &self.potential {
            Column::Narrow(v) => v.iter().any(|&p| p != 0),
            Column::Wide(v) => v.iter().any(|p| !p.is_zero()),
        }
    }

    pub(crate) fn cost_column(&self) -> &Column {
        &self.cost
    }

    pub(crate) fn subtree_weight_column(&self) -> &Column {
        &self.subtree_weight
    }

    pub(crate) fn subtree_potential_column(&self) -> &Column {
        &self.subtree_potential
    }

    /// Scaled totals `(sum of weights, sum of edge costs, sum of potentials)`.
    pub(crate) fn scaled_totals(&self) -> (BigInt, BigInt, BigInt) {
        (self.weight.total(), self.cost.total(), self.potential.total())
    }

    pub fn min_weight(&self) -> BigRational {
        let min = match &self.weight {
            Column::Narrow(v) => BigInt::from(*v.iter().min().unwrap()),
            Column::Wide(v) => v.iter().min().unwrap().clone(),
        };
        self.unscale(min)
    }

    pub fn total_weight(&self) -> BigRational {
        self.unscale(self.weight.total())
    }

    pub fn total_cost(&self) -> BigRational {
        self.unscale(self.cost.total())
    }

    pub fn total_potential(&self) -> BigRational {
        self.unscale(self.potential.total())
    }

    /// Vertex and edge lists that rebuild this tree with the same child order.
    pub fn to_specs(&self) -> (Vec<VertexSpec>, Vec<EdgeSpec>) {
        let vertices = (0..self.len())
            .map(|v| VertexSpec {
                id: self.ids[v].clone(),
                weight: self.weight(v),
                potential: self.potential(v),
            })
            .collect();
        let mut edges = Vec::with_capacity(self.len().saturating_sub(1));
        for &u in self.order.iter().rev() {
            for &c in self.children(u) {
                edges.push(EdgeSpec {
                    u: self.ids[u].clone(),
                    v: self.ids[c].clone(),
                    cost: self.parent_edge_cost(c),
                });
            }
        }
        (vertices, edges)
    }
}

fn flatten(children: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut start = Vec::with_capacity(children.len() + 1);
    let mut list = Vec::new();
    start.push(0);
    for c in children {
        list.extend_from_slice(c);
        start.push(list.len());
    }
    (start, list)
}

/// Fluent construction of small trees, mostly for tests and examples.
#[derive(Default, Clone)]
pub struct TreeBuilder {
    vertices: Vec<VertexSpec>,
    edges: Vec<EdgeSpec>,
    root: Option<String>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(self, id: impl Into<String>, weight: impl IntoRational) -> Self {
        self.vertex_with_potential(id, weight, 0)
    }

    pub fn vertex_with_potential(
        mut self,
        id: impl Into<String>,
        weight: impl IntoRational,
        potential: impl IntoRational,
    ) -> Self {
        self.vertices.push(VertexSpec {
            id: id.into(),
            weight: weight.into_rational(),
            potential: potential.into_rational(),
        });
        self
    }

    pub fn edge(mut self, u: impl Into<String>, v: impl Into<String>, cost: impl IntoRational) -> Self {
        self.edges.push(EdgeSpec {
            u: u.into(),
            v: v.into(),
            cost: cost.into_rational(),
        });
        self
    }

    pub fn root(mut self, id: impl Into<String>) -> Self {
        self.root = Some(id.into());
        self
    }

    /// Defaults to the first vertex as root.
    pub fn build(self) -> Result<RootedTree> {
        let root = match self.root {
            Some(r) => r,
            None => self
                .vertices
                .first()
                .map(|v| v.id.clone())
                .ok_or_else(|| Error::NotATree("no vertices".into()))?,
        };
        RootedTree::build(self.vertices, self.edges, &root)
    }
}

/// A tree expressed in the integer units of one threshold `xi = a/b`.
///
/// Every stored value is the true rational times `factor = D * b`, where
/// `D` is the tree's common denominator, so `xi * weight` becomes the
/// integer `a * D * weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledInstance {
    pub factor: BigInt,
    /// `(a, b)` with `xi = a/b` in lowest terms.
    pub xi: (BigInt, BigInt),
    /// `xi * w(T_v) * factor` per vertex.
    pub xi_subtree_weight: Vec<BigInt>,
    /// `c(e_v) * factor` per vertex (zero at the root).
    pub parent_edge_cost: Vec<BigInt>,
    /// `p(T_v) * factor` per vertex.
    pub subtree_potential: Vec<BigInt>,
}

/// Rescales `tree` so that every quantity compared at threshold `xi` is an
/// exact integer.
pub fn scale_instance(tree: &RootedTree, xi: &BigRational) -> ScaledInstance {
    let a = xi.numer().clone();
    let b = xi.denom().clone();
    let n = tree.len();
    ScaledInstance {
        factor: tree.scale() * &b,
        xi_subtree_weight: (0..n).map(|v| &a * tree.subtree_weight.get(v)).collect(),
        parent_edge_cost: (0..n).map(|v| &b * tree.cost.get(v)).collect(),
        subtree_potential: (0..n).map(|v| &b * tree.subtree_potential.get(v)).collect(),
        xi: (a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    fn path_ab() -> RootedTree {
        TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .edge("a", "b", 1)
            .root("b")
            .build()
            .unwrap()
    }

    #[test]
    fn single_vertex() {
        let t = TreeBuilder::new().vertex("a", 1).build().unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.subtree_weight(0), ratio(1, 1));
        assert_eq!(t.subtree_size(0), 1);
        assert_eq!(t.parent_edge_cost(0), ratio(0, 1));
        assert_eq!(t.processing_order(), &[0]);
    }

    #[test]
    fn path_aggregates() {
        let t = path_ab();
        let a = t.index_of("a").unwrap();
        let b = t.index_of("b").unwrap();
        assert_eq!(t.children(b), &[a]);
        assert_eq!(t.subtree_weight(b), ratio(2, 1));
        assert_eq!(t.subtree_weight(a), ratio(1, 1));
        assert_eq!(t.processing_order(), &[a, b]);
        assert_eq!(t.parent_edge_cost(b), ratio(0, 1));
        assert_eq!(t.parent_edge_cost(a), ratio(1, 1));
    }

    #[test]
    fn triangle_is_rejected() {
        let err = TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .vertex("c", 1)
            .edge("a", "b", 1)
            .edge("b", "c", 1)
            .edge("a", "c", 1)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::NotATree(_)));
    }

    #[test]
    fn disconnected_with_cycle_is_rejected() {
        let err = TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .vertex("c", 1)
            .vertex("d", 1)
            .edge("a", "b", 1)
            .edge("b", "c", 1)
            .edge("c", "a", 1)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::NotATree(_)));
    }

    #[test]
    fn bad_inputs() {
        let err = TreeBuilder::new().vertex("a", 0).build().unwrap_err();
        assert_eq!(err, Error::NonPositiveVertexWeight("a".into()));
        let err = TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .edge("a", "z", 1)
            .build()
            .unwrap_err();
        assert_eq!(err, Error::UnknownVertexId("z".into()));
        let err = TreeBuilder::new().vertex("a", 1).root("q").build().unwrap_err();
        assert_eq!(err, Error::UnknownVertexId("q".into()));
    }

    #[test]
    fn path_order_children_first() {
        let t = TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .vertex("c", 1)
            .edge("a", "b", 1)
            .edge("b", "c", 1)
            .root("c")
            .build()
            .unwrap();
        let ids: Vec<&str> = t.processing_order().iter().map(|&v| t.id(v)).collect();
        assert_eq!(ids, ["a", "b", "c"]);
    }

    #[test]
    fn star_order_ends_at_root() {
        let t = TreeBuilder::new()
            .vertex("r", 1)
            .vertex("x", 1)
            .vertex("y", 1)
            .vertex("z", 1)
            .edge("r", "x", 1)
            .edge("r", "y", 1)
            .edge("r", "z", 1)
            .build()
            .unwrap();
        let order = t.processing_order();
        assert_eq!(*order.last().unwrap(), t.root());
        assert_eq!(t.children(t.root()).len(), 3);
        let mut leaves: Vec<&str> = order[..3].iter().map(|&v| t.id(v)).collect();
        leaves.sort();
        assert_eq!(leaves, ["x", "y", "z"]);
    }

    #[test]
    fn scaling_examples() {
        let t = path_ab();
        let s = scale_instance(&t, &ratio(1, 1));
        assert_eq!(s.factor, BigInt::from(1));
        assert_eq!(s.parent_edge_cost[t.index_of("a").unwrap()], BigInt::from(1));

        let t = TreeBuilder::new()
            .vertex("a", 1)
            .vertex("b", 1)
            .edge("a", "b", ratio(1, 2))
            .root("b")
            .build()
            .unwrap();
        let s = scale_instance(&t, &ratio(1, 3));
        assert_eq!(s.factor, BigInt::from(6));
        let a = t.index_of("a").unwrap();
        assert_eq!(s.parent_edge_cost[a], BigInt::from(3));
        // xi * w(a) * 6 = 1/3 * 1 * 6
        assert_eq!(s.xi_subtree_weight[a], BigInt::from(2));

        let s = scale_instance(&t, &ratio(0, 1));
        assert!(s.xi_subtree_weight.iter().all(|x| x.is_zero()));
        assert_eq!(s.parent_edge_cost[a], BigInt::from(1));
    }

    #[test]
    fn parent_array_constructor() {
        let t = RootedTree::from_parent_array(&[None, Some(0), Some(0), Some(1)], &[1, 2, 3, 4], &[0, 5, 6, 7], None)
            .unwrap();
        assert_eq!(t.root(), 0);
        assert_eq!(t.children(0), &[1, 2]);
        assert_eq!(t.subtree_weight(1), ratio(6, 1));
        assert_eq!(t.subtree_weight(0), ratio(10, 1));
        assert_eq!(t.parent_edge_cost(3), ratio(7, 1));
        let err = RootedTree::from_parent_array(&[Some(1), Some(0)], &[1, 1], &[1, 1], None).unwrap_err();
        assert!(matches!(err, Error::NotATree(_)));
        let err = RootedTree::from_parent_array(&[None, Some(2), Some(1)], &[1, 1, 1], &[1, 1, 1], None).unwrap_err();
        assert!(matches!(err, Error::NotATree(_)));
    }

    #[test]
    fn wide_values_are_kept_exact() {
        let huge: BigInt = BigInt::from(1u8) << 200;
        let t = TreeBuilder::new()
            .vertex("a", BigRational::from_integer(huge.clone()))
            .vertex("b", 1)
            .edge("a", "b", 1)
            .root("b")
            .build()
            .unwrap();
        assert_eq!(t.subtree_weight(t.root()), BigRational::from_integer(huge + 1));
    }

    proptest::proptest! {
        #[test]
        fn aggregates_match_dfs_and_round_trip(parents in proptest::collection::vec(0usize..1000, 0..30),
                                               weights in proptest::collection::vec(1i64..9, 31),
                                               dens in proptest::collection::vec(1i64..5, 31)) {
            let n = parents.len() + 1;
            let mut b = TreeBuilder::new();
            for v in 0..n {
                b = b.vertex(v.to_string(), ratio(weights[v], dens[v]));
            }
            for (i, p) in parents.iter().enumerate() {
                let child = i + 1;
                b = b.edge((p % child).to_string(), child.to_string(), ratio(weights[child] - 1, dens[child]));
            }
            let t = b.root("0").build().unwrap();
            let pos: Vec<usize> = {
                let mut pos = vec![0; n];
                for (i, &v) in t.processing_order().iter().enumerate() { pos[v] = i; }
                pos
            };
            proptest::prop_assert_eq!(pos[t.root()], n - 1);
            for v in 0..n {
                if let Some(p) = t.parent(v) { proptest::prop_assert!(pos[v] < pos[p]); }
                let sum: BigRational = t.subtree_vertices(v).iter().map(|&u| t.weight(u)).sum();
                proptest::prop_assert_eq!(sum, t.subtree_weight(v));
                proptest::prop_assert_eq!(t.subtree_vertices(v).len(), t.subtree_size(v));
            }
            let (vs, es) = t.to_specs();
            let again = RootedTree::build(vs, es, t.id(t.root())).unwrap();
            for v in 0..n {
                proptest::prop_assert_eq!(again.children(v), t.children(v));
                proptest::prop_assert_eq!(again.subtree_weight(v), t.subtree_weight(v));
                proptest::prop_assert_eq!(again.parent_edge_cost(v), t.parent_edge_cost(v));
            }
        }
    }
}
