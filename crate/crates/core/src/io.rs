//! Reading instances from JSON and edge-list CSV, and writing trees,
//! witnesses and DOT renderings.

use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{natural_cmp, WeightedGraph};
use crate::ratio::{format_rational, parse_rational};
use crate::reconstruct::Subpartition;
use crate::tree::RootedTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `.csv` means CSV; anything else is read as JSON.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// A parsed input: a graph plus the root named in the file, if any.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: WeightedGraph,
    pub root: Option<String>,
}

impl Instance {
    /// The graph as a rooted tree; the root defaults to the heaviest vertex.
    pub fn into_tree(&self) -> Result<RootedTree> {
        let g = &self.graph;
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !g.is_tree() {
            return Err(Error::NotATree(format!(
                "{} vertices, {} edges, {} components",
                g.len(),
                g.edges().len(),
                g.components(&[]).len()
            )));
        }
        let vs = g.sorted_vertices();
        let root = match &self.root {
            Some(id) => g.index_of(id).ok_or_else(|| Error::UnknownVertexId(id.clone()))?,
            None => g.heaviest(&vs),
        };
        let edges: Vec<usize> = (0..g.edges().len()).collect();
        g.induced_tree(&vs, &edges, root, true, None)
    }
}

pub fn load_instance(path: &Path, format: Option<Format>) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

pub fn parse_instance(text: &str, format: Format) -> Result<Instance> {
    match format {
        Format::Json => parse_json(text),
        Format::Csv => parse_csv(text).map(|graph| Instance { graph, root: None }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    root: Option<Value>,
    vertices: Vec<VertexDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: Value,
    weight: Option<Value>,
    potential: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    u: Value,
    v: Value,
    cost: Value,
    distance: Option<Value>,
}

fn id_text(value: &Value, at: &str) -> Result<String> {
    match value {
        Value::String(s) if !s.is_empty() => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::parse(at, "expected a nonempty string or number id")),
    }
}

fn number(value: &Value, at: &str) -> Result<BigRational> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::parse(at, "expected a number or a \"p/q\" string")),
    };
    parse_rational(&text).ok_or_else(|| Error::parse(at, format!("`{text}` is not an exact rational")))
}

fn parse_json(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for (i, v) in doc.vertices.iter().enumerate() {
        let at = |field: &str| format!("vertices[{i}].{field}");
        let id = id_text(&v.id, &at("id"))?;
        let weight = match &v.weight {
            Some(w) => number(w, &at("weight"))?,
            None => BigRational::one(),
        };
        let potential = match &v.potential {
            Some(p) => number(p, &at("potential"))?,
            None => BigRational::from_integer(0.into()),
        };
        vertices.push((id, weight, potential));
    }
    vertices.sort_by(|a, b| natural_cmp(&a.0, &b.0));
    let mut graph = WeightedGraph::new();
    for (id, weight, potential) in vertices {
        graph.add_vertex_with_potential(id, weight, potential)?;
    }
    for (i, e) in doc.edges.iter().enumerate() {
        let at = |field: &str| format!("edges[{i}].{field}");
        let u = id_text(&e.u, &at("u"))?;
        let v = id_text(&e.v, &at("v"))?;
        let cost = number(&e.cost, &at("cost"))?;
        if !cost.is_positive() {
            return Err(Error::parse(at("cost"), "edge cost must be positive"));
        }
        let distance = e.distance.as_ref().map(|d| number(d, &at("distance"))).transpose()?;
        graph.add_edge_with_distance(&u, &v, cost, distance)?;
    }
    let root = doc.root.as_ref().map(|r| id_text(r, "root")).transpose()?;
    Ok(Instance { graph, root })
}

/// Edge list with a header row `u,v,cost[,distance]`; every vertex gets
/// weight 1.
fn parse_csv(text: &str) -> Result<WeightedGraph> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::parse("line 1", e.to_string()))?
        .clone();
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (cu, cv, cc) = match (column("u"), column("v"), column("cost")) {
        (Some(u), Some(v), Some(c)) => (u, v, c),
        _ => return Err(Error::parse("line 1", "header must name the columns u, v and cost")),
    };
    let cd = column("distance");
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::parse(format!("line {line}"), e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| -> Result<String> {
            match record.get(i) {
                Some(s) if !s.is_empty() => Ok(s.to_string()),
                _ => Err(Error::parse(format!("line {line}, field {name}"), "missing value")),
            }
        };
        let rational = |i: usize, name: &str| -> Result<BigRational> {
            let s = field(i, name)?;
            parse_rational(&s)
                .ok_or_else(|| Error::parse(format!("line {line}, field {name}"), format!("`{s}` is not an exact rational")))
        };
        let u = field(cu, "u")?;
        let v = field(cv, "v")?;
        let cost = rational(cc, "cost")?;
        if !cost.is_positive() {
            return Err(Error::parse(format!("line {line}, field cost"), "edge cost must be positive"));
        }
        let distance = match cd {
            Some(i) if record.get(i).is_some_and(|s| !s.is_empty()) => Some(rational(i, "distance")?),
            _ => None,
        };
        rows.push((line, u, v, cost, distance));
    }
    let mut ids: Vec<&String> = rows.iter().flat_map(|r| [&r.1, &r.2]).collect();
    ids.sort_by(|a, b| natural_cmp(a, b));
    ids.dedup();
    let mut graph = WeightedGraph::new();
    for id in ids {
        graph.add_vertex(id.clone(), 1)?;
    }
    for (line, u, v, cost, distance) in &rows {
        graph
            .add_edge_with_distance(u, v, cost.clone(), distance.clone())
            .map_err(|e| Error::parse(format!("line {line}"), e.to_string()))?;
    }
    Ok(graph)
}

#[derive(Serialize)]
struct TreeDoc<'a> {
    root: &'a str,
    vertices: Vec<Value>,
    edges: Vec<Value>,
}

/// Tree JSON that [`parse_instance`] reads back into the same tree.
pub fn tree_to_json(tree: &RootedTree) -> String {
    let (vs, es) = tree.to_specs();
    let doc = TreeDoc {
        root: tree.id(tree.root()),
        vertices: vs
            .iter()
            .map(|v| json!({"id": v.id, "weight": format_rational(&v.weight), "potential": format_rational(&v.potential)}))
            .collect(),
        edges: es
            .iter()
            .map(|e| json!({"u": e.u, "v": e.v, "cost": format_rational(&e.cost)}))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("tree document serializes")
}

/// `{"parts", "residue", "expansions", "max_expansion"}` with rationals as
/// `"p/q"` strings.
pub fn witness_json(sub: &Subpartition) -> Value {
    json!({
        "parts": sub.parts,
        "residue": sub.residue,
        "expansions": sub.expansions.iter().map(format_rational).collect::<Vec<_>>(),
        "max_expansion": format_rational(&sub.max_expansion),
    })
}

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT drawing: one fill colour per part, residue vertices as
/// grey boxes. `edges` are `(u, v, cost)` by id.
pub fn to_dot<'a>(ids: impl IntoIterator<Item = &'a str>, edges: &[(String, String, BigRational)], sub: Option<&Subpartition>) -> String {
    let mut out = String::from("graph treecut {\n  node [style=filled, fillcolor=white];\n");
    let part_of = |id: &str| sub.and_then(|s| s.parts.iter().position(|p| p.iter().any(|x| x == id)));
    let in_residue = |id: &str| sub.is_some_and(|s| s.residue.iter().any(|x| x == id));
    for id in ids {
        let attrs = match (part_of(id), in_residue(id)) {
            (Some(p), _) => format!(" [fillcolor={}, shape=ellipse]", quote(PALETTE[p % PALETTE.len()])),
            (None, true) => " [fillcolor=\"#dddddd\", shape=box, style=\"filled,dashed\"]".to_string(),
            _ => String::new(),
        };
        let _ = writeln!(out, "  {}{attrs};", quote(id));
    }
    for (u, v, c) in edges {
        let _ = writeln!(out, "  {} -- {} [label={}];", quote(u), quote(v), quote(&format_rational(c)));
    }
    out.push_str("}\n");
    out
}

pub fn tree_edges(tree: &RootedTree) -> Vec<(String, String, BigRational)> {
    let mut order: Vec<usize> = (0..tree.len()).collect();
    order.sort_by(|&a, &b| natural_cmp(tree.id(a), tree.id(b)));
    order
        .into_iter()
        .filter_map(|v| tree.parent(v).map(|p| (tree.id(p).to_string(), tree.id(v).to_string(), tree.parent_edge_cost(v))))
        .collect()
}

pub fn graph_edges(graph: &WeightedGraph) -> Vec<(String, String, BigRational)> {
    graph
        .edges()
        .iter()
        .map(|e| (graph.id(e.u).to_string(), graph.id(e.v).to_string(), e.cost.clone()))
        .collect()
}
