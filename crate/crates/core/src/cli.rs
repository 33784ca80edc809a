//! Command-line front end. Every command prints one JSON document on
//! stdout; errors go to stderr.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::natural_cmp;
use crate::io::{graph_edges, load_instance, to_dot, tree_edges, witness_json, Format, Instance};
use crate::ratio::{format_rational, parse_rational};
use crate::reconstruct::{reconstruct_subpartition, Subpartition};
use crate::search::{
    decide_forest, decide_semisupervised, k_max_forest, min_xi, min_xi_forest, min_xi_semisupervised, Forest,
    OptimizationResult, SearchMode,
};
use crate::solver::{decide_cmsc, ProblemSpec};
use crate::tree::RootedTree;

#[derive(Parser, Debug)]
#[command(name = "treecut", version, about = "Sparsest connected k-way cuts with outliers on weighted trees")]
pub struct Cli {
    /// Worker threads for independent per-component runs.
    #[arg(long, global = true, env = "TREECUT_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Is there a subpartition with every expansion at most XI?
    Decide(DecideArgs),
    /// Smallest XI for which `decide` answers yes.
    Optimize(OptimizeArgs),
    /// Largest part count feasible at XI.
    Kmax(KmaxArgs),
    /// Spanning tree of a similarity graph, then `optimize` on it.
    Cluster(ClusterArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Tree or graph as JSON, or an edge list as CSV (`u,v,cost[,distance]`).
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; guessed from the file extension when absent.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum InputFormat {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ConstraintArgs {
    /// Number of parts.
    #[arg(long)]
    pub parts: usize,
    /// Maximum number of uncovered vertices.
    #[arg(long)]
    pub outliers: usize,
    /// Add vertex potentials to each part's cut cost.
    #[arg(long)]
    pub potentials: bool,
    /// Vertices that must not be left uncovered (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub forbid: Vec<String>,
    /// Vertices that must be left uncovered (comma separated); the rest of
    /// the graph must be a forest.
    #[arg(long = "require-outlier", value_delimiter = ',')]
    pub require_outlier: Vec<String>,
}

#[derive(Args, Debug)]
pub struct DecideArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    /// Expansion bound, e.g. `1/3` or `0.25`.
    #[arg(long, value_parser = rational_arg)]
    pub xi: BigRational,
    /// Write a DOT drawing of the witness to this file.
    #[arg(long)]
    pub emit_dot: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Mode {
    Exact,
    Tol,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Bracket width for `--mode tol`.
    #[arg(long, value_parser = rational_arg)]
    pub tol: Option<BigRational>,
}

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub constraints: ConstraintArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub emit_dot: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct KmaxArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_parser = rational_arg)]
    pub xi: BigRational,
    #[arg(long)]
    pub outliers: usize,
    #[arg(long)]
    pub potentials: bool,
    #[arg(long, value_delimiter = ',')]
    pub forbid: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub parts: usize,
    #[arg(long)]
    pub outliers: usize,
    #[arg(long)]
    pub potentials: bool,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub emit_dot: Option<PathBuf>,
}

fn rational_arg(s: &str) -> std::result::Result<BigRational, String> {
    match parse_rational(s) {
        Some(q) if q >= BigRational::from_integer(0.into()) => Ok(q),
        Some(_) => Err("must be nonnegative".into()),
        None => Err(format!("`{s}` is not a number or p/q fraction")),
    }
}

/// Result of one command: the JSON document and the exit code.
pub struct Report {
    pub body: Value,
    pub success: bool,
}

pub fn run(cli: Cli) -> Result<Report> {
    if cli.threads == 0 {
        return Err(Error::InvalidSpec("--threads must be at least 1".into()));
    }
    // a second initialization (e.g. in tests) keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    match cli.command {
        Command::Decide(a) => run_decide(a),
        Command::Optimize(a) => run_optimize(a),
        Command::Kmax(a) => run_kmax(a),
        Command::Cluster(a) => run_cluster(a),
    }
}

/// Parses `args` (including the program name) and runs; the exit code is 0
/// on success, 1 for a negative answer, 2 for any error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report.body).expect("report serializes");
            // a closed pipe downstream is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if report.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load(args: &InputArgs) -> Result<Instance> {
    let format = args.format.map(|f| match f {
        InputFormat::Json => Format::Json,
        InputFormat::Csv => Format::Csv,
    });
    load_instance(&args.input, format)
}

fn spec_of(c: &ConstraintArgs, xi: BigRational) -> ProblemSpec {
    ProblemSpec::new(xi, c.parts, c.outliers)
        .with_potentials(c.potentials)
        .with_forbidden(c.forbid.iter().cloned())
}

fn mode_of(s: &SearchArgs) -> Result<SearchMode> {
    match (s.mode, &s.tol) {
        (Mode::Exact, None) => Ok(SearchMode::Exact),
        (Mode::Exact, Some(_)) => Err(Error::InvalidSpec("--tol needs --mode tol".into())),
        (Mode::Tol, Some(t)) => Ok(SearchMode::Tolerance(t.clone())),
        (Mode::Tol, None) => Err(Error::InvalidSpec("--mode tol needs --tol".into())),
    }
}

/// How an instance is solved: a single tree, a forest of several trees, or
/// a general graph with prescribed outliers.
enum Shape {
    Tree(Box<RootedTree>),
    Forest(Forest),
    Graph(BTreeSet<String>),
}

fn shape(inst: &Instance, required: &[String]) -> Result<Shape> {
    let g = &inst.graph;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !required.is_empty() {
        return Ok(Shape::Graph(required.iter().cloned().collect()));
    }
    if g.is_tree() {
        return inst.into_tree().map(|t| Shape::Tree(Box::new(t)));
    }
    if !g.is_forest_without(&vec![false; g.len()]) {
        return Err(Error::NotATree(
            "input has a cycle; use `cluster` for general graphs or --require-outlier".into(),
        ));
    }
    let edges: Vec<usize> = (0..g.edges().len()).collect();
    let trees = g
        .components(&[])
        .into_iter()
        .map(|comp| {
            let root = match &inst.root {
                Some(r) if comp.iter().any(|&v| g.id(v) == r) => g.index_of(r).unwrap(),
                _ => g.heaviest(&comp),
            };
            let inside: Vec<usize> = edges.iter().copied().filter(|&i| comp.contains(&g.edges()[i].u)).collect();
            let mut comp = comp;
            comp.sort_by(|&x, &y| natural_cmp(g.id(x), g.id(y)));
            g.induced_tree(&comp, &inside, root, true, None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Shape::Forest(Forest::new(trees)?))
}

fn emit_dot(
    path: &Option<PathBuf>,
    inst: &Instance,
    edges: &[(String, String, BigRational)],
    sub: Option<&Subpartition>,
) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let g = &inst.graph;
    let ids = g.sorted_vertices().into_iter().map(|v| g.id(v));
    std::fs::write(path, to_dot(ids, edges, sub)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Edges to draw: the tree's when the instance was solved as one tree.
fn drawn_edges(inst: &Instance, tree: Option<&RootedTree>) -> Vec<(String, String, BigRational)> {
    match tree {
        Some(t) => tree_edges(t),
        None => graph_edges(&inst.graph),
    }
}

fn with_witness(mut body: Value, sub: Option<&Subpartition>) -> Value {
    if let Some(s) = sub {
        body["witness"] = witness_json(s);
    }
    body
}

fn run_decide(a: DecideArgs) -> Result<Report> {
    let inst = load(&a.input)?;
    let spec = spec_of(&a.constraints, a.xi.clone());
    let (feasible, witness, tree) = match shape(&inst, &a.constraints.require_outlier)? {
        Shape::Tree(t) => {
            let (ok, tables) = decide_cmsc(&t, &spec)?;
            let w = reconstruct_subpartition(&t, &spec, &tables)?;
            (ok, w, Some(*t))
        }
        Shape::Forest(f) => {
            let d = decide_forest(&f, &spec)?;
            (d.feasible, d.witness, None)
        }
        Shape::Graph(required) => {
            let d = decide_semisupervised(&inst.graph, &required, &spec)?;
            (d.feasible, d.witness, None)
        }
    };
    emit_dot(&a.emit_dot, &inst, &drawn_edges(&inst, tree.as_ref()), witness.as_ref())?;
    Ok(Report {
        body: with_witness(json!({ "feasible": feasible }), witness.as_ref()),
        success: feasible,
    })
}

fn optimization_body(r: &OptimizationResult) -> Value {
    let mode = match &r.mode {
        SearchMode::Exact => json!("exact"),
        SearchMode::Tolerance(t) => json!({ "tol": format_rational(t) }),
    };
    with_witness(
        json!({
            "xi_star": r.xi_star.as_ref().map(format_rational),
            "probes": r.probes,
            "mode": mode,
        }),
        r.witness.as_ref(),
    )
}

fn run_optimize(a: OptimizeArgs) -> Result<Report> {
    let inst = load(&a.input)?;
    let mode = mode_of(&a.search)?;
    let spec = spec_of(&a.constraints, BigRational::from_integer(0.into()));
    let (r, tree) = match shape(&inst, &a.constraints.require_outlier)? {
        Shape::Tree(t) => (min_xi(&t, &spec, mode)?, Some(*t)),
        Shape::Forest(f) => (min_xi_forest(&f, &spec, mode)?, None),
        Shape::Graph(required) => (min_xi_semisupervised(&inst.graph, &required, &spec, mode)?, None),
    };
    emit_dot(&a.emit_dot, &inst, &drawn_edges(&inst, tree.as_ref()), r.witness.as_ref())?;
    Ok(Report {
        body: optimization_body(&r),
        success: r.xi_star.is_some(),
    })
}

fn run_kmax(a: KmaxArgs) -> Result<Report> {
    let inst = load(&a.input)?;
    let spec = ProblemSpec::new(a.xi, 1, a.outliers)
        .with_potentials(a.potentials)
        .with_forbidden(a.forbid);
    let forest = match shape(&inst, &[])? {
        Shape::Tree(t) => Forest::new(vec![*t])?,
        Shape::Forest(f) => f,
        Shape::Graph(_) => unreachable!("no required outliers"),
    };
    let k = k_max_forest(&forest, &spec)?;
    Ok(Report {
        body: json!({ "k_max": k }),
        success: true,
    })
}

fn run_cluster(a: ClusterArgs) -> Result<Report> {
    let inst = load(&a.input)?;
    let mode = mode_of(&a.search)?;
    let spec = ProblemSpec::new(0, a.parts, a.outliers).with_potentials(a.potentials);
    let (r, edges, on) = if inst.graph.is_tree() {
        // already a tree: solve it exactly as `optimize` would
        let t = inst.into_tree()?;
        (min_xi(&t, &spec, mode)?, tree_edges(&t), "spanning tree")
    } else {
        let mut trees = inst.graph.similarity_spanning_forest()?;
        if trees.len() == 1 {
            let t = trees.pop().unwrap();
            (min_xi(&t, &spec, mode)?, tree_edges(&t), "spanning tree")
        } else {
            let forest = Forest::new(trees)?;
            let edges = forest.trees().iter().flat_map(tree_edges).collect();
            (min_xi_forest(&forest, &spec, mode)?, edges, "spanning forest")
        }
    };
    emit_dot(&a.emit_dot, &inst, &edges, r.witness.as_ref())?;
    let mut body = optimization_body(&r);
    body["spanning_edges"] = edges
        .iter()
        .map(|(u, v, c)| json!([u, v, format_rational(c)]))
        .collect();
    body["expansions_measured_on"] = json!(on);
    Ok(Report {
        success: r.xi_star.is_some(),
        body,
    })
}
