use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use treecut::io::{load_instance, parse_instance, Format};
use treecut::ratio::parse_rational;
use treecut::{validate_subpartition, ProblemSpec, Subpartition};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn treecut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treecut"))
        .args(args)
        .env_remove("TREECUT_THREADS")
        .output()
        .expect("binary runs")
}

fn body(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn witness_of(v: &Value) -> Subpartition {
    let strings = |x: &Value| -> Vec<String> {
        x.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
    };
    let parts = v["parts"].as_array().unwrap().iter().map(strings).collect();
    let expansions = v["expansions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| parse_rational(e.as_str().unwrap()).unwrap())
        .collect();
    Subpartition::new(parts, strings(&v["residue"]), expansions)
}

fn star() -> String {
    data("star.json").to_string_lossy().into_owned()
}

#[test]
fn decide_feasible_exits_zero_with_valid_witness() {
    let out = treecut(&["decide", "--input", &star(), "--xi", "1", "--parts", "3", "--outliers", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let b = body(&out);
    assert_eq!(b["feasible"], Value::Bool(true));
    let tree = load_instance(&data("star.json"), None).unwrap().into_tree().unwrap();
    let w = witness_of(&b["witness"]);
    assert_eq!(w.parts.len(), 3);
    assert!(validate_subpartition(&tree, &ProblemSpec::new(1, 3, 1), &w).is_empty());
}

#[test]
fn decide_infeasible_exits_one() {
    let out = treecut(&["decide", "--input", &star(), "--xi", "1/2", "--parts", "3", "--outliers", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let b = body(&out);
    assert_eq!(b["feasible"], Value::Bool(false));
    assert!(b.get("witness").is_none());
}

#[test]
fn errors_exit_two() {
    let missing = treecut(&["decide", "--input", "/nonexistent.json", "--xi", "1", "--parts", "1", "--outliers", "0"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(missing.stdout.is_empty());
    let bad_xi = treecut(&["decide", "--input", &star(), "--xi", "one", "--parts", "1", "--outliers", "0"]);
    assert_eq!(bad_xi.status.code(), Some(2));
    let no_tol = treecut(&["optimize", "--input", &star(), "--parts", "1", "--outliers", "0", "--mode", "tol"]);
    assert_eq!(no_tol.status.code(), Some(2));
    let unknown = treecut(&["decide", "--input", &star(), "--xi", "1", "--parts", "1", "--outliers", "0", "--forbid", "q"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn optimize_star() {
    let out = treecut(&["optimize", "--input", &star(), "--parts", "4", "--outliers", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let b = body(&out);
    assert_eq!(b["xi_star"], "3/1");
    assert_eq!(b["mode"], "exact");
    assert_eq!(witness_of(&b["witness"]).parts.len(), 4);

    let none = treecut(&["optimize", "--input", &star(), "--parts", "5", "--outliers", "0"]);
    assert_eq!(none.status.code(), Some(1));
    assert_eq!(body(&none)["xi_star"], Value::Null);
}

#[test]
fn kmax_star() {
    let out = treecut(&["kmax", "--input", &star(), "--xi", "1", "--outliers", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(body(&out)["k_max"], 3);
}

#[test]
fn output_is_byte_stable() {
    let csv = data("similarity.csv").to_string_lossy().into_owned();
    let args = ["cluster", "--input", &csv, "--parts", "3", "--outliers", "1"];
    let first = treecut(&args);
    assert_eq!(first.status.code(), Some(0));
    for threads in ["1", "4"] {
        let mut with = args.to_vec();
        with.extend(["--threads", threads]);
        assert_eq!(treecut(&with).stdout, first.stdout);
    }
}

#[test]
fn cluster_on_tree_matches_optimize() {
    for (k, l) in [("1", "0"), ("2", "1"), ("3", "1"), ("4", "0")] {
        let opt = body(&treecut(&["optimize", "--input", &star(), "--parts", k, "--outliers", l]));
        let clu = body(&treecut(&["cluster", "--input", &star(), "--parts", k, "--outliers", l]));
        for key in ["xi_star", "witness", "probes", "mode"] {
            assert_eq!(opt.get(key), clu.get(key), "{key} at k={k} l={l}");
        }
    }
}

#[test]
fn cluster_witness_validates_on_spanning_tree() {
    let csv = data("similarity.csv");
    let out = treecut(&["cluster", "--input", &csv.to_string_lossy(), "--parts", "3", "--outliers", "1"]);
    let b = body(&out);
    assert_eq!(b["expansions_measured_on"], "spanning tree");
    let tree = load_instance(&csv, None).unwrap().graph.similarity_spanning_tree().unwrap();
    let w = witness_of(&b["witness"]);
    let xi = parse_rational(b["xi_star"].as_str().unwrap()).unwrap();
    assert!(validate_subpartition(&tree, &ProblemSpec::new(xi, 3, 1), &w).is_empty());
}

#[test]
fn forest_input_and_required_outliers() {
    let dir = tempfile::tempdir().unwrap();
    let forest = dir.path().join("forest.json");
    std::fs::write(
        &forest,
        r#"{"vertices":[{"id":"a"},{"id":"b"},{"id":"c"},{"id":"d"}],
            "edges":[{"u":"a","v":"b","cost":1},{"u":"c","v":"d","cost":1}]}"#,
    )
    .unwrap();
    let f = forest.to_string_lossy().into_owned();
    let out = treecut(&["optimize", "--input", &f, "--parts", "2", "--outliers", "0"]);
    assert_eq!(body(&out)["xi_star"], "0/1");

    let tri = dir.path().join("tri.csv");
    std::fs::write(&tri, "u,v,cost\na,b,1\nb,c,1\na,c,1\n").unwrap();
    let t = tri.to_string_lossy().into_owned();
    let cyclic = treecut(&["decide", "--input", &t, "--xi", "1", "--parts", "1", "--outliers", "1"]);
    assert_eq!(cyclic.status.code(), Some(2));
    let out = treecut(&[
        "decide", "--input", &t, "--xi", "2", "--parts", "1", "--outliers", "1", "--require-outlier", "c",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let w = witness_of(&body(&out)["witness"]);
    assert_eq!(w.residue, vec!["c".to_string()]);
    assert_eq!(w.max_expansion, parse_rational("1").unwrap());
}

#[test]
fn emit_dot_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let tri = dir.path().join("tri.csv");
    std::fs::write(&tri, "u,v,cost\na,b,1\nb,c,1\na,c,1\n").unwrap();
    let dot = dir.path().join("out.dot");
    let out = treecut(&[
        "decide", "--input", &tri.to_string_lossy(), "--xi", "2", "--parts", "1", "--outliers", "1",
        "--require-outlier", "c", "--emit-dot", &dot.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph treecut {"));
    assert!(text.contains("\"c\" [fillcolor=\"#dddddd\", shape=box"));
    assert!(text.contains("\"a\" [fillcolor=\"#1f77b4\""));
    assert_eq!(text.matches(" -- ").count(), 3);
}

#[test]
fn json_and_csv_describe_the_same_graph() {
    let json = parse_instance(
        r#"{"vertices":[{"id":"1"},{"id":"2"},{"id":"3"}],
            "edges":[{"u":"1","v":"2","cost":"1/2"},{"u":"2","v":"3","cost":2}]}"#,
        Format::Json,
    )
    .unwrap();
    let csv = parse_instance("u,v,cost\n1,2,0.5\n2,3,2\n", Format::Csv).unwrap();
    let a = json.into_tree().unwrap();
    let b = csv.into_tree().unwrap();
    assert_eq!(treecut::io::tree_to_json(&a), treecut::io::tree_to_json(&b));
    let again = parse_instance(&treecut::io::tree_to_json(&a), Format::Json).unwrap().into_tree().unwrap();
    assert_eq!(treecut::io::tree_to_json(&again), treecut::io::tree_to_json(&a));
}
