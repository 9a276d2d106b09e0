use std::path::PathBuf;
use std::process::Command;

use clap::CommandFactory;
use serde_json::Value;

use topoglyph_cli::Cli;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("topoglyph").chain(args.iter().copied());
    let code = topoglyph_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    serde_json::from_str(&out).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("topoglyph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn command_paths(cmd: &clap::Command, prefix: Vec<String>, out: &mut Vec<Vec<String>>) {
    out.push(prefix.clone());
    for sub in cmd.get_subcommands() {
        let mut p = prefix.clone();
        p.push(sub.get_name().to_owned());
        command_paths(sub, p, out);
    }
}

#[test]
fn every_command_has_help() {
    let mut paths = Vec::new();
    command_paths(&Cli::command(), Vec::new(), &mut paths);
    assert!(paths.len() > 30, "only {} commands", paths.len());
    for path in paths {
        let mut args: Vec<&str> = path.iter().map(String::as_str).collect();
        args.push("--help");
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(out.contains("Usage: topoglyph"), "{args:?} printed {out}");
        assert!(err.is_empty());
    }
}

#[test]
fn version_exits_zero() {
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("topoglyph "));
}

#[test]
fn good_systems_on_four_elements() {
    let v = json(&["rotsys", "enumerate-good", "--n", "4", "--json"]);
    assert_eq!(v["count"], "8");
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn chord_table_is_csv_summing_to_double_factorial() {
    let (code, out, _) = run(&["chords", "table", "--n", "3"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("# schema_version 1"));
    assert_eq!(lines.next(), Some("n,k,count"));
    let total: u64 = lines.map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 15);

    let v = json(&["chords", "table", "--n", "4", "--json"]);
    let total: u64 = v["counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 105);
}

#[test]
fn decoded_pair_has_one_crossing() {
    let v = json(&["arr", "decode", "--order", "a1,a2,b1,b2", "--alpha", "1;0"]);
    assert_eq!(v["crossings"], 1);
    assert_eq!(v["arrangement"]["crossing_orders"]["1"], serde_json::json!([2]));
}

#[test]
fn arrangement_encode_inverts_decode() {
    let order = "a1,a2,a3,b1,b2,b3";
    let classes = json(&["arr", "enumerate", "--order", order]);
    for class in classes["classes"].as_array().unwrap() {
        let alpha = class["alpha"].as_str().unwrap();
        let v = json(&["arr", "decode", "--order", order, "--alpha", alpha]);
        assert_eq!(v["arrangement"]["crossing_orders"], class["crossing_orders"]);
        let file = scratch("arr.json", &v["arrangement"].to_string());
        let e = json(&["arr", "encode", "--arrangement", file.to_str().unwrap()]);
        assert_eq!(e["alpha"], alpha);
    }
}

#[test]
fn enumerated_classes_have_distinct_codes() {
    let v = json(&["arr", "enumerate", "--order", "a1,a2,a3,b1,b2,b3"]);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(v["count"], classes.len().to_string());
    let codes: std::collections::BTreeSet<_> = classes.iter().map(|c| c["alpha"].as_str().unwrap()).collect();
    assert_eq!(codes.len(), classes.len());
}

#[test]
fn dual_writes_svg() {
    let dir = scratch("placeholder", "");
    let svg = dir.with_file_name("dual.svg");
    let v = json(&["arr", "dual", "--order", "a1,a2,b1,b2", "--alpha", "1;0", "--svg", svg.to_str().unwrap()]);
    assert_eq!(v["checks"]["quadrangular"], true);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

const K4_CSV: &str = "# convex K4\nv,1,0,0\nv,2,1,0\nv,3,1,1\nv,4,0,1.5\ne,1,2\ne,2,3\ne,3,4\ne,4,1\ne,1,3\ne,2,4\n";

#[test]
fn drawing_pipeline_from_points() {
    let csv = scratch("k4.csv", K4_CSV);
    let v = json(&["draw", "from-points", csv.to_str().unwrap()]);
    assert_eq!(v["crossings"], 1);
    let file = scratch("k4.json", &v["drawing"].to_string());
    let f = file.to_str().unwrap();

    let valid = json(&["draw", "validate", f]);
    assert_eq!(valid["components"], serde_json::json!([{ "v": 5, "e": 8, "f": 5 }]));
    assert_eq!(json(&["draw", "iso", f, f])["isomorphic"], true);
    assert_eq!(json(&["draw", "weak-iso", f, f])["weakly_isomorphic"], true);
    assert_eq!(json(&["draw", "components", f])["components"], serde_json::json!([[1, 2, 3, 4]]));
    assert_eq!(json(&["draw", "trep", f])["crossing_pairs_recovered"], true);
    let tree = json(&["draw", "spanning-tree", f]);
    assert!(tree["node_count"].as_u64().unwrap() <= 8);
}

#[test]
fn invalid_drawing_reports_a_diagnostic() {
    let bad = r#"{"graph":{"n":3,"edges":[[1,2],[2,3]]},"vertex_rotations":{"1":[2],"2":[1,3],"3":[1]}}"#;
    let file = scratch("bad.json", bad);
    let (code, out, err) = run(&["draw", "validate", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    let e: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(e["schema_version"], 1);
    assert_eq!(e["error"]["kind"], "drawing");
    assert_eq!(e["error"]["diagnostic"]["kind"], "rotation_mismatch");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["bounds", "eval", "catalan", "--n", "5"]).0, 0);

    let (code, _, err) = run(&["rotsys", "frobnicate"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["error"]["kind"], "usage");

    let (code, _, err) = run(&["rotsys", "is-good", "--rows", "2,3;1,3;1,1"]);
    assert_eq!(code, 1);
    assert!(err.contains("\"error\""));

    let (code, _, err) = run(&["rotsys", "is-good", "--system", "/nonexistent/system.json"]);
    assert_eq!(code, 1);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["error"]["kind"], "io");

    let (code, _, err) = run(&["rotsys", "enumerate-good", "--n", "5", "--node-budget", "10"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&err).unwrap()["error"]["kind"], "budget");

    assert_eq!(run(&["--workers", "0", "chords", "count", "--n", "2", "--k", "0"]).0, 1);
}

#[test]
fn bounds_values() {
    assert_eq!(json(&["bounds", "eval", "tutte", "--m", "10"])["value"], "165297834");
    assert_eq!(json(&["bounds", "eval", "catalan", "--n", "10"])["value"], "16796");
    assert_eq!(json(&["bounds", "eval", "ackermann", "--m", "100"])["value"], 4);
    let (code, _, err) = run(&["bounds", "eval", "tutte"]);
    assert_eq!(code, 1);
    assert!(err.contains("--m"));

    let g = scratch("c4.json", r#"{"n":4,"edges":[[1,2],[2,3],[3,4],[1,4]]}"#);
    let v = json(&["bounds", "adjacent-pairs", "--graph", g.to_str().unwrap()]);
    assert_eq!(v["adjacent_pairs"], "4");
    let v = json(&["bounds", "variance", "--graph", g.to_str().unwrap(), "--q", "2"]);
    assert_eq!(v["mean"]["exact"], "2");
}

fn same_output(args: &[&str]) {
    let mut one = vec!["--workers", "1"];
    one.extend_from_slice(args);
    let mut eight = vec!["--workers", "8"];
    eight.extend_from_slice(args);
    let (a, b) = (run(&one), run(&eight));
    assert_eq!(a.0, 0, "{}", a.2);
    assert_eq!(a, b, "{args:?} differs between 1 and 8 workers");
}

#[test]
fn output_does_not_depend_on_worker_count() {
    same_output(&["rotsys", "enumerate-good", "--n", "5", "--witnesses", "10"]);
    same_output(&["rotsys", "extend", "--rows", "2,3,4;1,4,3;1,2,4;1,3,2", "--witnesses", "5"]);
    let g = scratch(
        "k6.json",
        r#"{"n":6,"edges":[[1,2],[1,3],[1,4],[1,5],[1,6],[2,3],[2,4],[2,5],[2,6],[3,4],[3,5],[3,6],[4,5],[4,6],[5,6]]}"#,
    );
    same_output(&[
        "--seed",
        "42",
        "bounds",
        "partition",
        "--graph",
        g.to_str().unwrap(),
        "--q",
        "4",
        "--pattern",
        "matching",
    ]);
}

#[test]
fn partition_is_reproducible_for_a_seed() {
    let g = scratch("k8.json", &{
        let edges: Vec<[u32; 2]> = (1..=8).flat_map(|i| (i + 1..=8).map(move |j| [i, j])).collect();
        serde_json::json!({ "n": 8, "edges": edges }).to_string()
    });
    let f = g.to_str().unwrap();
    let a = json(&["--seed", "1", "bounds", "partition", "--graph", f, "--q", "3", "--pattern", "path"]);
    let b = json(&["--seed", "1", "bounds", "partition", "--graph", f, "--q", "3", "--pattern", "path"]);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 1);
}

#[test]
fn binary_uses_environment_workers() {
    let out = Command::new(env!("CARGO_BIN_EXE_topoglyph"))
        .args(["rotsys", "convex", "--n", "4"])
        .env("TOPOGLYPH_WORKERS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["system"]["ground"], serde_json::json!([1, 2, 3, 4]));

    let out = Command::new(env!("CARGO_BIN_EXE_topoglyph"))
        .args(["rotsys", "enumerate-good", "--n", "5", "--node-budget", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
