//! End-to-end runs of the `cubic-shadow` binary.

use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cubic-shadow")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}");
    serde_json::from_str(&stdout).expect("valid JSON")
}

#[test]
fn lift_examples() {
    let v = run_json(&["lift", "--lattice", "2Z+Z", "--w", "10"]);
    assert_eq!(v["v"], json!(["1", "20", "200"]));
    assert_eq!(v["residual"], json!("1/10"));
    assert_eq!(v["c"], json!("1/100"));
    assert_eq!(v["lifted_dual_gram"], json!([["401", "-10"], ["-10", "101"]]));

    let v = run_json(&["lift", "--lattice", "5_1", "--w", "10"]);
    assert_eq!(v["v"], json!(["1", "17", "209"]));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id2.json");
    std::fs::write(&path, r#"{"dim": 2, "entries": [[1, 0], [0, "1"]]}"#).unwrap();
    let v = run_json(&["lift", "--gram-file", path.to_str().unwrap(), "--w", "1"]);
    assert_eq!(v["v"], json!(["1", "1", "1"]));
}

#[test]
fn lift_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"dim": 2, "entries": [[1, 2], [2, 1]]}"#).unwrap();
    let (code, _, stderr) = run(&["lift", "--gram-file", path.to_str().unwrap(), "--w", "3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("positive definite"));
    assert_eq!(run(&["lift", "--lattice", "nope", "--w", "3"]).0, 2);
    assert_eq!(run(&["lift", "--lattice", "A2", "--w", "0"]).0, 2);
    let (code, _, _) = run(&["lift", "--lattice", "A2", "--w", "3", "--mode", "sideways"]);
    assert_eq!(code, 2);
}

#[test]
fn gram_output_round_trips_through_a_file() {
    let v = run_json(&["catalog", "--lattice", "D3*"]);
    assert_eq!(v["det"], json!("1/4"));
    let doc = json!({ "dim": v["dim"], "entries": v["entries"] });
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d3star.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let a = run_json(&["lift", "--gram-file", path.to_str().unwrap(), "--w", "2"]);
    let b = run_json(&["lift", "--lattice", "D3*", "--w", "2"]);
    assert_eq!(a["v"], b["v"]);
    assert_eq!(a["v"], json!(["1", "2", "4", "7"]));
}

#[test]
fn family_examples() {
    assert_eq!(run_json(&["family", "--name", "fcc", "--t", "1"])["v"], json!(["1", "2", "4", "7"]));
    assert_eq!(run_json(&["family", "--name", "fcc-fast", "--w", "2"])["v"], json!(["1", "7", "11", "38"]));
    let leech = run_json(&["family", "--name", "leech", "--w", "1"]);
    assert_eq!(leech["v"].as_array().unwrap().len(), 25);
    assert_eq!(leech["v"][1], json!("8"));
    let big = run_json(&["family", "--name", "leech", "--w", "4"]);
    let last = big["v"][24].as_str().unwrap();
    assert!(last.len() > 19, "entries beyond 64 bits stay exact strings");
    let with = run_json(&["family", "--name", "fcc-fast", "--w", "8", "--with-gram"]);
    assert_eq!(with["residual"]["exact"], json!("1/32"));
    assert_eq!(run(&["family", "--name", "e8", "--w", "3"]).0, 2);
    assert_eq!(run(&["family", "--name", "dm", "--t", "2"]).0, 2);
}

#[test]
fn converge_tables() {
    let v = run_json(&["converge", "--lattice", "2Z+Z", "--w-list", "10,20,40,80"]);
    let res: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["residual"].as_str().unwrap()).collect();
    assert_eq!(res, vec!["1/10", "1/20", "1/40", "1/80"]);

    let one = run_json(&["converge", "--lattice", "2Z+Z", "--w-list", "10"]);
    assert_eq!(one["rows"].as_array().unwrap().len(), 1);
    assert!(one["rows"][0]["slope"].is_null());

    let (code, csv, _) = run(&["converge", "--name", "fcc-fast", "--w-list", "4,8,16,32", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "w,norm,residual,residual_float,slope");
    assert_eq!(lines.len(), 5);
    let slope: f64 = lines[4].rsplit(',').next().unwrap().parse().unwrap();
    assert!((-0.75..=-0.58).contains(&slope), "{slope}");

    let raw = run_json(&["converge", "--lattice", "5_1", "--w-list", "5,50"]);
    let red = run_json(&["converge", "--lattice", "5_1", "--w-list", "5,50", "--use-reduction"]);
    for i in 0..2 {
        assert!(red["rows"][i]["residual_float"].as_f64() <= raw["rows"][i]["residual_float"].as_f64());
    }
    assert_eq!(run(&["converge", "--lattice", "A2", "--w-list", "5,3"]).0, 2);
}

#[test]
fn density_examples() {
    let v = run_json(&["density", "--v", "1,1,1"]);
    let c = v["primal"]["center_density"].as_f64().unwrap();
    assert!((c - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-12);
    let v = run_json(&["density", "--v", "1,0,0,0"]);
    assert!((v["primal"]["center_density"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    let v = run_json(&["density", "--name", "fcc", "--t", "16", "--dual"]);
    let c = v["primal"]["center_density"].as_f64().unwrap();
    assert!((c - 2f64.powf(-2.5)).abs() / 2f64.powf(-2.5) < 0.02);
    assert!(v["dual"]["min_norm"].is_string());
    let (code, _, stderr) = run(&["density", "--name", "leech", "--w", "1"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("enumeration refused"));
}

#[test]
fn strut_tables() {
    let v = run_json(&["strut", "--dim", "3", "--m-max", "3"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.last().unwrap()["v"], json!(["1", "1", "1"]));
    let v = run_json(&["strut", "--dim", "3", "--m-min", "2", "--m-max", "2", "--top-k", "3"]);
    assert_eq!(v["rows"][0]["v"], json!(["1", "1", "0"]));
    let v = run_json(&["strut", "--dim", "4", "--m-min", "70", "--m-max", "70", "--top-k", "10"]);
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["v"] == json!(["1", "7", "4", "2"])));
    let (_, a, _) = run(&["strut", "--dim", "4", "--m-max", "120", "--format", "csv", "--workers", "1"]);
    let (_, b, _) = run(&["strut", "--dim", "4", "--m-max", "120", "--format", "csv", "--workers", "5"]);
    assert_eq!(a, b);
    let (code, _, stderr) = run(&["strut", "--dim", "5", "--m-max", "100000000"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("candidates"));
}

#[test]
fn prop1_and_catalog() {
    let v = run_json(&["prop1", "--bound", "50"]);
    assert_eq!(v["counterexamples"], json!([]));
    assert_eq!(v["checked"], json!(2601));
    let v = run_json(&["prop1", "--bound", "2", "--target", "a2"]);
    assert!(v["counterexamples"].as_array().unwrap().contains(&json!([1, 1])));
    let cat = run_json(&["catalog"]);
    let names: Vec<&str> = cat.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for n in ["A2", "D3", "D3*", "D4", "E8", "Leech", "5_1", "2Z+Z"] {
        assert!(names.contains(&n), "{n}");
    }
    assert_eq!(run_json(&["catalog", "--lattice", "Z7"])["dim"], json!(7));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["lift", "--w", "2"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}
