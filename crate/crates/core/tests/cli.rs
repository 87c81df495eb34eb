use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sliceforge::series::SliceSeries;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sliceforge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write_series(dir: &Path, name: &str, f: &SliceSeries) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(f).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_clifford_passes() {
    let out = run(&["verify", "--suite", "clifford", "--n", "2", "--trials", "500", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["reports"].as_array().unwrap().len() >= 4);
}

#[test]
fn verify_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["verify", "--suite", "operators", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "operators");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn estimate_recovers_exponential_type() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_series(dir.path(), "exp.json", &SliceSeries::exp_truncated(1, 2.0, 200));
    let out = run(&["estimate", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let implied = v["implied_type"].as_f64().unwrap();
    let growth = v["growth_type"].as_f64().unwrap();
    assert!((implied / 2.0 - 1.0).abs() < 0.1, "{v}");
    assert!((growth / 2.0 - 1.0).abs() < 0.1, "{v}");
}

#[test]
fn estimate_gives_zero_type_for_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_series(dir.path(), "poly.json", &SliceSeries::from_real(1, &[1.0, 2.0, -3.0]).unwrap());
    let out = run(&["estimate", "--input", &input]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["implied_type"].as_f64(), Some(0.0));
    assert_eq!(v["growth_type"].as_f64(), Some(0.0));
}

#[test]
fn estimate_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["estimate", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["estimate", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn extract_translation_matches_closed_form() {
    let out = run(&["extract", "--op", "translate", "--a", "0.5", "--L", "8", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["identity_check"]["pass"], Value::Bool(true));
    let coeffs = v["operator"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 9);
}

#[test]
fn extract_writes_operator_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.json");
    let out = run(&["extract", "--op", "derivative", "--L", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let op: sliceforge::operators::InfOrderOperator =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(op.len_l(), 5);
}

#[test]
fn superosc_csv_is_decreasing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("table.csv");
    let out = run(&["superosc", "--a", "2", "--t", "0.3", "--n", "5,10,20,40", "--real-only", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,t,B,d_n"));
    let d: Vec<f64> = lines.map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(d.len(), 4);
    assert!(d.windows(2).all(|p| p[1] < p[0]), "{d:?}");
}

#[test]
fn superosc_boundary_needs_flag() {
    assert_eq!(run(&["superosc", "--a", "1"]).status.code(), Some(2));
    assert_eq!(run(&["superosc", "--a", "0.5", "--allow-boundary"]).status.code(), Some(2));
    let out = run(&["superosc", "--a", "1", "--allow-boundary", "--n", "5,10", "--real-only"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    let d: Vec<f64> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(d, [0.0, 0.0]);
}
