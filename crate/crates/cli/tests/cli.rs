use std::process::{Command, Output};

use serde_json::Value;

fn symtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symtc")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ring_rejects_m_zero() {
    assert_eq!(symtc(&["ring", "--m", "0"]).status.code(), Some(2));
}

#[test]
fn ring_m3_dims() {
    let out = symtc(&["ring", "--m", "3"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["tool"], "symtc");
    assert_eq!(doc["result"]["dims"], serde_json::json!([1, 2, 3, 3, 2, 1, 0]));
}

#[test]
fn large_m_needs_flag() {
    assert_eq!(symtc(&["bounds", "--range", "1..13"]).status.code(), Some(2));
}

#[test]
fn coincident_plan_exits_3() {
    let out = symtc(&["plan", "--from", "1,0,0,0", "--to", "-1,0,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn plan_reports_a_symmetric_path() {
    let out = symtc(&["plan", "--from", "1,0,0,0", "--to", "0,0.6,0.8,0", "--samples", "5"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["result"]["path"]["samples"].as_array().unwrap().len(), 5);
    assert!(doc["result"]["endpoint_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(doc["result"]["endpoint_set_match"], true);
}

#[test]
fn plan_csv_has_header() {
    let out = symtc(&["--format", "csv", "plan", "--from", "1,0,0,0", "--to", "0,1,0,0", "--samples", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,t,q0,q1,q2,q3"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn plan_warns_on_unnormalized_input() {
    let out = symtc(&["plan", "--from", "2,0,0,0", "--to", "0,1,0,0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn mutated_golden_check_exits_4() {
    let out = symtc(&["verify-paper", "--only", "borel", "--mutate", "borel.q_table"]);
    assert_eq!(out.status.code(), Some(4));
    let doc = json(&out);
    let failed: Vec<&str> = doc["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["borel.q_table"]);
}

#[test]
fn golden_checks_pass() {
    let out = symtc(&["verify-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_planner_rejects_zero_trials() {
    assert_eq!(symtc(&["verify-planner", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn verify_planner_is_deterministic() {
    let args = ["verify-planner", "--trials", "2000", "--seed", "7"];
    let (a, b) = (symtc(&args), symtc(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn integral_check_passes_bundled_data() {
    let out = symtc(&["integral-check"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["verdict"], "pass");
}

#[test]
fn ring_csv_lists_degrees() {
    let out = symtc(&["--format", "csv", "ring", "--m", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("degree,dim,basis"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("symtc-out-{}.json", std::process::id()));
    let out = symtc(&["--out", path.to_str().unwrap(), "bounds", "--range", "3"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["result"]["rows"][0]["f2_bound"], 4);
}
