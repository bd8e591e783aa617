//! End-to-end runs of the `antiramsey` binary: exit codes, file formats and
//! the construct/detect round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_antiramsey"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn formula_text_and_json() {
    let out = run(&["formula", "--forest", "P(4,4)", "--n", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("lower=38"));

    let out = run(&["formula", "--forest", "M(3)", "--n", "10", "--ex", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lower"], 17);
    assert_eq!(v["status"], "Exact");
}

#[test]
fn bad_input_exits_2() {
    let out = run(&["formula", "--forest", "DS(1,2)", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["formula", "--forest", "P(4,4)", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_then_detect_round_trip() {
    let dir = std::env::temp_dir();
    let path: PathBuf = dir.join("antiramsey-cli-test-coloring.txt");
    let out = run(&[
        "construct",
        "--forest",
        "P(4,4)",
        "--n",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("antiramsey-coloring v1\nn 12\n"));
    assert_eq!(text.lines().count(), 2 + 12 * 11 / 2);
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{}.cert.json", path.display())).unwrap())
            .unwrap();
    assert_eq!(cert["forest"], "P(4,4)");

    // no rainbow copy of the target, exit 1 and NONE
    let out = run(&["detect", "--coloring", path.to_str().unwrap(), "--forest", "P(4,4)"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "NONE");

    // but a smaller pattern is present, exit 0 with a witness edge list
    let out = run(&["detect", "--coloring", path.to_str().unwrap(), "--forest", "P(3,3)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);

    let out = run(&["detect", "--coloring", "/nonexistent-path", "--forest", "P(3,3)"]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::remove_file(&path).ok();
    std::fs::remove_file(format!("{}.cert.json", path.display())).ok();
}

#[test]
fn verify_writes_reports_and_exits_0() {
    let dir = std::env::temp_dir();
    let base: PathBuf = dir.join("antiramsey-cli-test-report");
    let out = run(&[
        "verify",
        "--forest",
        "P(4,4)",
        "--n-from",
        "8",
        "--n-to",
        "11",
        "--mode",
        "both",
        "--out",
        base.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(base.with_extension("csv")).unwrap();
    assert!(csv.starts_with("family,n,formula_lower,"));
    assert_eq!(csv.lines().count(), 1 + 4);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(base.with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(json["rows"][0]["status"], "PASS");
    std::fs::remove_file(base.with_extension("csv")).ok();
    std::fs::remove_file(base.with_extension("json")).ok();
}

#[test]
fn oracle_exits_by_status() {
    let out = run(&["oracle", "--forest", "M(2)", "--n", "5", "--budget-sec", "30"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 1);
    assert_eq!(v["status"], "Exact");

    let out = run(&["oracle", "--n", "6", "--caps", "2,2,2,2,2,2", "--budget-sec", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 4);

    let out = run(&["oracle", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spider_scan_cli() {
    let out = run(&["spider", "--max-legs", "2", "--max-len", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}
