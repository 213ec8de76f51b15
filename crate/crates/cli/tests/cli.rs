use std::process::{Command, Output};

use serde_json::Value;

fn mjzero(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mjzero"))
        .args(args)
        .env_remove("MJZERO_HORIZON_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const LATE_HAND: &str = "B1B2B3B7B8B9C2C2C2D1D2D3D5D9";
const LATE_KB: &str = "(000000000)(000000000)(010110001)";

#[test]
fn analyze_tables() {
    let o = mjzero(&["analyze", "B1B2B2B3B3B4B7B7B7C1C1D4D5D6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("deficiency: 0, complete"));
    let o = mjzero(&["analyze", "B1B1B2B5B8C1C2C2C5C8D3D6D8D9"]);
    assert!(stdout(&o).contains("deficiency: 6\n"));
}

#[test]
fn analyze_errors() {
    let o = mjzero(&["analyze", "B1B2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 14 tiles"));
    let o = mjzero(&["--format", "json", "analyze", "B1B1B1B1B1C1C2C3C4C5C6C7C8C9"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["code"], "five_identical");
    let o = mjzero(&["analyze"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mjzero(&["analyze", "B1B2B2B3B3B4B7B7B7C1C1D4D5D6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn advise_recommendations() {
    let o = mjzero(&["advise", LATE_HAND, "--kb", LATE_KB, "--depth", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("* 13  D9            7/12"), "{out}");
    assert!(out.contains("recommended: discard D9"));

    let o = mjzero(&["--format", "json", "advise", "B1B1B1B8B8B9C1C5C5C5D1D5D6D7", "--kb", "(111111111)(111111111)(111111111)", "--depth", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["recommended_tile"], "B9");
    assert_eq!(v["recommended_index"], 5);
    let deltas: Vec<u64> = v["entries"].as_array().unwrap().iter().map(|e| e["delta"].as_u64().unwrap()).collect();
    assert_eq!(deltas, [0, 0, 0, 3, 3, 7, 6, 0, 0, 0, 6, 0, 0, 0]);
}

#[test]
fn advise_limits() {
    let o = mjzero(&["advise", LATE_HAND, "--depth", "9"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mjzero(&["advise", LATE_HAND, "--depth", "2", "--cap", "40"]);
    assert_eq!(o.status.code(), Some(3));
    let o = mjzero(&["advise", LATE_HAND, "--kb", "(0000)", "--depth", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_mjzero"))
        .args(["advise", LATE_HAND, "--kb", LATE_KB, "--depth", "4"])
        .env("MJZERO_HORIZON_CAP", "4")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn census_formats() {
    let o = mjzero(&["census", "--suite", "pure"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let ends: Vec<&str> = out.lines().map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(ends, ["118800", "13259", "91065", "14386", "90"]);
    let o = mjzero(&["census", "--format", "csv"]);
    assert_eq!(stdout(&o), "deficiency,count\n0,13259\n1,91065\n2,14386\n3,90\n");
    let o = mjzero(&["census", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 118800);
}

#[test]
fn oracle_depths() {
    let hand = "B1B1B2B2B2B2B3B3C1C2C8D2D2D8";
    assert_eq!(stdout(&mjzero(&["oracle", hand, "--max-depth", "3"])), "2\n");
    assert_eq!(stdout(&mjzero(&["oracle", hand, "--max-depth", "0"])), "unknown\n");
    let o = mjzero(&["oracle", "B1", "--max-depth", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_is_stable() {
    let args = ["--format", "json", "advise", LATE_HAND, "--kb", LATE_KB, "--depth", "2"];
    let a = mjzero(&args);
    let b = mjzero(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "mjzero/1");
}

#[test]
fn serve_rejects_bad_config() {
    let o = mjzero(&["serve", "--horizon-cap", "0"]);
    assert_eq!(o.status.code(), Some(3));
}
