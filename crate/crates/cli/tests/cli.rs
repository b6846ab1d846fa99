//! End-to-end runs of the `spectra` binary.

use std::process::{Command, Output};

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = spectra(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

#[test]
fn subgroup_count() {
    let (code, v) = json(&["subgroups", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(v["command"].as_str().unwrap().contains("subgroups --n 4"));
    assert_eq!(v["results"]["count"], 7);
    for key in ["inputs", "checks", "seed", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn monodromy_at_infinity() {
    let (code, v) = json(&["sw1", "monodromy", "--loop", "inf"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["matrix"], serde_json::json!([[-1, 2], [0, -1]]));
}

#[test]
fn failing_check_exits_with_one() {
    let out = spectra(&["pn", "--n", "7", "--verify"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
}

#[test]
fn errors_exit_with_two() {
    let out = spectra(&["xk", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(spectra(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(spectra(&["vacua", "--n", "4", "--q", "0.1"]).status.code(), Some(2));
}

#[test]
fn suite_json_is_deterministic() {
    let a = spectra(&["--format", "json", "--seed", "3", "suite", "all"]);
    let b = spectra(&["--format", "json", "--seed", "3", "suite", "all"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}
