use std::process::{Command, Output};

use qsum_cli::report::Report;
use serde_json::Value;

fn qsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsum"))
        .args(args)
        .env_remove("QSUM_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn without_times(json: &str) -> String {
    let mut v: Value = serde_json::from_str(json).unwrap();
    for r in v["records"].as_array_mut().unwrap() {
        r["wall_time_ms"] = Value::from(0.0);
    }
    v.to_string()
}

#[test]
fn compute_examples() {
    let o = qsum(&["compute", "S", "--n", "1,1,1", "--j", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 + q + q^2\n");
    assert_eq!(stdout(&qsum(&["compute", "alpha", "185"])), "2\n");
    assert_eq!(stdout(&qsum(&["compute", "beta", "2480"])), "1\n");
    assert_eq!(stdout(&qsum(&["compute", "gamma", "3296"])), "1\n");
    assert_eq!(stdout(&qsum(&["compute", "c", "--n", "1", "--r", "2"])), "1 + q\n");
    assert_eq!(stdout(&qsum(&["compute", "qbinom", "--n", "4", "--k", "2"])), "1 + q + 2*q^2 + q^3 + q^4\n");
    assert_eq!(stdout(&qsum(&["compute", "calkin", "--n", "3", "--m", "3"])), "84\n");
    let j = stdout(&qsum(&["compute", "t", "--n", "1", "--j", "1", "--r", "2", "--format", "json"]));
    let v: Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["object"], "t");
    assert!(v["value"].is_array());
}

#[test]
fn search_examples() {
    assert_eq!(stdout(&qsum(&["search", "alpha", "4", "--limit", "100000"])), "1640\n");
    assert_eq!(stdout(&qsum(&["search", "beta", "4", "--limit", "1000"])), "400\n");
    assert_eq!(stdout(&qsum(&["search", "gamma", "4", "--limit", "200000000"])), "97110800\n");
    assert_eq!(stdout(&qsum(&["search", "alpha", "4", "--limit", "1000"])), "none\n");
    assert_eq!(stdout(&qsum(&["search", "beta", "4", "--limit", "1000", "--brute"])), "400\n");
}

#[test]
fn verify_examples_exit_zero() {
    for args in [
        &["verify", "thm1", "--m", "3..4", "--n", "1..3"][..],
        &["verify", "conj54", "--n", "1..40", "--r-window", "6"],
        &["verify", "qdixon", "--n", "1..6"],
        &["verify", "andrews", "--m", "1", "--exp", "-1..1"],
    ] {
        let o = qsum(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).contains("0 counterexamples"));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "nope"][..],
        &["verify", "thm1", "--n", "4..1"],
        &["verify", "thm1", "--m", "2..3"],
        &["verify", "qdixon", "--explore"],
        &["compute", "S", "--n", "1,2"],
        &["compute", "alpha", "x"],
        &["search", "delta", "1"],
        &["explore-gcd", "--family", "class7"],
    ] {
        let o = qsum(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn json_report_round_trips_and_is_deterministic() {
    let args = ["verify", "andrews", "--m", "1", "--big-n", "0..2", "--format", "json", "--workers", "2"];
    let first = stdout(&qsum(&args));
    let second = stdout(&qsum(&args));
    assert_eq!(without_times(&first), without_times(&second));
    let report: Report = serde_json::from_str(&first).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", first);
    assert_eq!(report.summary.total, report.records.len());
    assert_eq!(report.config.options["workers"], "2");
    assert!(report.records.iter().any(|r| r.status() == "skipped"));
}

#[test]
fn worker_count_does_not_change_records() {
    let run = |w: &str| {
        let out = stdout(&qsum(&["verify", "lemma21", "--m", "3", "--n", "1..2", "--format", "json", "--workers", w]));
        let mut v: Value = serde_json::from_str(&without_times(&out)).unwrap();
        v["config"]["options"]["workers"] = Value::Null;
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn workers_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qsum"))
        .args(["verify", "qdixon", "--n", "1..2", "--format", "json"])
        .env("QSUM_WORKERS", "1")
        .output()
        .unwrap();
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.config.options["workers"], "1");
}

#[test]
fn corrupt_cache_is_ignored_then_rewritten() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qbinom.cache");
    std::fs::write(&path, b"definitely not a cache").unwrap();
    let p = path.to_str().unwrap();
    let o = qsum(&["verify", "qdixon", "--n", "1..3", "--cache", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let o = qsum(&["verify", "qdixon", "--n", "1..3", "--cache", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).is_empty(), "{}", stderr(&o));
}

#[test]
fn explore_reports_without_failing() {
    let o = qsum(&["verify", "thm2-positivity", "--explore", "--m", "3", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("thm2-explore"));
}

#[test]
fn explore_gcd_prints_windows() {
    let o = qsum(&["explore-gcd", "--n", "1..3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 9);
    let o = qsum(&["explore-gcd", "--n", "43", "--family", "class0"]);
    assert!(stdout(&o).contains("equal=true stabilized=false"));
}
