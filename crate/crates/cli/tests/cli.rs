use std::process::{Command, Output};

use realforms::scenarios::{Report, Status};

fn realforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realforms"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn list_prints_the_registry() {
    let out = realforms(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 8);
    assert!(text.starts_with("ed-laurent-real"));

    let json = realforms(&["list", "--format", "json"]);
    let entries: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(entries.as_array().unwrap().len(), 8);
}

#[test]
fn check_all_passes() {
    let out = realforms(&["check", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("8/8 scenarios passed"));
}

#[test]
fn json_report_round_trips() {
    let out = realforms(&["--format", "json", "check", "hermitian-square-failure"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.scenarios.len(), 1);
    assert_eq!(report.scenarios[0].status, Status::Pass);
    let sum = report.scenarios[0]
        .checks
        .iter()
        .find(|c| c.label == "sum = 2j")
        .unwrap();
    assert_eq!(sum.actual, "2*j");
    assert_eq!(report.to_json().trim_end(), text.trim_end());

    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["version", "seed", "scenarios"] {
        assert!(raw.get(key).is_some(), "missing {key}");
    }
    let check = &raw["scenarios"][0]["checks"][0];
    for key in ["label", "expected", "actual", "provenance", "pass"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn runs_are_byte_identical() {
    let args = ["check", "tp-laurent", "--format", "json", "--seed", "99", "--corpus-size", "50"];
    let a = realforms(&args);
    let b = realforms(&args);
    assert_eq!(a.stdout, b.stdout);
    let report = Report::from_json(&stdout(&a)).unwrap();
    assert_eq!((report.seed, report.corpus_size), (99, 50));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["check", "--bogus"][..],
        &["check"],
        &["check", "no-such-scenario"],
        &["check", "tp-laurent", "--all"],
        &["--format", "yaml", "list"],
        &["check", "--all", "--seed", "x"],
    ] {
        assert_eq!(realforms(args).status.code(), Some(2), "{args:?}");
    }
}
