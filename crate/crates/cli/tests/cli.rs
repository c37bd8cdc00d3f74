//! End-to-end tests of the command-line interface: exit codes, output
//! files, flag precedence, and determinism of the written artifacts.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn dirmax(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dirmax"));
    cmd.args(args);
    cmd
}

fn run(args: &[&str]) -> Output {
    dirmax(args).output().expect("binary launches")
}

fn read_report(dir: &Path) -> Value {
    let text = std::fs::read_to_string(dir.join("report.json")).expect("report.json exists");
    serde_json::from_str(&text).expect("report parses")
}

#[test]
fn validate_sequence_prints_the_window_and_exits_zero() {
    let out = run(&["validate-sequence", "--prefix", "6"]);
    assert!(out.status.success());
    let window: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(window["start"], 0);
    assert_eq!(window["angles"].as_array().unwrap().len(), 6);
}

#[test]
fn validate_sequence_rejects_an_infeasible_envelope_with_exit_one() {
    let out = run(&[
        "validate-sequence",
        "--lambda",
        "0.58",
        "--mu",
        "0.59",
        "--prefix",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("rejected"), "{stderr}");
}

#[test]
fn unknown_suite_token_is_a_usage_error() {
    let out = run(&["verify", "lemma3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flag_values_are_usage_errors() {
    let out = run(&["verify", "lemma1", "--seed", "pi"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_a_schema_valid_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "lemma1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = read_report(dir.path());
    dirmax_core::report::validate_report_json(&report).expect("schema valid");
    assert_eq!(report["command"], "verify lemma1");
    assert_eq!(report["pass"], true);
    assert_eq!(report["suites"][0]["suite"], "lemma1");
}

#[test]
fn verify_all_covers_every_suite_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "all",
        "--k-max",
        "2",
        "--samples",
        "20000",
        "--resolution",
        "128",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = read_report(dir.path());
    let suites: Vec<&str> = report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert_eq!(
        suites,
        [
            "lemma1",
            "lemma2",
            "prop2",
            "claim-mphi",
            "divergence",
            "remark",
            "weak11"
        ]
    );
}

#[test]
fn failing_campaign_exits_one_but_still_writes_the_report() {
    // The gauge matching the mass integrand keeps every ratio at 1, so
    // asserting divergence for it must fail.
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "divergence",
        "--phi",
        "loglike:1",
        "--C",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = read_report(dir.path());
    assert_eq!(report["pass"], false);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL"), "{stdout}");
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("campaign.conf");
    std::fs::write(&conf, "k_max = 3\nsamples = 20000\nseed = 99\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = run(&[
        "verify",
        "lemma2",
        "--config",
        conf.to_str().unwrap(),
        "--k-max",
        "2",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = read_report(&out_dir);
    assert_eq!(report["config"]["k_max"], 2);
    assert_eq!(report["config"]["samples"], 20000);
    assert_eq!(report["config"]["seed"], 99);
}

#[test]
fn output_directory_env_var_is_honored_when_no_flag_is_given() {
    let dir = tempfile::tempdir().unwrap();
    let out = dirmax(&["verify", "lemma1"])
        .env("DIRMAX_OUT", dir.path())
        .current_dir(dir.path())
        .output()
        .expect("binary launches");
    assert!(out.status.success());
    assert!(dir.path().join("report.json").exists());
}

#[test]
fn union_growth_table_has_headers_and_full_precision_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "verify",
        "lemma2",
        "--k-max",
        "2",
        "--samples",
        "20000",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("table_union_growth.csv")).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("k,aspect,"));
    let first = lines.next().unwrap();
    let cells: Vec<&str> = first.split(',').collect();
    assert_eq!(cells.len(), header.split(',').count());
    for cell in cells {
        let value: f64 = cell.parse().expect("numeric cell");
        assert!(value.is_finite());
        assert!(cell.contains('e'), "full precision format: {cell}");
    }
}

#[test]
fn repeated_runs_write_identical_bytes() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "verify",
            "lemma2",
            "--k-max",
            "2",
            "--samples",
            "20000",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    for name in ["report.json", "table_union_growth.csv"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
}

#[test]
fn blowup_table_supports_the_growth_free_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "blowup-table",
        "--remark",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("table_blowup_growth_free.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7, "header plus six levels");
}

#[test]
fn figures_are_written_and_stable() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&["figures", "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success());
    }
    for name in ["fig1.svg", "fig2.svg"] {
        let a = std::fs::read(dir_a.path().join(name)).unwrap();
        let b = std::fs::read(dir_b.path().join(name)).unwrap();
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name} differs between runs");
    }
}
