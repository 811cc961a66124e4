//! End-to-end tests of the command-line interface: exit codes, JSON output
//! shapes and byte-identical reproducibility.

use std::process::{Command, Output};

fn moebius(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moebius"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "invalid JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn membership_inline_map() {
    let out = moebius(&["membership", "--map", "[[1,1],[0,1]]", "-b", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["in_closure"], true);
    assert_eq!(v["witness_k"], 0);
}

#[test]
fn membership_negative_det_reports_domain() {
    let out = moebius(&["membership", "--map", "[[1,2],[3,1]]", "-b", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["not_in_domain"].is_string());
}

#[test]
fn expand_hand_example() {
    let out = moebius(&["expand", "--target", "5.75", "--base", "2", "--eps", "1e-9"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["exponents"], serde_json::json!([2, 0, -1, -2]));
    assert_eq!(v["residual"], 0.0);
}

#[test]
fn expand_domain_error_exits_one() {
    let out = moebius(&["expand", "--target", "-1", "--base", "2", "--eps", "1e-9"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["error"].as_str().unwrap().contains("domain"));
}

#[test]
fn missing_required_flag_exits_two() {
    let out = moebius(&["expand", "--target", "5.75", "--base", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kronecker_ratio_verifies() {
    let out = moebius(&[
        "kronecker",
        "ratio",
        "--target",
        "5",
        "-b",
        "2",
        "-c",
        "3",
        "--tol",
        "0.05",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["rel_err"].as_f64().unwrap() <= 0.05);
    assert!(v["exact_rel_err"].as_f64().unwrap() <= 0.05 * (1.0 + 1e-9));
}

#[test]
fn kronecker_independence_finds_rational() {
    let out = moebius(&[
        "kronecker",
        "independence",
        "--theta1",
        "0.5",
        "--theta2",
        "1.4142135623730951",
        "--height",
        "10",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"]["RelationFound"]["a"], -1);
    assert_eq!(v["verdict"]["RelationFound"]["b"], 2);
}

#[test]
fn orbit_closure_rejects_far_point() {
    let out = moebius(&[
        "orbit", "closure", "--base", "2,1", "--point", "10,1", "-a", "1", "-b", "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["contains"], false);
}

#[test]
fn orbit_sample_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cells.csv");
    let out = moebius(&[
        "orbit",
        "sample",
        "--depth",
        "8",
        "--grid",
        "5",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["coverage"].as_f64().unwrap() > 0.0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("i,j,distance"));
    assert_eq!(text.lines().count(), 1 + 25);
}

#[test]
fn approximate_lft_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("t.json");
    std::fs::write(&target, r#"{"field":"real","m":[[3,1],[1,2]]}"#).unwrap();
    let csv = dir.path().join("conv.csv");
    let out = moebius(&[
        "approximate",
        "lft",
        "--system",
        "LFT3",
        "--params",
        "a=1,b=2,c=3",
        "--target",
        target.to_str().unwrap(),
        "--eps",
        "1e-4",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = stdout_json(&out);
    assert!(v["error"].as_f64().unwrap() <= 1e-4);
    assert!(!v["word"].as_str().unwrap().is_empty());
    let conv = std::fs::read_to_string(&csv).unwrap();
    assert!(conv.starts_with("depth,error"));
    assert!(conv.lines().count() > 3);
}

#[test]
fn approximate_exact_generator_word() {
    let out = moebius(&[
        "approximate",
        "lft",
        "--system",
        "LFT3",
        "--params",
        "a=1,b=2,c=3",
        "--target",
        r#"{"field":"real","m":[[1,0],[0,2]]}"#,
        "--eps",
        "1e-6",
        "--exact-check",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["word"], "S");
    assert_eq!(v["error"], 0.0);
}

#[test]
fn verify_identities_passes_and_is_deterministic() {
    let a = moebius(&["verify-identities", "--seed", "7"]);
    assert!(a.status.success());
    let b = moebius(&["verify-identities", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn verify_identities_detects_corruption() {
    let out = moebius(&["verify-identities", "--perturb", "exr.a=0.6"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(v["error"].as_str().unwrap().contains("A B A^3 B A"));
}

#[test]
fn batch_targets_report_array() {
    let out = moebius(&[
        "approximate",
        "lft",
        "--system",
        "LFT2",
        "--params",
        "a=1,b=2",
        "--target",
        r#"[{"field":"real","m":[[1,1],[0,1]]},{"field":"real","m":[[1,0],[0,2]]}]"#,
        "--eps",
        "1e-5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = stdout_json(&out);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert!(arr.iter().all(|r| r["error"].as_f64().unwrap() <= 1e-5));
}

#[test]
fn system_dump_round_trips() {
    let out = moebius(&["system", "--system", "LFT3", "--params", "a=1,b=2,c=3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["name"], "LFT3");
    assert_eq!(v["symbols"].as_array().unwrap().len(), 3);
}
