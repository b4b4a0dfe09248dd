//! End-to-end checks of the binary: subcommand output shapes and the
//! 0 / 1 / 2 exit-code contract.

use std::process::{Command, Output};

fn dedekind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dedekind"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn field_describes_gaussian() {
    let out = dedekind(&["field", "--quadratic", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["poly_discriminant"], "-4");
    assert_eq!(v["normal_over_q"], true);
}

#[test]
fn split_reports_splitting_type() {
    let out = dedekind(&["split", "--cyclotomic", "5", "--p", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
    assert_eq!(v["status"], "Exact");
}

#[test]
fn split_rejects_composite() {
    let out = dedekind(&["split", "--quadratic", "-1", "--p", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_ideals_emits_csv() {
    let out = dedekind(&["count-ideals", "--quadratic", "-1", "--bound", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,j_n,i_n"));
    // j: 1,1,0,1,2,0,0,1,1,2 for Z[i]
    assert_eq!(lines.next(), Some("1,1,1"));
    assert_eq!(lines.next(), Some("2,1,2"));
    assert_eq!(lines.next(), Some("3,0,2"));
    assert_eq!(lines.next(), Some("4,1,3"));
    assert_eq!(lines.next(), Some("5,2,5"));
}

#[test]
fn zeta_methods_agree() {
    let d = dedekind(&["zeta", "--quadratic", "-1", "--s", "2", "--bound", "100000"]);
    let e = dedekind(&[
        "zeta", "--quadratic", "-1", "--s", "2", "--method", "euler", "--bound", "100000",
    ]);
    assert_eq!(d.status.code(), Some(0));
    assert_eq!(e.status.code(), Some(0));
    let vd: serde_json::Value = serde_json::from_str(&stdout(&d)).unwrap();
    let ve: serde_json::Value = serde_json::from_str(&stdout(&e)).unwrap();
    let rd: f64 = vd["value_re"].as_str().unwrap().parse().unwrap();
    let re: f64 = ve["value_re"].as_str().unwrap().parse().unwrap();
    assert!((rd - re).abs() < 1e-3, "{rd} vs {re}");
    assert_eq!(vd["method"], "DirichletSeries");
    assert_eq!(ve["method"], "EulerProduct");
}

#[test]
fn zeta_rejects_unknown_method() {
    let out = dedekind(&["zeta", "--quadratic", "-1", "--s", "2", "--method", "magic"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lvalue_catalan() {
    let out = dedekind(&["lvalue", "--d", "-4", "--s", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let val: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((val - 0.915965594177219).abs() < 1e-6);
}

#[test]
fn lvalue_rejects_non_fundamental() {
    let out = dedekind(&["lvalue", "--d", "16", "--s", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn density_passing_experiment_exits_zero() {
    let out = dedekind(&["density", "--quadratic", "-1", "--x", "100000"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["excluded"], serde_json::json!([2]));
}

#[test]
fn density_config_run_and_verdict_failure() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok.cfg");
    std::fs::write(
        &ok,
        "field gauss quadratic d=-1\nx 10000\nexperiment thm3 field=gauss\n",
    )
    .unwrap();
    let out = dedekind(&["density", "--config", ok.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    // deliberately wrong normal-closure degree: verdict failure, exit 1
    let bad = dir.path().join("bad.cfg");
    std::fs::write(
        &bad,
        "x 10000\nexperiment cor1 f=\"x^3 - 2\" degree=2\n",
    )
    .unwrap();
    let out = dedekind(&["density", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    // out-of-range bound: config error, exit 2
    let invalid = dir.path().join("invalid.cfg");
    std::fs::write(&invalid, "x 1000000000\n").unwrap();
    let out = dedekind(&["density", "--config", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exits_two() {
    let out = dedekind(&["zeta", "--quadratic", "-1"]); // missing --s
    assert_eq!(out.status.code(), Some(2));
    let out = dedekind(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = dedekind(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verify"));
}
