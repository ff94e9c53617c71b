use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zetat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetat"))
        .args(args)
        .output()
        .expect("failed to launch zetat")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_schema(name: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name} output violates its schema: {errors:?}");
}

#[test]
fn torsion_genus_two() {
    let out = zetat(&["torsion", "--genus", "2", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_schema("torsion", &v);
    let log_tor = v[0]["log_torsion"].as_f64().unwrap();
    assert!((log_tor - 16f64.ln()).abs() < 1e-14);
}

#[test]
fn torsion_csv_rows() {
    let out = zetat(&["torsion", "--genus", "0", "--cones", "2,3,7", "--n", "1..3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>()[..3], ["genus", "cones", "N"]);
    assert_eq!(rdr.records().count(), 3);
}

#[test]
fn table_format_is_aligned() {
    let out = zetat(&["torsion", "--genus", "1", "--cones", "3", "--n", "1..4", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let widths: Vec<usize> = text.lines().map(|l| l.chars().count()).collect();
    assert_eq!(widths.len(), 5);
    assert!(widths.iter().all(|&w| w == widths[0]));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&zetat(&["torsion", "--genus", "0", "--cones", "2,3,6"])), 2);
    assert_eq!(code(&zetat(&["torsion", "--genus", "0", "--cones", "2,x,7"])), 2);
    assert_eq!(code(&zetat(&["torsion", "--genus", "0", "--cones", "1,3,7"])), 2);
    assert_eq!(code(&zetat(&["torsion", "--genus", "2", "--n", "0"])), 3);
    assert_eq!(code(&zetat(&["torsion", "--genus", "2", "--n", "5..2"])), 3);
    assert_eq!(code(&zetat(&["ruelle", "--genus", "0", "--cones", "2,3,7", "--route", "quadrature", "--n", "100"])), 3);
    // clap reports usage errors itself
    assert_eq!(code(&zetat(&["verify", "--suite", "nonsense"])), 2);
}

#[test]
fn ruelle_all_routes_agree() {
    let out = zetat(&["ruelle", "--genus", "0", "--cones", "2,3,7", "--n", "1", "--route", "all"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_schema("ruelle", &v);
    let r = &v[0];
    let tor = r["log_torsion"].as_f64().unwrap();
    for key in ["log_abs_closed", "log_abs_residue", "log_abs_quadrature"] {
        assert!((r[key].as_f64().unwrap() - tor).abs() < 1e-7, "{key}");
    }
}

#[test]
fn ruelle_genus_two() {
    let out = zetat(&["ruelle", "--genus", "2", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_schema("ruelle", &v);
    assert!((v[0]["log_abs_closed"].as_f64().unwrap() - 16.0 * std::f64::consts::LN_2).abs() < 1e-12);
    assert!(v[0]["log_abs_quadrature"].is_null());
}

#[test]
fn ruelle_tolerance_violation_exits_five() {
    let out = zetat(&[
        "ruelle", "--genus", "0", "--cones", "2,3,7", "--n", "2", "--route", "all", "--tol", "1e-18",
    ]);
    assert_eq!(code(&out), 5);
    assert!(!out.stdout.is_empty(), "the report is still written");
}

#[test]
fn quadrature_failure_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.toml");
    std::fs::write(&cfg, "abs_tol = 1e-300\nrel_tol = 1e-300\nmax_depth = 2\n").unwrap();
    let out = zetat(&[
        "ruelle", "--genus", "0", "--cones", "2,3,7", "--n", "1", "--route", "quadrature",
        "--config", cfg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn config_file_is_read_and_checked() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("q.toml");
    std::fs::write(&good, "abs_tol = 1e-9\npv_window = 0.01\n").unwrap();
    let out = zetat(&[
        "ruelle", "--genus", "1", "--cones", "2", "--n", "1..2", "--route", "quadrature",
        "--config", good.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "abs_tol = 1e-9\nunknown_key = 3\n").unwrap();
    let out = zetat(&["ruelle", "--genus", "2", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let invalid = dir.path().join("invalid.toml");
    std::fs::write(&invalid, "pv_window = 0.6\n").unwrap();
    let out = zetat(&["ruelle", "--genus", "2", "--config", invalid.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = zetat(&["torsion", "--genus", "0", "--cones", "2,3,7", "--n", "1..5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_schema("torsion", &v);
    assert_eq!(v.as_array().unwrap().len(), 5);
}

#[test]
fn output_is_byte_stable() {
    let args = ["ruelle", "--genus", "0", "--cones", "2,3,7", "--n", "1..6", "--route", "all"];
    let a = zetat(&args);
    let b = zetat(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["sweep", "--enumerate", "--max-order", "5", "--n-max", "30", "--format", "csv"];
    let a = Command::new(env!("CARGO_BIN_EXE_zetat")).args(args).env("ZETAT_THREADS", "1").output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_zetat")).args(args).env("ZETAT_THREADS", "4").output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn floats_round_trip() {
    let out = zetat(&["torsion", "--genus", "0", "--cones", "2,3,7", "--n", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"log_torsion\": 2.312321012649371"));
}

#[test]
fn bad_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_zetat"))
        .args(["torsion", "--genus", "2"])
        .env("ZETAT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}

#[test]
fn sweep_without_cones_has_zero_gap() {
    let out = zetat(&["sweep", "--genus", "3", "--n-max", "10"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_schema("sweep", &v);
    let rows = v[0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r["gap"].as_f64() == Some(0.0)));
}

#[test]
fn sweep_gap_scales_like_one_over_n() {
    let out = zetat(&["sweep", "--genus", "0", "--cones", "2,3,7", "--n-max", "1000"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let blk = &v[0];
    assert!(blk["max_scaled_gap"].as_f64().unwrap() <= blk["bound_constant"].as_f64().unwrap());
    let last = &blk["rows"][999];
    assert_eq!(last["N"], 1000);
    assert!(last["gap"].as_f64().unwrap().abs() < 1e-3);
}

#[test]
fn sweep_enumeration_has_one_block_per_signature() {
    let out = zetat(&["sweep", "--enumerate", "--max-order", "8", "--n-max", "100"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_schema("sweep", &v);
    let blocks = v.as_array().unwrap();
    let expected = zetat_core::orbifold::enumerate_signatures(0, 3, 8).len();
    assert_eq!(blocks.len(), expected);
    assert!(blocks.iter().all(|b| b["rows"].as_array().unwrap().len() == 100));
}

fn verify(suite: &str, extra: &[&str]) -> Value {
    let mut args = vec!["verify", "--suite", suite];
    args.extend_from_slice(extra);
    let out = zetat(&args);
    let v = stdout_json(&out);
    assert_schema("verify", &v);
    let failing: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(failing.is_empty(), "{suite}: {failing:?}");
    assert_eq!(code(&out), 0);
    v
}

#[test]
fn verify_transforms() {
    let v = verify("transforms", &[]);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("round trip")));
}

#[test]
fn verify_functional_eq() {
    verify("functional-eq", &[]);
}

#[test]
fn verify_residues() {
    verify("residues", &[]);
    let v = verify("residues", &["--tol", "1e-3"]);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["tol"] == 1e-3));
}

#[test]
fn verify_ruelle_torsion() {
    let v = verify("ruelle-torsion", &[]);
    assert!(v["checks"].as_array().unwrap().len() > 100);
}

#[test]
fn verify_failures_exit_one() {
    let out = zetat(&["verify", "--suite", "transforms", "--tol", "1e-300"]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_schema("verify", &v);
    assert_eq!(v["passed"], false);
}
