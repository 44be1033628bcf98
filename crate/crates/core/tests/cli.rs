use std::path::Path;
use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqc-hidden")).args(args).output().unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("model.json");
    let qubo = dir.path().join("model.qubo");
    let back = dir.path().join("back.json");

    let out = cli(&["build", "--problem", "simon", "--n", "4", "--j", "2", "--out", arg(&json)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(cli(&["export", "--input", arg(&json), "--out", arg(&qubo)]).status.success());
    let doc = std::fs::read_to_string(&qubo).unwrap();
    assert!(doc.starts_with("p qubo 0 10 4 1\n"), "{doc}");

    assert!(cli(&["import", "--input", arg(&qubo), "--out", arg(&back)]).status.success());
    let again = dir.path().join("again.qubo");
    assert!(cli(&["export", "--input", arg(&back), "--out", arg(&again)]).status.success());
    assert_eq!(std::fs::read_to_string(&again).unwrap(), doc);
}

#[test]
fn spectrum_from_qubo_file() {
    let dir = tempfile::tempdir().unwrap();
    let qubo = dir.path().join("bv.qubo");
    std::fs::write(&qubo, "p qubo 0 4 4 0\n0 0 1\n1 1 -1\n2 2 1\n3 3 -1\n").unwrap();
    let out = cli(&["spectrum", "--input", arg(&qubo)]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ground_energy"], "-2");
    assert_eq!(v["ground_count"], 1);
    assert_eq!(v["entries"][0]["assignment"], "1010");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"problem": "bv", "n": 8, "hidden_a": 3, "seed": 5}"#).unwrap();
    let out = cli(&["solve", "--config", arg(&config), "--a", "200"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["recovered_a_int"], 200);
    assert_eq!(v["oracle_queries"], 24);
}

#[test]
fn bench_table_has_a_row_per_width() {
    let out = cli(&["bench", "--problem", "simon", "--n-values", "4,6", "--trials", "5", "--seed", "1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 4);
    assert_eq!(rows[1]["trials"], 5);
    assert_eq!(v["mode"], "coupled");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["solve", "--problem", "simon", "--n", "4", "--a", "0"]).status.code(), Some(2));
    assert_eq!(cli(&["build", "--problem", "simon", "--n", "25"]).status.code(), Some(2));
    assert_eq!(cli(&["import", "--input", "/nonexistent.qubo"]).status.code(), Some(2));
    assert_eq!(cli(&["--help"]).status.code(), Some(0));
}
