use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn hermitia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermitia"))
        .args(args)
        .env_remove("HERMITIA_MODE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn fixture_arg(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn validate_accepts_su2_sum() {
    let out = hermitia(&["validate", &fixture_arg("su2_su2.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["valid"], true);
    assert_eq!(v["dimension"], 6);
}

#[test]
fn validate_lists_jacobi_triples() {
    let out = hermitia(&["validate", &fixture_arg("broken_jacobi.alg")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    let triples: Vec<_> = v["jacobi_violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["triple"].clone())
        .collect();
    assert_eq!(triples, vec![serde_json::json!(["A", "C", "D"]), serde_json::json!(["B", "C", "D"])]);
}

#[test]
fn empty_file_is_a_parse_error() {
    let out = hermitia(&["validate", &fixture_arg("empty.alg")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn missing_file_and_bad_arguments_exit_two() {
    assert_eq!(hermitia(&["validate", "/nonexistent/file.alg"]).status.code(), Some(2));
    assert_eq!(hermitia(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hermitia(&["reproduce", "--theorem", "9.9"]).status.code(), Some(2));
    assert_eq!(hermitia(&["reproduce", "--theorem", "3.4", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(hermitia(&["scan", "--grid", "rho"]).status.code(), Some(2));
}

#[test]
fn abelian_plane_is_kaehler() {
    let out = hermitia(&["classify", &fixture_arg("abelian_plane.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let class = &json(&out)["class"];
    assert_eq!(class["kaehler"], true);
    assert_eq!(class["hermitian"], true);
    assert_eq!(class["lck"], Value::Null);
}

#[test]
fn acs_from_a_separate_file() {
    let out = hermitia(&["classify", &fixture_arg("su2_su2.alg")]);
    assert_eq!(out.status.code(), Some(2));
    let out = hermitia(&[
        "classify",
        &fixture_arg("abelian_plane.alg"),
        "--acs",
        &fixture_arg("rotation.acs"),
        "--vertical",
        "X",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class"]["kaehler"], true);
    assert_eq!(v["foliation"]["totally_geodesic"], true);
}

#[test]
fn semikaehler_fixture() {
    for mode in ["exact", "float"] {
        let out = hermitia(&["classify", &fixture_arg("semikaehler.g8"), "--mode", mode]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        let c = &v["class"];
        assert_eq!(c["hermitian"], true, "{mode}");
        assert_eq!(c["semi_kaehler"], true, "{mode}");
        assert_eq!(c["lck"], false, "{mode}");
        assert_eq!(c["kaehler"], false, "{mode}");
        assert_eq!(v["foliation"]["riemannian"], true);
        assert_eq!(v["foliation"]["totally_geodesic"], true);
    }
}

#[test]
fn integrable_fixture_is_not_semikaehler() {
    let out = hermitia(&["classify", &fixture_arg("integrable.g8")]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["class"];
    assert_eq!(c["hermitian"], true);
    assert_eq!(c["semi_kaehler"], false);
    assert!(c["residuals"]["tilde_alpha"].as_f64().unwrap() > 0.0);
}

#[test]
fn reproduce_integrability() {
    let out = hermitia(&["reproduce", "--theorem", "3.4", "--draws", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let integrable: Vec<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["claim"] == "3.4/integrable")
        .collect();
    assert_eq!(integrable.len(), 30);
    assert!(integrable.iter().all(|r| r["status"] == "verified" && r["max_residual"] == 0.0));
}

#[test]
fn reproduce_w4_and_foliation() {
    let out = hermitia(&["reproduce", "--theorem", "w4", "--draws", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["refuted"], 0);
    let out = hermitia(&["reproduce", "--theorem", "foliation", "--draws", "30"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["verified"], 30);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["reproduce", "--theorem", "magnin", "--draws", "3", "--seed", "42"];
    let a = hermitia(&args);
    let b = hermitia(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["scan", "--random", "5", "--seed", "9", "--format", "csv"];
    assert_eq!(hermitia(&args).stdout, hermitia(&args).stdout);
}

#[test]
fn mode_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hermitia"))
        .args(["reproduce", "--theorem", "foliation", "--draws", "1"])
        .env("HERMITIA_MODE", "float")
        .output()
        .unwrap();
    assert_eq!(json(&out)["mode"], "float");
    let out = Command::new(env!("CARGO_BIN_EXE_hermitia"))
        .args(["reproduce", "--theorem", "foliation", "--draws", "1", "--mode", "exact"])
        .env("HERMITIA_MODE", "float")
        .output()
        .unwrap();
    assert_eq!(json(&out)["mode"], "exact");
}

#[test]
fn scan_integrable_family_is_hermitian() {
    let out = hermitia(&["scan", "--family", "integrable", "--random", "100", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let col = reader.headers().unwrap().iter().position(|h| h == "hermitian").unwrap();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| &r[col] == "true"));
}

#[test]
fn scan_unconstrained_family_is_never_hermitian() {
    let out = hermitia(&["scan", "--random", "100", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    let herm = headers.iter().position(|h| h == "hermitian").unwrap();
    let res = headers.iter().position(|h| h == "nijenhuis_residual").unwrap();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 100);
    for r in &rows {
        assert_eq!(&r[herm], "false");
        assert!(r[res].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn scan_semikaehler_grid() {
    let out = hermitia(&[
        "scan",
        "--family",
        "semikaehler",
        "--grid",
        "rho=1,2,4;r1=0;r2=0",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let col = reader.headers().unwrap().iter().position(|h| h == "semi_kaehler").unwrap();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| &r[col] == "true"));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("hermitia-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = hermitia(&["validate", &fixture_arg("su2_su2.alg"), "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["valid"], true);
    std::fs::remove_dir_all(dir).unwrap();
}
