use std::path::Path;
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_normmax")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

const SQUARE: &str = "H 2 4\n1 0 1\n-1 0 1\n0 1 1\n0 -1 1\n";
const CUBE_V: &str = "V 2 4\n1 1\n1 -1\n-1 1\n-1 -1\n";

/// Every leaf number in the report is a `num/den` string.
fn all_rational_strings(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::String(s) => !s.contains('.') || !s.chars().next().is_some_and(|c| c.is_ascii_digit()),
        Value::Array(a) => a.iter().all(all_rational_strings),
        Value::Object(o) => o.values().all(all_rational_strings),
        _ => true,
    }
}

#[test]
fn normmax_decision_yes_and_no() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "square.hpoly", SQUARE);
    let (code, json, _) = run(&["normmax", "--poly", &sq, "--p", "2", "--gamma", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["value"], "2/1");
    assert_eq!(json["decision"], true);
    assert!(all_rational_strings(&json));

    let (code, json, _) = run(&["normmax", "--poly", &sq, "--p", "2", "--gamma", "9/4"]);
    assert_eq!(code, 1);
    assert_eq!(json["decision"], false);
}

#[test]
fn normmax_l1_method() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "square.hpoly", SQUARE);
    let (code, json, _) = run(&["normmax", "--poly", &sq, "--p", "1", "--method", "l1"]);
    assert_eq!(code, 0);
    assert_eq!(json["value"], "2/1");
    let (code, _, err) = run(&["normmax", "--poly", &sq, "--p", "2", "--method", "l1"]);
    assert_eq!(code, 2);
    assert!(err.contains("--p 1"));
}

#[test]
fn reduce_writes_polytope_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k3.col", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let out = dir.path().join("k3.hpoly");
    let out_s = out.to_str().unwrap();
    let (code, json, err) = run(&["reduce", "--graph", &g, "--k", "3", "--p", "2", "--out", out_s, "--decide"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json["decision"], true);
    assert!(Path::new(out_s).exists());
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(format!("{out_s}.json")).unwrap()).unwrap();
    for key in ["n_padded", "k", "p", "U", "eps_bar", "yes_threshold", "no_threshold"] {
        assert!(sidecar[key].as_str().unwrap().contains('/'), "{key}");
    }
    assert_eq!(sidecar["k"], "3/1");

    let (code, json, _) = run(&["normmax", "--poly", out_s, "--p", "2", "--gamma", sidecar["yes_threshold"].as_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["decision"], true);
}

#[test]
fn reduce_no_instance_exits_one() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "empty.col", "p edge 4 0\n");
    let out = dir.path().join("e.hpoly");
    let (code, json, _) = run(&["reduce", "--graph", &g, "--k", "2", "--p", "2", "--out", out.to_str().unwrap(), "--decide"]);
    assert_eq!(code, 1);
    assert_eq!(json["decision"], false);
}

#[test]
fn radii_both_sides() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "square.hpoly", SQUARE);
    let (code, json, _) = run(&["radii", "--poly", &sq, "--p", "2", "--which", "circumradius"]);
    assert_eq!(code, 0);
    assert_eq!(json["value"], "2/1");

    let cube = write(&dir, "cube.vpoly", CUBE_V);
    let (code, json, _) = run(&["radii", "--poly", &cube, "--p", "2", "--which", "inradius", "--gamma", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json["value"], "1/1");
    assert_eq!(json["decision"], true);

    let (code, _, _) = run(&["radii", "--poly", &cube, "--p", "2", "--which", "diameter"]);
    assert_eq!(code, 2);
}

#[test]
fn parmax_and_approx() {
    let dir = TempDir::new().unwrap();
    let gens = write(&dir, "gens.vpoly", "V 2 2\n1 0\n1 1\n");
    let (code, json, _) = run(&["parmax", "--vectors", &gens, "--mode", "01", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["value"], "5/1");

    let sq = write(&dir, "square.hpoly", SQUARE);
    let (code, json, _) = run(&["approx", "--poly", &sq, "--p", "2", "--beta", "4"]);
    assert_eq!(code, 0);
    assert!(all_rational_strings(&json));
}

#[test]
fn verify_subcommands() {
    let (code, json, _) = run(&["verify", "--what", "gadget-bounds", "--n", "8", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["decision"], true);
    let (code, json, _) = run(&["verify", "--what", "ball", "--n", "2", "--p", "2", "--beta", "4"]);
    assert_eq!(code, 0);
    assert_eq!(json["outer"], "Proved");
    let (code, _, _) = run(&["verify", "--what", "ball", "--n", "2", "--p", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let (code, _, _) = run(&["normmax"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["normmax", "--poly", "/nonexistent/file", "--p", "2"]);
    assert_eq!(code, 2);
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.hpoly", "H 2 1\n1 x 1\n");
    let (code, _, err) = run(&["normmax", "--poly", &bad, "--p", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}
