use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_triwheel")).args(args).output().unwrap();
    let lines = String::from_utf8(stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l:?}: {e}; stderr {}", String::from_utf8_lossy(&stderr))))
        .collect();
    (status.code(), lines)
}

fn report(lines: &[Value]) -> &Value {
    &lines.last().expect("no output")["report"]
}

fn write(dir: &Path, name: &str, content: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.display().to_string()
}

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

// Octahedron: antipodal pairs (0,5), (1,3), (2,4) are the only non-edges.
const OCTAHEDRON: &str = "6 12\n0 1\n0 2\n0 3\n0 4\n1 2\n1 4\n1 5\n2 3\n2 5\n3 4\n3 5\n4 5\n";

#[test]
fn poly_on_k4() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k4.txt", K4.as_bytes());
    let (code, lines) = run(&["--oracle", "poly", "--input", &input, "--eval", "4"]);
    assert_eq!(code, Some(0));
    assert_eq!(lines[0]["coefficients"], serde_json::json!([0, -6, 11, -6, 1]));
    assert_eq!(lines[0]["value"], 24);
    assert_eq!(lines[0]["oracle"]["agrees"], true);
    let r = report(&lines);
    assert_eq!(r["command"], "poly");
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "oct.txt", OCTAHEDRON.as_bytes());
    let cache = dir.path().join("memo.txt").display().to_string();
    let (code, first) = run(&["--cache", &cache, "poly", "--input", &input]);
    assert_eq!(code, Some(0));
    assert!(std::fs::metadata(&cache).unwrap().len() > 0);
    let (code, second) = run(&["--cache", &cache, "poly", "--input", &input]);
    assert_eq!(code, Some(0));
    assert_eq!(first[0]["coefficients"], second[0]["coefficients"]);
    assert_eq!(first[0]["coefficients"].as_array().unwrap().len(), 7);
}

#[test]
fn malformed_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.txt", b"3 1\n0 0\n");
    let (code, lines) = run(&["poly", "--input", &input, "--format", "adjlist"]);
    assert_eq!(code, Some(1));
    assert!(!report(&lines)["failures"].as_array().unwrap().is_empty());
}

#[test]
fn generate_then_color_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n12.pc").display().to_string();
    let (code, lines) = run(&["generate", "--n", "12", "--min-degree", "5", "--out", &out]);
    assert_eq!(code, Some(0));
    assert_eq!(report(&lines)["results"]["graphs"], 1);
    let bytes = std::fs::read(&out).unwrap();
    assert!(bytes.starts_with(b">>planar_code<<"));

    let (code, lines) = run(&["color", "--input", &out]);
    assert_eq!(code, Some(0));
    let cert = &lines[0]["certificate"];
    assert_eq!(cert["coloring"].as_array().unwrap().len(), 12);
    assert_eq!(cert["fallback"], false);

    let log = dir.path().join("obstructions.jsonl");
    let log_arg = log.display().to_string();
    let (code, lines) = run(&["--oracle", "classify", "--input", &out, "--obstruction-log", &log_arg]);
    assert_eq!(code, Some(0));
    assert_eq!(lines[0]["classification"]["partitions"], 10);
    assert_eq!(std::fs::read_to_string(&log).unwrap().lines().count(), 1);
}

#[test]
fn verify_small_orders() {
    for theorem in ["1", "2"] {
        let (code, lines) = run(&["--oracle", "verify", "--theorem", theorem, "--order-max", "8", "--all-rims", "--permutations", "2"]);
        assert_eq!(code, Some(0), "theorem {theorem}");
        let r = &report(&lines)["results"];
        assert_eq!(r["violations"], 0);
        assert!(r["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_rejects_unsupported_order() {
    let (code, lines) = run(&["verify", "--theorem", "1", "--order-max", "20"]);
    assert_eq!(code, Some(1));
    assert_eq!(report(&lines)["failures"].as_array().unwrap().len(), 1);
}

#[test]
fn bad_arguments_exit_nonzero() {
    let status = Command::new(env!("CARGO_BIN_EXE_triwheel")).args(["verify", "--theorem", "3", "--order-max", "6"]).status().unwrap();
    assert!(!status.success());
}
