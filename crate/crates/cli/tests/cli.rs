use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn kodag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kodag")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

fn fixture_rows(name: &str) -> Vec<Vec<i64>> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    serde_json::from_value(doc["rows"].clone()).unwrap()
}

/// Exit status and the single error line on standard error.
fn assert_error(out: &Output, code: i32, kind: &str) {
    assert_eq!(out.status.code(), Some(code), "stderr: {}", stderr(out));
    let err = stderr(out);
    assert_eq!(err.lines().count(), 1, "{err}");
    let line: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(line["error"], kind);
    assert_eq!(line["code"], code);
}

#[test]
fn zeta_csv_region() {
    let out = kodag(&["zeta", "--seq", "nat", "--levels", "5", "--format", "csv"]);
    assert!(out.status.success());
    let rows: Vec<Vec<i64>> =
        stdout(&out).lines().map(|l| l.split(',').map(|t| t.parse().unwrap()).collect()).collect();
    let expected: Vec<Vec<i64>> = fixture_rows("zeta_nat.json").iter().take(15).map(|r| r[..15].to_vec()).collect();
    assert_eq!(rows, expected);
}

#[test]
fn zeta_methods_agree() {
    let closure = stdout(&kodag(&["zeta", "--seq", "fib+root", "--levels", "6"]));
    for method in ["delta", "grid", "bracket"] {
        let out = kodag(&["zeta", "--seq", "fib+root", "--levels", "6", "--method", method]);
        assert_eq!(stdout(&out), closure, "{method}");
    }
}

#[test]
fn mobius_closed_matches_invert_bytes() {
    let invert = kodag(&["mobius", "--seq", "nat", "--levels", "6", "--method", "invert"]);
    let closed = kodag(&["mobius", "--seq", "nat", "--levels", "6", "--method", "closed"]);
    let recurrence = kodag(&["mobius", "--seq", "nat", "--levels", "6", "--method", "recurrence"]);
    assert!(invert.status.success() && closed.status.success());
    assert_eq!(invert.stdout, closed.stdout);
    assert_eq!(invert.stdout, recurrence.stdout);
}

#[test]
fn counterexample_mismatch_exit_4() {
    let path = fixture("counterexample.json");
    let out = kodag(&["mobius", "--poset", path.to_str().unwrap(), "--method", "closed"]);
    assert_eq!(out.status.code(), Some(4));
    let m: Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert_eq!((m["row"].as_u64(), m["col"].as_u64()), (Some(0), Some(3)));
    assert_eq!(m["block"], serde_json::json!([1, 3]));
    assert_eq!(m["exact"].to_string(), "0");
    assert_eq!(m["candidate"].to_string(), "1");
    // the candidate matrix is still emitted
    assert_eq!(json(&out)["sizes"], serde_json::json!([1, 2, 2]));
}

#[test]
fn mobius_inverse_on_general_poset() {
    let path = fixture("counterexample.json");
    let out = kodag(&["mobius", "--poset", path.to_str().unwrap(), "--method", "invert"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["entries"][0], serde_json::json!([1, -1, -1, 0, 0]));
}

#[test]
fn coding_outputs() {
    let out = kodag(&["coding", "--seq", "nat", "--levels", "6"]);
    let c: Vec<Vec<i64>> = serde_json::from_value(json(&out)["c"].clone()).unwrap();
    assert_eq!(c[..5].to_vec(), fixture_rows("coding_nat.json"));
    let out = kodag(&["coding", "--seq", "list:1,3,3,3,3,3", "--levels", "6"]);
    let c: Vec<Vec<i64>> = serde_json::from_value(json(&out)["c"].clone()).unwrap();
    assert_eq!(c[..5].to_vec(), fixture_rows("coding_list_1_3.json"));
    let out = kodag(&["coding", "--seq", "fib", "--levels", "1"]);
    assert_eq!(stdout(&out), "{\"c\":[[1]],\"n\":1}\n");
}

fn zero_runs(text: &str) -> Vec<usize> {
    text.lines().map(|l| l.trim_start().split(' ').skip(1).take_while(|g| *g == "0").count()).collect()
}

#[test]
fn lascala_staircases() {
    let out = kodag(&["lascala", "--seq", "fib", "--levels", "7", "--width", "200"]);
    assert!(out.status.success());
    let expected: Vec<usize> = [1usize, 1, 2, 3, 5, 8, 13].iter().flat_map(|&f| (0..f).rev()).collect();
    assert_eq!(zero_runs(&stdout(&out)), expected);

    let out = kodag(&["lascala", "--seq", "nat", "--levels", "4"]);
    assert_eq!(zero_runs(&stdout(&out)), vec![0, 1, 0, 2, 1, 0, 3, 2, 1, 0]);

    let out = kodag(&["lascala", "--seq", "nat", "--levels", "1"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn lascala_needs_cobweb() {
    let path = fixture("counterexample.json");
    assert_error(&kodag(&["lascala", "--poset", path.to_str().unwrap()]), 2, "config");
}

#[test]
fn chains_counts_and_cap() {
    let out = kodag(&["chains", "--seq", "nat", "--levels", "4", "--from", "2", "--to", "4"]);
    assert_eq!(stdout(&out), "{\"count\":\"24\",\"k\":2,\"n\":4}\n");
    let out = kodag(&["chains", "--seq", "nat", "--levels", "4", "--from", "3", "--to", "3"]);
    assert_eq!(json(&out)["count"], "3");
    let out = kodag(&["chains", "--seq", "nat", "--levels", "4", "--from", "2", "--to", "4", "--enumerate"]);
    let chains = json(&out);
    assert_eq!(chains.as_array().unwrap().len(), 24);
    assert_eq!(chains[0], serde_json::json!([[2, 1], [3, 1], [4, 1]]));
    let out = kodag(&["chains", "--seq", "nat", "--levels", "4", "--from", "2", "--to", "4", "--enumerate", "--cap", "10"]);
    assert_error(&out, 5, "cap");
}

#[test]
fn scalar_commands() {
    let out = kodag(&["kroton", "--seq", "fib+root", "-r", "3", "-s", "7"]);
    assert_eq!(stdout(&out), "{\"r\":3,\"s\":7,\"value\":\"8\"}\n");
    let out = kodag(&["fnomial", "--seq", "gauss:2", "-n", "4", "-k", "2", "--format", "ascii"]);
    assert_eq!(stdout(&out), "35\n");
    let out = kodag(&["fnomial", "--seq", "list:2,1,1", "-n", "2", "-k", "1"]);
    assert_eq!(json(&out)["value"], "1/2");
    assert_eq!(json(&out)["integral"], false);
    let out = kodag(&["fnomial", "--seq", "list:2,1,1", "--admissible", "3"]);
    assert_eq!(json(&out)["first_violation"], serde_json::json!([2, 1]));
}

#[test]
fn matrices_and_formats() {
    let out = kodag(&["max", "--seq", "nat", "--levels", "3", "--format", "ascii"]);
    let text = stdout(&out);
    let last_col: Vec<&str> = text.lines().map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(last_col, ["2", "1", "1", "0", "0", "1"]);
    let eta = json(&kodag(&["eta", "--seq", "nat", "--levels", "2"]));
    assert_eq!(eta["entries"], serde_json::json!([[1, 1, 1], [0, 1, 0], [0, 0, 1]]));
    let inverse = json(&kodag(&["eta", "--seq", "nat", "--levels", "2", "--inverse"]));
    assert_eq!(inverse["entries"], serde_json::json!([[1, -1, -1], [0, 1, 0], [0, 0, 1]]));
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.json");
    let out = kodag(&["zeta", "--seq", "nat", "--levels", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "{\"entries\":[[1,1,1],[0,1,0],[0,0,1]],\"sizes\":[1,2]}\n");
}

#[test]
fn random_documents_round_trip() {
    let args = ["random", "--seq", "nat", "--levels", "5", "--density", "2/5", "--seed", "7"];
    let first = kodag(&args);
    assert_eq!(first.stdout, kodag(&args).stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, &first.stdout).unwrap();
    let out = kodag(&["random", "--poset", path.to_str().unwrap(), "--seed", "7", "--density", "0.4"]);
    assert_eq!(out.stdout, first.stdout);
    let doc = json(&first);
    assert_eq!(doc["sizes"], serde_json::json!([1, 2, 3, 4, 5]));
    assert_eq!(doc["version"], 1);
}

#[test]
fn malformed_inputs() {
    assert_error(&kodag(&["zeta", "--seq", "Nat", "--levels", "3"]), 2, "config");
    assert_error(&kodag(&["zeta", "--seq", "nat"]), 2, "config");
    assert_error(&kodag(&["zeta", "--levels", "3"]), 2, "config");
    assert_error(&kodag(&["zeta", "--seq", "nat", "--levels", "x"]), 2, "config");
    assert_error(&kodag(&["frobnicate"]), 2, "config");
    assert_error(&kodag(&["random", "--seq", "nat", "--levels", "3", "--density", "3/2"]), 2, "config");
    let path = fixture("counterexample.json");
    assert_error(&kodag(&["zeta", "--poset", path.to_str().unwrap(), "--levels", "3"]), 2, "config");
    assert_error(&kodag(&["zeta", "--poset", "/nonexistent/p.json"]), 2, "config");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"version\":1,\"sizes\":[1,2],\"blocks\":[[[1]]]}").unwrap();
    assert_error(&kodag(&["zeta", "--poset", bad.to_str().unwrap()]), 2, "config");
}

#[test]
fn domain_errors() {
    assert_error(&kodag(&["kroton", "--seq", "nat", "-r", "3", "-s", "3"]), 3, "domain");
    assert_error(&kodag(&["fnomial", "--seq", "nat", "-n", "2", "-k", "3"]), 3, "domain");
    assert_error(&kodag(&["chains", "--seq", "nat", "--levels", "3", "--from", "2", "--to", "5"]), 3, "domain");
}

#[test]
fn verify_conjectures_on_counterexample() {
    let path = fixture("counterexample.json");
    let out = kodag(&["verify", "--suite", "conjectures", "--random", "3", "--poset", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().all(|l| l.starts_with("REPORT") || l.starts_with("summary")), "{text}");
    assert!(text.contains("mismatch at (0,3) block (1,3): exact 0 vs closed form 1"));
}

#[test]
fn verify_fails_on_corrupted_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("mobius_nat.json")).unwrap()).unwrap();
    doc["rows"][2][7] = Value::from(5);
    let path = dir.path().join("corrupted.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = kodag(&["verify", "--suite", "mobius", "--random", "2", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("corrupted.json") && l.contains("(2,7)")), "{text}");

    std::fs::write(&path, "not json").unwrap();
    let out = kodag(&["verify", "--suite", "mobius", "--random", "0", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    for suite in ["zeta-equivalence", "max", "theorems"] {
        let out = kodag(&["verify", "--suite", suite, "--random", "5", "--seed", "3", "--levels", "4"]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
}
