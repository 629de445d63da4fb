use std::process::Command;

use commcent::cli::{run, EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_IO, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv: Vec<&str> = std::iter::once("commcent").chain(args.iter().copied()).collect();
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn build_summaries() {
    let (code, out, _) = cli(&["build", "heis:q=4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("order: 64\n") && out.contains("center: 4\n") && out.contains("quotient: Z4xZ4\n"));
    let (_, out, _) = cli(&["build", "L:p=3,r=0"]);
    assert!(out.contains("abelian: true") && out.contains("quotient: trivial"));
    let (_, out, _) = cli(&["build", "ce:p=3,r=1,m=3,a=1,b=0,g=1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 243);
    assert_eq!(v["quotient"], "Z9:Z9");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["build", "ce:p=3,r=1,m=9,a=1,b=0,g=1"]).0, EXIT_INCONSISTENT);
    assert_eq!(cli(&["build", "search:p=2,r=1,m=2,4"]).0, EXIT_INCONSISTENT);
    assert_eq!(cli(&["build", "heis:q=x"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--max-order", "100", "build", "heis:q=9"]).0, EXIT_USAGE);
    assert_eq!(cli(&["export", "m2", "--p", "2"]).0, EXIT_USAGE);
    assert_eq!(cli(&["export", "ccc"]).0, EXIT_USAGE);
    assert_eq!(cli(&["verify", "thm1", "--format", "dot"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--iso-budget", "1", "verify", "thm2", "--p", "2"]).0, EXIT_BUDGET);
    assert_eq!(cli(&["verify", "thm2", "--p", "3", "--r", "1"]).0, EXIT_MISMATCH);
    let (code, _, err) = cli(&["build", "heis:q=4", "--out", "/nonexistent-dir/x"]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("i/o error"));
}

#[test]
fn verify_text_and_json() {
    let (code, out, _) = cli(&["verify", "thm1", "p=2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("centralizers: 10 (predicted 10) ok"));
    let (code, out, _) = cli(&["--format", "json", "verify", "tables", "--p", "3"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["match"] == true && r.get("elapsed_ms").is_none()));
}

#[test]
fn mismatch_shows_a_diff() {
    let (code, out, _) = cli(&["verify", "thm2", "--p", "3", "--r", "1"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("part sizes expected"));
    assert!(out.contains("=> MISMATCH"));
}

#[test]
fn output_is_stable_across_thread_counts() {
    let one = cli(&["--threads", "1", "--format", "json", "verify", "thm1", "--p", "3"]);
    let four = cli(&["--threads", "4", "--format", "json", "verify", "thm1", "--p", "3"]);
    assert_eq!(one, four);
    let a = cli(&["export", "ccc", "--family", "heis:q=9"]);
    let b = cli(&["--threads", "3", "export", "ccc", "--family", "heis:q=9"]);
    assert_eq!(a, b);
}

#[test]
fn export_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m1.dot");
    let (code, out, _) = cli(&["export", "m1", "--p", "2", "--z", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph \"M1\" {") && dot.contains("subgraph \"cluster_0\""));

    let path = dir.path().join("ccc.json");
    let (code, _, _) = cli(&["export", "ccc", "--family", "heis:q=4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 18);
    assert_eq!(v["census_match"], true);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_commcent");
    let ok = Command::new(bin).args(["verify", "conjecture", "--p", "2", "--n", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("centralizers: 4 (predicted 4) ok"));
    let bad = Command::new(bin).args(["build", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
