//! End-to-end checks of the command-line surface: exit codes, output
//! formats, and the documented JSON schemas.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn word_prefixes_to_stdout() {
    let out = run(&["word", "S", "--len", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "1001101001\n");

    let out = run(&["word", "T", "--len", "10"]);
    assert_eq!(stdout_of(&out), "1001100100\n");

    let out = run(&["word", "F", "--len", "1"]);
    assert_eq!(stdout_of(&out), "0\n");
}

#[test]
fn word_rejects_unknown_name() {
    let out = run(&["word", "Q", "--len", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn word_packed_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.bits");
    let out = run(&[
        "word",
        "S",
        "--len",
        "10",
        "--format",
        "bits",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(&path).unwrap(), vec![0b1001_1010, 0b0100_0000]);
}

fn write_coloring(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // witness found: all-ones [4] against F, k=3
    let ones = dir.path().join("ones.txt");
    write_coloring(&ones, "4 1\n1 1 1 1\n");
    let out = run(&[
        "verify",
        ones.to_str().unwrap(),
        "--D",
        "F",
        "--k",
        "3",
        "--mode",
        "diffseq",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let witness: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(witness["positions"], serde_json::json!([1, 2, 3]));
    assert_eq!(witness["kind"], "diffseq");

    // no witness: S-coloring of [1000] against G, k=4
    let s_path = dir.path().join("s.txt");
    let status = run(&[
        "coloring",
        "word",
        "S",
        "--n",
        "1000",
        "--out",
        s_path.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let out = run(&[
        "verify",
        s_path.to_str().unwrap(),
        "--D",
        "G",
        "--k",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "");

    // malformed file
    let bad = dir.path().join("bad.txt");
    write_coloring(&bad, "not a coloring\n");
    let out = run(&["verify", bad.to_str().unwrap(), "--D", "F", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn number_exact_engine_json() {
    let out = run(&[
        "number", "--D", "L", "--k", "3", "--r", "3", "--engine", "exact", "--n-cap", "30",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(result["value"], 13);
    assert_eq!(result["D"], "L");
    assert_eq!(result["engine"], "exact");
    assert!(result["elapsed_ms"].is_u64());
}

#[test]
fn number_sat_engine_with_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("witness.txt");
    let out = run(&[
        "number",
        "--D",
        "F",
        "--k",
        "2",
        "--r",
        "4",
        "--engine",
        "sat",
        "--n-cap",
        "20",
        "--witness-out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(result["value"], 9);
    assert_eq!(result["solver"], "builtin");
    // the witness file holds the avoiding coloring of [8]
    let text = fs::read_to_string(&witness).unwrap();
    assert!(text.starts_with("8 4\n"));
    let verify = run(&[
        "verify",
        witness.to_str().unwrap(),
        "--D",
        "F",
        "--k",
        "2",
    ]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn number_sat_engine_perrin_table_entry() {
    let out = run(&[
        "number", "--D", "P", "--k", "4", "--r", "3", "--engine", "sat", "--n-cap", "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(result["value"], 28);
}

#[test]
fn number_bisect_strategy_agrees() {
    let out = run(&[
        "number", "--D", "F", "--k", "3", "--r", "2", "--mode", "ap", "--engine", "sat",
        "--strategy", "bisect", "--n-cap", "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(result["value"], 17);
    assert_eq!(result["options"]["strategy"], "bisect");
}

#[test]
fn greedy_reports_stuck_position() {
    let out = run(&[
        "greedy", "--D", "G", "--k", "3", "--r", "2", "--n", "100", "--policy", "first-fit",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let result: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(result["outcome"], "stuck");
    assert_eq!(result["stuck_position"], 86);
}

#[test]
fn greedy_writes_verified_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g100.txt");
    let out = run(&[
        "greedy", "--D", "G", "--k", "3", "--r", "2", "--n", "100", "--policy", "backtrack",
        "--window", "200", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let result: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(result["outcome"], "complete");
    let verify = run(&[
        "verify",
        path.to_str().unwrap(),
        "--D",
        "G",
        "--k",
        "3",
    ]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn encode_emits_dimacs() {
    let out = run(&[
        "encode", "--D", "F", "--k", "2", "--r", "2", "--n", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("p cnf 10 28\n"));
    assert!(text.starts_with("c diffseq-cnf D=F k=2 r=2 n=5 mode=diffseq\n"));
}

#[test]
fn coloring_lift_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("base.txt");
    write_coloring(&base, "2 2\n1 2\n");
    let lifted = dir.path().join("lifted.txt");
    let out = run(&[
        "coloring",
        "lift",
        "--base",
        base.to_str().unwrap(),
        "--n",
        "4",
        "--out",
        lifted.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&lifted).unwrap(), "4 4\n1 3 2 4\n");
}

#[test]
fn proofcheck_exit_codes_and_json() {
    let out = run(&["proofcheck", "modular"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("suite modular"));

    let out = run(&["proofcheck", "lemma32", "--imax", "10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    assert_eq!(report["suite"], "lemma32");

    let out = run(&["proofcheck", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn proofcheck_thm2_prints_tables() {
    let out = run(&["proofcheck", "thm2", "--N", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("1,2 |"));
    assert!(text.contains("-.382"));
}

#[test]
fn diffset_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("odds.txt");
    fs::write(&set, "1\n3\n5\n").unwrap();
    let coloring = dir.path().join("alt.txt");
    write_coloring(&coloring, "6 2\n1 2 1 2 1 2\n");
    let out = run(&[
        "verify",
        coloring.to_str().unwrap(),
        "--D-file",
        set.to_str().unwrap(),
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
