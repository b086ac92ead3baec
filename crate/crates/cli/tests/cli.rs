//! Black-box runs of the perfdiv binary: record shapes, exit codes, flag
//! handling, and the verify round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn perfdiv(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_perfdiv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn is_perfect_on_k2_exits_zero() {
    let out = perfdiv(&["is-perfect"], "A_\n");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["graph6"], "A_");
    assert_eq!(recs[0]["n"], 2);
    assert_eq!(recs[0]["result"]["perfect"], true);
}

#[test]
fn is_perfect_on_c5_exits_one_with_hole() {
    let out = perfdiv(&["is-perfect"], "Dhc\n");
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    assert_eq!(recs[0]["result"]["perfect"], false);
    assert_eq!(recs[0]["certificate"]["type"], "odd-hole");
}

#[test]
fn omega_weighted_c5_finds_the_heavy_edge() {
    let out = perfdiv(&["omega", "--weights", "2,1,1,1,1"], "Dhc\n");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["result"]["omega"], 3);
    let witness: Vec<u64> = recs[0]["certificate"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert!(witness.contains(&0), "witness edge must contain vertex 0");
    assert_eq!(witness.len(), 2);
}

#[test]
fn sidecar_weights_override_the_flag() {
    let out = perfdiv(
        &["omega", "--weights", "9,9,9,9,9"],
        "Dhc\t[2,1,1,1,1]\n",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["result"]["omega"], 3);
}

#[test]
fn check_equivalence_on_c5_is_clean() {
    let out = perfdiv(&["check-equivalence", "--wmax", "2"], "Dhc\n");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs[0]["result"]["violations"], 0);
    assert_eq!(recs[0]["result"]["weights_tested"], 32);
}

#[test]
fn bad_graph6_is_reported_inline_and_exits_two() {
    let out = perfdiv(&["omega"], "A_\n!!!bogus\nA_\n");
    assert_eq!(out.status.code(), Some(2));
    let recs = records(&out);
    assert_eq!(recs.len(), 3, "stream continues past the bad line");
    assert!(recs[1].get("error").is_some());
    assert_eq!(recs[2]["result"]["omega"], 2);
}

#[test]
fn weight_length_mismatch_is_a_parse_error() {
    let out = perfdiv(&["omega", "--weights", "1,2"], "Dhc\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(records(&out)[0]["error"]
        .as_str()
        .unwrap()
        .contains("weights"));
}

#[test]
fn emitted_records_survive_verify() {
    let first = perfdiv(&["divide", "--weights", "2,1,1,1,2"], "Dhc\n");
    assert_eq!(first.status.code(), Some(0));
    let out = perfdiv(&["verify"], &String::from_utf8_lossy(&first.stdout));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["result"]["valid"], true);
}

#[test]
fn verify_catches_a_doctored_record() {
    let line = r#"{"graph6":"Dhc","n":5,"command":"chi","result":{"chi":2},"certificate":{"type":"coloring","colors":[0,1,0,1,0]}}"#;
    let out = perfdiv(&["verify"], &format!("{line}\n"));
    assert_eq!(out.status.code(), Some(1));
    let recs = records(&out);
    assert_eq!(recs[0]["result"]["valid"], false);
}

#[test]
fn substitute_k2_into_triangle_gives_k4() {
    let out = perfdiv(&["substitute", "--vertex", "1", "--with", "A_"], "Bw\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["result"]["graph6"], "C~");
}

#[test]
fn find_minimal_appends_a_summary_record() {
    let out = perfdiv(&["find-minimal"], "Dhc\nA_\n");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 3);
    let summary = &recs[2]["result"];
    assert_eq!(summary["examined"], 2);
    assert_eq!(summary["hits"], 0);
    assert_eq!(summary["vacuous"], true);
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("perfdiv-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let to_stdout = perfdiv(&["chi"], "Dhc\nA_\n");
    let to_file = perfdiv(&["chi", "--output", path.to_str().unwrap()], "Dhc\nA_\n");
    assert_eq!(to_file.status.code(), Some(0));
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
    std::fs::remove_file(&path).ok();
}

#[test]
fn timing_flag_adds_millis() {
    let plain = perfdiv(&["chi"], "Dhc\n");
    let timed = perfdiv(&["chi", "--timing"], "Dhc\n");
    assert!(records(&plain)[0].get("millis").is_none());
    assert!(records(&timed)[0].get("millis").is_some());
}
