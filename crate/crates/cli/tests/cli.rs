use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ssc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssc")).args(args).output().expect("run ssc")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn norm1_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n1.json");
    let out = ssc(&["--json", "construct", "norm1", "--q", "2", "--k", "3", "--r", "2", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["report"]["size"], 7);

    let out = ssc(&["--json", "verify", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let rep = &json_of(&out)["report"];
    assert_eq!(rep["valid"], true);
    assert_eq!(rep["minDistance"], 6);
    assert_eq!(rep["boundComparisons"]["upperBasic"]["met"], true);

    let out = ssc(&["--json", "verify", path(&file), "--standard-u", "3"]);
    assert_eq!(json_of(&out)["report"]["u"], 3);
}

#[test]
fn multilevel_has_five_codewords() {
    let out = ssc(&["--json", "construct", "multilevel", "--q", "2", "--k", "3", "--r", "2", "--u", "3"]);
    assert_eq!(out.status.code(), Some(0));
    // without --out the code file goes to stdout
    let file = json_of(&out);
    assert_eq!(file["codewords"].as_array().unwrap().len(), 5);
    let summary: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(summary["report"]["valid"], true);
}

#[test]
fn construction_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&a, &b] {
        let args = ["construct", "multilevel", "--q", "2", "--k", "3", "--r", "3", "--u", "4", "--method", "greedy", "--seed", "9", "--out", path(f)];
        assert_eq!(ssc(&args).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn corrupt_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"header\": 3}").unwrap();
    let out = ssc(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert_eq!(ssc(&["bounds", "--q", "4", "--k", "2", "--r", "2", "--u", "2"]).status.code(), Some(2));
}

#[test]
fn duplicates_are_reported_and_invalid_codes_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n1.json");
    ssc(&["construct", "norm1", "--q", "2", "--k", "3", "--r", "2", "--out", path(&file)]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let words = v["codewords"].as_array_mut().unwrap();
    words.push(words[0].clone());
    let labels = v["provenance"].as_array_mut().unwrap();
    labels.push(labels[0].clone());
    std::fs::write(&file, v.to_string()).unwrap();
    let out = ssc(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));

    // each codeword meets U in a line only
    let out = ssc(&["verify", path(&file), "--l", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bounds_report() {
    let out = ssc(&["--json", "bounds", "--q", "2", "--k", "3", "--r", "2", "--u", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["upperBasic"], 7);
    assert_eq!(v["multilevelCells2k"]["value"], 5);
    assert_eq!(v["lowerMultilevel"]["conjectural"], true);
    let out = ssc(&["--json", "bounds", "--q", "2", "--k", "3", "--r", "2", "--u", "3", "--l", "2", "--t", "1"]);
    let v = json_of(&out);
    assert!(v["upperBasic"].is_null());
}

#[test]
fn compare_shows_strict_gap() {
    let out = ssc(&["--json", "compare", "--q", "2", "--k", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["codes"]["norm1"]["size"], 7);
    assert_eq!(v["codes"]["scattered"]["size"], 7);
    assert_eq!(v["codes"]["multilevel"]["size"], 5);
    assert_eq!(v["strict"], true);
}

#[test]
fn enumerate_and_demo() {
    let out = ssc(&["--json", "enumerate", "--q", "3", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["total"], 130);
    assert_eq!(ssc(&["demo"]).status.code(), Some(0));
}
