use std::process::{Command, Output};

use flipclass::format::{load_coefficient_table, load_invariant_table};
use flipclass_core::rtilde::rtilde_oracle;
use flipclass_core::Permutation;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flipclass")).args(args).output().expect("spawn flipclass")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn rtilde_oracle_output() {
    let out = run(&["rtilde", "1234", "4321", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = rtilde_oracle(perm("1234"), perm("4321")).unwrap();
    assert_eq!(stdout(&out).trim(), expected.to_string());
    assert!(expected.is_monic());
    assert_eq!(expected.degree(), Some(6));
}

#[test]
fn rtilde_methods_agree() {
    let expected = rtilde_oracle(perm("123"), perm("321")).unwrap();
    let v = json(&["rtilde", "e", "w0", "--n", "3", "--method", "flipclass", "--h", "3"]);
    assert_eq!(v["result"], expected.coefficient(3));
    for (u, w) in [("1324", "4231"), ("12345", "24153"), ("21435", "35142")] {
        let r = rtilde_oracle(perm(u), perm(w)).unwrap();
        for method in ["dyer", "flipclass"] {
            let v = json(&["rtilde", u, w, "--method", method]);
            assert_eq!(v["result"], serde_json::json!(r.coefficients()), "[{u},{w}] {method}");
        }
    }
    let out = run(&["rtilde", "12345", "54321", "--verify", "--word", "1 2 1 3 2 1 4 3 2 1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("MISMATCH"));
}

#[test]
fn rtilde_of_equal_permutations_is_one() {
    let out = run(&["rtilde", "2413", "2413"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["rtilde", "1224", "4321"]).status.code(), Some(2));
    assert_eq!(run(&["rtilde", "4321", "1234"]).status.code(), Some(2));
    assert_eq!(run(&["rtilde", "123", "4321"]).status.code(), Some(2));
    assert_eq!(run(&["rtilde", "e", "w0"]).status.code(), Some(2));
    assert_eq!(run(&["rtilde", "e", "w0", "--n", "5", "--method", "flipclass", "--h", "7"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--h", "6"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn flipclasses_of_a_crown_interval() {
    let out = run(&["flipclasses", "e", "4231", "3"]);
    let text = stdout(&out);
    assert!(text.starts_with("2 3-flipclasses of [1234,4231]"), "{text}");
    assert_eq!(text.matches("t = (1,2,2,1), c = 1").count(), 2);
    let v = json(&["flipclasses", "1234", "4231", "3"]);
    assert_eq!(v["flipclasses"].as_array().unwrap().len(), 2);
    let dot = stdout(&run(&["flipclasses", "e", "4231", "3", "--emit", "dot"]));
    assert_eq!(dot.matches("digraph").count(), 4);
}

#[test]
fn full_length_intervals_have_one_flipclass() {
    for (u, v) in [("1324", "3421"), ("12345", "35142"), ("e", "w0")] {
        let (pu, pv) = flipclass::cli::parse_pair(u, v, Some(if u == "e" { 4 } else { v.len() })).unwrap();
        let gap = (pv.length() - pu.length()).to_string();
        let out = run(&["flipclasses", u, v, &gap, "--n", &pu.degree().to_string(), "--emit", "tvec"]);
        assert_eq!(stdout(&out).lines().count(), 1, "[{u},{v}]");
    }
}

#[test]
fn classify_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let v = json(&["classify", "--h", "3", "--workers", "1", "--out", out_dir]);
    let levels = v.as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert_eq!(levels[2]["flipclasses"], 50);
    assert_eq!(levels[2]["good"], true);
    let table = load_coefficient_table(dir.path(), 3).unwrap().unwrap();
    assert_eq!(table.len(), 4);
    let records = load_invariant_table(dir.path(), 3).unwrap().unwrap();
    assert_eq!(records.records().map(|r| r.multiplicity).sum::<u64>(), 50);
    assert!(dir.path().join("summary.json").exists());
}

#[test]
fn classify_is_deterministic_across_workers() {
    let strip = |mut v: Value| {
        for level in v.as_array_mut().unwrap() {
            level.as_object_mut().unwrap().remove("seconds");
        }
        v
    };
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let a = json(&["classify", "--h", "4", "--workers", "1", "--out", d1.path().to_str().unwrap()]);
    let b = json(&["classify", "--h", "4", "--workers", "3", "--out", d2.path().to_str().unwrap()]);
    assert_eq!(strip(a), strip(b));
    for name in ["ac4.tsv", "ac4-records.tsv"] {
        assert_eq!(std::fs::read(d1.path().join(name)).unwrap(), std::fs::read(d2.path().join(name)).unwrap());
    }
}

#[test]
fn classify_other_degree() {
    let v = json(&["classify", "--h", "2", "--n", "4"]);
    assert_eq!(v["n"], 4);
    assert!(v["flipclasses"].as_u64().unwrap() > 4);
}

#[test]
fn probe_finds_no_counterexample_at_h4() {
    let v = json(&["probe-conjecture", "--h", "4", "--workers", "1"]);
    assert_eq!(v["flipclasses"], 1096);
    assert_eq!(v["counterexamples"], 0);
    assert_eq!(v["budget_exhausted"], false);
}

#[test]
fn fast_suite_passes() {
    let out = run(&["verify", "--suite", "fast", "--workers", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("[PASS] 9. even-gap intervals of S5"));
}
