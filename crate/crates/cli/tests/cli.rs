use std::process::{Command, Output};
use std::time::{Duration, Instant};

use mixcirc::SpectrumReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixcirc")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_integral_and_not() {
    let yes = run(&["check", "--n", "12", "--set", "1,5,6"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "integral");

    let no = run(&["check", "--n", "5", "--set", "1"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("not integral"));
}

#[test]
fn empty_set_is_integral() {
    let out = run(&["check", "--n", "7", "--set"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn ramanujan_sums() {
    let cases = [
        (vec!["rsum", "--kind", "s", "--n", "20", "--t", "5"], "8"),
        (vec!["rsum", "--kind", "s", "--n", "20", "--t", "5", "--closed"], "8"),
        (vec!["rsum", "--kind", "s", "--n", "8", "--t", "6"], "-4"),
        (vec!["rsum", "--kind", "c", "--n", "12", "--t", "0"], "4"),
        (vec!["rsum", "--kind", "c", "--n", "12", "--t", "6"], "-4"),
    ];
    for (args, expected) in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["check", "--n", "4", "--set", "4"],
        vec!["check", "--n", "4", "--set", "1,1"],
        vec!["check", "--n", "x", "--set", "1"],
        vec!["check", "--n", "1", "--set", ""],
        vec!["rsum", "--kind", "s", "--n", "6", "--t", "1"],
        vec!["rsum", "--kind", "c", "--n", "12", "--t", "1", "--closed"],
        vec!["rsum", "--kind", "s", "--n", "12", "--t", "1", "--closed"],
        vec!["cyclo", "--n", "6", "--factor", "1"],
        vec!["verify", "--max-n", "8", "--suite", "nope"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = run(&["check", "--n", "4", "--set", "4"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("element out of range"));
}

#[test]
fn enumerate_lists_and_counts() {
    let count = run(&["enumerate", "--n", "4", "--count-only"]);
    assert_eq!(stdout(&count).trim(), "8");
    let list = run(&["enumerate", "--n", "4"]);
    let mut sets: Vec<String> = stdout(&list).lines().map(String::from).collect();
    sets.sort();
    let mut expected: Vec<String> =
        ["{}", "{2}", "{1,3}", "{1,2,3}", "{1}", "{3}", "{1,2}", "{2,3}"].iter().map(|s| s.to_string()).collect();
    expected.sort();
    assert_eq!(sets, expected);
    assert!(String::from_utf8_lossy(&list.stderr).contains("k(4) = 8"));
}

#[test]
fn decompose_output() {
    let out = run(&["decompose", "--n", "12", "--set", "1,5,6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "D1: {6}\nD2: {1:CLASS1}\n");
    let none = run(&["decompose", "--n", "5", "--set", "1"]);
    assert_eq!(none.status.code(), Some(1));
}

#[test]
fn cyclotomic_output() {
    let out = run(&["cyclo", "--n", "8", "--factor", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().nth(1), Some("x^2 - i"));
    let out = run(&["cyclo", "--n", "4", "--factor", "1"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("x - i"));
}

#[test]
fn spectrum_json_round_trip() {
    let out = run(&["spectrum", "--n", "12", "--set", "1,5,6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SpectrumReport = serde_json::from_str(&stdout(&out)).unwrap();
    let exact: Vec<i64> = report.eigenvalues.iter().map(|e| e.exact.unwrap()).collect();
    assert_eq!(exact, [1, -3, 1, -5, 1, -3, 1, 1, 1, 3, 1, 1]);
    assert_eq!(report, SpectrumReport::build(&report.symbol_set().unwrap()).unwrap());
}

#[test]
fn export_dot_counts_edges() {
    let out = run(&["export-dot", "--n", "4", "--set", "1,2"]);
    let text = stdout(&out);
    assert!(text.starts_with("digraph circ_4 {"));
    assert_eq!(text.lines().filter(|l| l.contains("dir=none")).count(), 2);
    assert_eq!(text.lines().filter(|l| l.contains("->") && !l.contains("dir=none")).count(), 4);
}

#[test]
fn verify_passes_quickly() {
    let start = Instant::now();
    let out = run(&["verify", "--max-n", "32"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(start.elapsed() < Duration::from_secs(60));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}
