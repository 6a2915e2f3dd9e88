//! End-to-end tests of the installed binary: exit codes, output shapes,
//! and byte stability of structured output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_isoperturb")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn test_reference_pair_exits_zero_with_mapping() {
    let a = fixture("sample_a.el");
    let b = fixture("sample_b.el");
    let out = run(&[
        "test",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--eps",
        "paper",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("isomorphic"));
    assert!(text.contains("mapping: 1 3 4 5 6 2"));
}

#[test]
fn test_same_file_twice_exits_zero() {
    let a = fixture("sample_a.el");
    let out = run(&["test", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn test_k4_vs_c4_exits_one_with_reason() {
    let out = run(&[
        "test",
        fixture("k4.el").to_str().unwrap(),
        fixture("c4.el").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("degree sequence mismatch"));
}

#[test]
fn test_parse_error_exits_two() {
    let out = run(&["test", "/nonexistent.el", fixture("c4.el").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "test",
        fixture("sample_a.el").to_str().unwrap(),
        "/tmp/who.knows",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph6_files_are_accepted() {
    let g6 = fixture("k3.g6");
    let out = run(&["test", g6.to_str().unwrap(), g6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn trace_json_lines_is_byte_stable_and_versioned() {
    let a = fixture("sample_a.el");
    let b = fixture("sample_b.el");
    let args = [
        "trace",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--eps",
        "paper",
        "--format",
        "json-lines",
    ];
    let first = stdout(&run(&args));
    let second = stdout(&run(&args));
    assert_eq!(first, second, "structured output must be byte-stable");
    assert!(first.contains("\"record\":\"start\""));
    assert!(first.contains("\"version\":1"));
    assert!(first.contains("\"record\":\"verdict\""));
    assert!(!first.contains("wall_time_ms"));

    // Timings are opt-in and break stability on purpose.
    let mut with_timings = args.to_vec();
    with_timings.push("--timings");
    assert!(stdout(&run(&with_timings)).contains("wall_time_ms"));
}

#[test]
fn trace_human_shows_class_dynamics() {
    let out = run(&[
        "trace",
        fixture("sample_a.el").to_str().unwrap(),
        fixture("sample_b.el").to_str().unwrap(),
        "--eps",
        "paper",
    ]);
    let text = stdout(&out);
    assert!(text.contains("start: m_A = 2"));
    assert!(text.contains("classes: {1 6} {2 3 4 5}"));
    assert!(text.contains("iteration 4"));
    assert!(text.contains("assigned by signature matching: 5 6"));
}

#[test]
fn gen_writes_both_formats_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let el = dir.path().join("t.el");
    let g6 = dir.path().join("t.g6");
    for path in [&el, &g6] {
        let out = run(&[
            "gen",
            "--kind",
            "torus",
            "--rows",
            "3",
            "--cols",
            "4",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    // Both encode the same graph: test them against each other.
    let out = run(&["test", el.to_str().unwrap(), g6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gen_pair_produces_isomorphic_files() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("pair");
    let out = run(&[
        "gen",
        "--kind",
        "pair",
        "--base",
        "gnp",
        "--n",
        "8",
        "--seed",
        "5",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let a = dir.path().join("pair.a.el");
    let b = dir.path().join("pair.b.el");
    assert!(a.exists() && b.exists());
    let out = run(&["test", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hunt_small_run_exits_clean() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "hunt",
        "--n",
        "6",
        "--count",
        "8",
        "--seed",
        "3",
        "--dump-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("pairs: 8"));
    assert!(text.contains("reconstructibility counterexamples: 0"));
    assert!(text.contains("false positives: 0"));
}

#[test]
fn hunt_rejects_oversized_n() {
    let out = run(&["hunt", "--n", "11", "--count", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_csv() {
    let out = run(&[
        "bench",
        "--family",
        "complete",
        "--sizes",
        "4,5",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "family,n,seed,backend,verdict,verified,n0_iterations,avg_sweeps_per_solve,wall_ms"
    );
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("complete,4,1,exact,iso,true,3,"));
}

#[test]
fn bigfloat_backend_flag_works_end_to_end() {
    let out = run(&[
        "test",
        fixture("sample_a.el").to_str().unwrap(),
        fixture("sample_b.el").to_str().unwrap(),
        "--backend",
        "bigfloat",
        "--mantissa-bits",
        "80",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("mapping: 1 3 4 5 6 2"));
}
