use std::path::PathBuf;
use std::process::{Command, Output};

fn manifest(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../manifests");
    root.join(rel).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafmult")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("leafmult-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn check_accepts_a_flat_model() {
    let o = run(&["check", "--manifest", &manifest("bound/transversal.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("commute     true"));
}

#[test]
fn check_rejects_bad_fields() {
    let o = run(&["check", "--manifest", &manifest("invalid/noncommuting.json")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("do not commute"));
    let o = run(&["check", "--manifest", &manifest("invalid/singular-point.json")]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("singular"));
}

#[test]
fn parse_errors_exit_one() {
    for cmd in ["check", "bound"] {
        let o = run(&[cmd, "--manifest", &manifest("invalid/bad-polynomial.json")]);
        assert_eq!(code(&o), 1, "{}", cmd);
    }
    let o = run(&["bound", "--manifest", "/nonexistent/manifest.json"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn bound_writes_a_trace_that_verifies() {
    let trace = scratch("common-line.json");
    let t = trace.to_string_lossy().into_owned();
    let o = run(&["bound", "--manifest", &manifest("bound/common-line.toml"), "--trace", &t]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("status point-excluded  bound 16  direct 2"));
    let v = run(&["verify", "--from-trace", &t]);
    assert_eq!(code(&v), 0, "{}", stdout(&v));
    assert!(stdout(&v).contains("pass"));

    // a tampered bound no longer verifies
    let text = std::fs::read_to_string(&trace).unwrap();
    let bad = scratch("common-line-tampered.json");
    std::fs::write(&bad, text.replace("\"bound\": 16", "\"bound\": 3")).unwrap();
    let v = run(&["verify", "--from-trace", &bad.to_string_lossy()]);
    assert_eq!(code(&v), 4, "{}", stdout(&v));
}

#[test]
fn starved_budget_exits_three() {
    let o = run(&["bound", "--manifest", &manifest("bound/common-line.toml"), "--budget", "1"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("exhausted-budget"));
}

#[test]
fn verify_with_zero_cases_passes() {
    let o = run(&["verify", "--count", "0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = run(&["verify", "--suite", "no-such-suite"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn appendix_prints_the_witness() {
    let o = run(&["appendix", "--manifest", &manifest("appendix/double-line.toml")]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("H       t1^3"), "{}", s);
    assert!(s.contains("mu      2"));
    let o = run(&["appendix", "--manifest", &manifest("bound/transversal.json")]);
    assert_eq!(code(&o), 1);
}
