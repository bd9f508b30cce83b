use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn qss(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn build_hamming(dir: &TempDir) -> String {
    let path = dir.path().join("scheme.txt").to_string_lossy().into_owned();
    let o = qss(&[
        "build-scheme",
        "--in",
        &data("hamming8.mat"),
        "--dealer",
        "0",
        "--out",
        &path,
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

#[test]
fn analyze_code_reports_hamming() {
    let o = qss(&["analyze-code", "--in", &data("hamming8.mat")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("n: 8\n"));
    assert!(out.contains("k: 4\n"));
    assert!(out.contains("self-dual: yes\n"));
    assert!(out.contains("minimal codewords: 14\n"));
}

#[test]
fn field_flag_supplies_missing_header() {
    let dir = TempDir::new().unwrap();
    let bare = dir.path().join("bare.mat");
    fs::write(&bare, "2 4\n1 1 1 0\n0 1 2 1\n").unwrap();
    let bare = bare.to_string_lossy();
    let o = qss(&["analyze-code", "--in", &bare, "--field", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("self-dual: yes"));
    let o = qss(&["analyze-code", "--in", &bare]);
    assert_eq!(o.status.code(), Some(1));
    let o = qss(&[
        "analyze-code",
        "--in",
        &data("tetracode.mat"),
        "--field",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn build_scheme_stabilizer_matches_worked_example() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(build_hamming(&dir)).unwrap();
    let stab = text.split("stabilizer\n").nth(1).unwrap();
    let expected = "q 2\n6 14\n\
        1 0 0 0 1 1 1 0 0 0 0 0 0 0\n\
        0 1 0 1 0 1 1 0 0 0 0 0 0 0\n\
        0 0 1 1 1 1 0 0 0 0 0 0 0 0\n\
        0 0 0 0 0 0 0 1 0 0 0 1 1 1\n\
        0 0 0 0 0 0 0 0 1 0 1 0 1 1\n\
        0 0 0 0 0 0 0 0 0 1 1 1 1 0\n";
    assert!(stab.starts_with(expected), "{stab}");
}

#[test]
fn build_scheme_is_deterministic_and_matroid_input_agrees() {
    let a = qss(&["build-scheme", "--in", &data("hamming8.mat")]);
    let b = qss(&["build-scheme", "--in", &data("hamming8.mat")]);
    let c = qss(&["build-scheme", "--in", &data("hamming8.matroid")]);
    assert!(a.status.success() && c.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn plan_for_fano_triple() {
    let dir = TempDir::new().unwrap();
    let scheme = build_hamming(&dir);
    let o = qss(&["plan", "--scheme", &scheme, "--set", "1,2,7"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "target 1\nADD 1 2 1\nADD 1 7 1\nADD 1 1 2\nADD 1 1 7\n"
    );

    let o = qss(&["plan", "--scheme", &scheme, "--set", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "ERROR: set {1,2} is not authorized\n");
}

#[test]
fn verify_all_has_no_failures() {
    let dir = TempDir::new().unwrap();
    let scheme = build_hamming(&dir);
    let o = qss(&["verify", "--scheme", &scheme, "--all"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.ends_with("TOTAL 348 0\n"));
    assert!(out.starts_with("{1,2,7} recover:basis:0 PASS\n"));
    assert_eq!(out.lines().count(), 349);
    let again = qss(&["verify", "--scheme", &scheme, "--all"]);
    assert_eq!(again.stdout, o.stdout);
}

#[test]
fn verify_single_sets() {
    let dir = TempDir::new().unwrap();
    let scheme = build_hamming(&dir);
    let o = qss(&["verify", "--scheme", &scheme, "--set", "3,4,5,6"]);
    assert!(stdout(&o).ends_with("TOTAL 3 0\n"));
    let o = qss(&["verify", "--scheme", &scheme, "--set", "1,3,5"]);
    assert!(stdout(&o).ends_with("TOTAL 4 0\n"));
}

#[test]
fn tampered_scheme_is_rejected() {
    let dir = TempDir::new().unwrap();
    let scheme = build_hamming(&dir);
    let text = fs::read_to_string(&scheme)
        .unwrap()
        .replace("players 7\n1 2 7", "players 7\n1 2 6");
    fs::write(&scheme, text).unwrap();
    let o = qss(&["verify", "--scheme", &scheme, "--all"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("ERROR: "));
}

#[test]
fn list_access_on_tetracode() {
    let o = qss(&["list-access", "--in", &data("tetracode.mat")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "dealer 0\nplayers 3\n1 2\n1 3\n2 3\n");
}

#[test]
fn check_access_reports() {
    let o = qss(&["check-access", "--in", &data("fano.acc")]);
    let out = stdout(&o);
    assert!(out.contains("self-orthogonal: yes"));
    assert!(out.contains("self-dual: yes"));
    assert!(out.contains("forbidden minor: none"));
    assert!(out.contains("matroid related: yes"));
    assert!(out.contains("authorized sets: 64"));

    let o = qss(&["check-access", "--in", &data("gamma_a.acc")]);
    let out = stdout(&o);
    assert!(
        out.contains("forbidden minor: gamma_a (delete {}, contract {})"),
        "{out}"
    );
    assert!(out.contains("matroid related: no"));
}

#[test]
fn minors_contraction_example() {
    let o = qss(&["minors", "--in", &data("chain5.acc"), "--contract", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "players 5\nabsent 3\n1 2\n2 4\n4 5\n");
    let o = qss(&["minors", "--in", &data("fano.acc"), "--delete", "7"]);
    assert_eq!(stdout(&o), "players 6\n1 3 5\n1 4 6\n2 3 4\n2 5 6\n");
}

#[test]
fn matroid_info_outputs() {
    let o = qss(&[
        "matroid-info",
        "--in",
        &data("hamming8.mat"),
        "--dealer",
        "0",
    ]);
    let out = stdout(&o);
    assert!(out.contains("rank: 4\n"));
    assert!(out.contains("circuits: 14\n"));
    assert!(out.contains("identically self-dual: yes\n"));
    assert!(out.contains("induced access structure (dealer 0):\nplayers 7\n1 2 7\n"));

    let o = qss(&["matroid-info", "--in", &data("u13.matroid")]);
    let out = stdout(&o);
    assert!(out.contains("rank: 1\n") && out.contains("identically self-dual: no\n"));

    let o = qss(&["build-scheme", "--in", &data("u13.matroid")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qss(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qss(&["analyze-code"]).status.code(), Some(2));
    assert_eq!(qss(&["verify", "--scheme", "x"]).status.code(), Some(2));
    assert_eq!(
        qss(&["plan", "--scheme", "x", "--set", "1", "--bogus"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn help_lists_every_verb() {
    let out = stdout(&qss(&["--help"]));
    for verb in [
        "analyze-code",
        "build-scheme",
        "list-access",
        "check-access",
        "minors",
        "matroid-info",
        "plan",
        "verify",
    ] {
        assert!(out.contains(verb), "{verb}");
    }
}

#[test]
fn not_self_dual_code_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c.mat");
    fs::write(&p, "q 2\n1 3\n1 1 0\n").unwrap();
    let o = qss(&["build-scheme", "--in", &p.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "ERROR: code is not self-dual\n");
}
