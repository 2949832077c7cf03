mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use common::WIELICZKA;
use pbkit::cli::{run, EXIT_CANT_CREATE, EXIT_INVALID, EXIT_NO_INPUT, EXIT_OK, EXIT_UNUSABLE, EXIT_USAGE};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn pbkit(args: &[&str]) -> Run {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("pbkit").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    Run {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn with_file(name: &str, contents: &str) -> (TempDir, String) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join(name);
    fs::write(&path, contents).unwrap();
    (dir, path.to_str().unwrap().to_string())
}

fn wieliczka_file() -> (TempDir, String) {
    with_file("wieliczka.pb", WIELICZKA)
}

#[test]
fn validate_exit_codes() {
    let (_dir, path) = wieliczka_file();
    let ok = pbkit(&["validate", &path]);
    assert_eq!(ok.code, EXIT_OK);
    assert_eq!(ok.stdout, "0 errors, 0 warnings\n");

    let (_dir, path) = with_file("bad.pb", &WIELICZKA.replace("num_votes; 10", "num_votes; 9"));
    let bad = pbkit(&["validate", &path]);
    assert_eq!(bad.code, EXIT_INVALID);
    assert!(bad.stdout.starts_with("ERROR COUNT_VOTES meta:"), "{}", bad.stdout);
    assert!(bad.stdout.ends_with("1 errors, 0 warnings\n"));

    let (_dir, path) = with_file("broken.pb", &WIELICZKA.replace("PROJECTS", "PROJECT"));
    let broken = pbkit(&["validate", &path]);
    assert_eq!(broken.code, EXIT_UNUSABLE);
    assert!(
        broken
            .stderr
            .contains("error SectionMissing: section PROJECTS is missing"),
        "{}",
        broken.stderr
    );

    let missing = pbkit(&["validate", "/definitely/not/here.pb"]);
    assert_eq!(missing.code, EXIT_NO_INPUT);
}

#[test]
fn warnings_alone_exit_zero() {
    let (_dir, path) = with_file(
        "w.pb",
        &WIELICZKA.replace("rule; greedy", "rule; greedy\ncurrency; PLN"),
    );
    let r = pbkit(&["validate", &path]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("WARNING META_UNKNOWN_KEY"));
}

#[test]
fn validate_json() {
    let (_dir, path) = with_file("bad.pb", &WIELICZKA.replace("num_votes; 10", "num_votes; 9"));
    let r = pbkit(&["validate", &path, "--format", "json"]);
    assert_eq!(r.code, EXIT_INVALID);
    let json: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(json["violations"][0]["code"], "COUNT_VOTES");
}

#[test]
fn outcome_text_and_json() {
    let (_dir, path) = wieliczka_file();
    let text = pbkit(&["outcome", &path]);
    assert_eq!(text.code, EXIT_OK);
    assert!(text.stdout.contains("funded: 4, 5\n"));
    assert!(text.stdout.contains("spent: 2400 of 2500\n"));

    let json = pbkit(&[
        "outcome",
        &path,
        "--format",
        "json",
        "--variant",
        "stop",
        "--tie-break",
        "cost",
    ]);
    assert_eq!(json.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["funded"], serde_json::json!(["4", "5"]));
    assert_eq!(v["variant"], "stop_at_first_unaffordable");
    assert_eq!(v["tie_break"], "by_cost_ascending_then_id");
    assert_eq!(v["remaining"], "100");
    assert_eq!(v["scores"]["4"], "6");

    let (_dir, path) = with_file("bad.pb", &WIELICZKA.replace("num_votes; 10", "num_votes; 9"));
    let refused = pbkit(&["outcome", &path]);
    assert_eq!(refused.code, EXIT_UNUSABLE);
    assert!(refused.stderr.contains("COUNT_VOTES"));
}

#[test]
fn info() {
    let (_dir, path) = wieliczka_file();
    let r = pbkit(&["info", &path]);
    assert_eq!(r.code, EXIT_OK);
    assert!(
        r.stdout.contains("vote length: min 1, max 3, mean 2.2\n"),
        "{}",
        r.stdout
    );
    let j = pbkit(&["info", &path, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["num_votes"], 10);
    assert_eq!(v["categories"]["sport"], 2);
}

#[test]
fn canonicalize_is_idempotent() {
    let (dir, path) = wieliczka_file();
    let first = pbkit(&["canonicalize", &path]);
    assert_eq!(first.code, EXIT_OK);
    assert_ne!(first.stdout, WIELICZKA, "the sample has trailing spaces to remove");

    let out = dir.path().join("canon.pb");
    let out = out.to_str().unwrap();
    assert_eq!(pbkit(&["canonicalize", &path, "-o", out]).code, EXIT_OK);
    assert_eq!(fs::read_to_string(out).unwrap(), first.stdout);
    let second = pbkit(&["canonicalize", out]);
    assert_eq!(second.stdout.as_bytes(), first.stdout.as_bytes());

    let unwritable = pbkit(&["canonicalize", &path, "-o", "/definitely/not/here/out.pb"]);
    assert_eq!(unwritable.code, EXIT_CANT_CREATE);
}

#[test]
fn generate_is_deterministic() {
    let args = [
        "generate",
        "--vote-type",
        "cumulative",
        "--num-projects",
        "6",
        "--num-votes",
        "12",
        "--seed",
        "42",
    ];
    let a = pbkit(&args);
    let b = pbkit(&args);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let c = pbkit(&[
        "generate",
        "--vote-type",
        "cumulative",
        "--num-projects",
        "6",
        "--num-votes",
        "12",
        "--seed",
        "43",
    ]);
    assert_ne!(a.stdout, c.stdout);

    let (_dir, path) = with_file("gen.pb", &a.stdout);
    assert_eq!(pbkit(&["validate", &path]).code, EXIT_OK);
}

#[test]
fn generate_with_mutation_and_spec() {
    let r = pbkit(&[
        "generate",
        "--vote-type",
        "approval",
        "--seed",
        "3",
        "--mutation",
        "VOTE_LEN",
    ]);
    assert_eq!(r.code, EXIT_OK);
    let (_dir, path) = with_file("m.pb", &r.stdout);
    let v = pbkit(&["validate", &path]);
    assert_eq!(v.code, EXIT_INVALID);
    assert!(v.stdout.contains("VOTE_LEN"));

    let spec =
        r#"{"vote_type": "scoring", "num_projects": 4, "num_votes": 5, "seed": 9, "points": {"min": -3, "max": 3}}"#;
    let (_dir, spec_path) = with_file("spec.json", spec);
    let from_spec = pbkit(&["generate", "--spec", &spec_path]);
    assert_eq!(from_spec.code, EXIT_OK, "{}", from_spec.stderr);
    assert!(from_spec.stdout.contains("vote_type; scoring\n"));
    let overridden = pbkit(&["generate", "--spec", &spec_path, "--num-votes", "2"]);
    assert!(overridden.stdout.contains("num_votes; 2\n"));

    let inapplicable = pbkit(&["generate", "--vote-type", "approval", "--mutation", "SUM_POINTS"]);
    assert_eq!(inapplicable.code, EXIT_USAGE);
}

#[test]
fn usage_errors() {
    assert_eq!(pbkit(&[]).code, EXIT_USAGE);
    assert_eq!(pbkit(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(pbkit(&["validate"]).code, EXIT_USAGE);
    assert_eq!(pbkit(&["outcome", "x.pb", "--variant", "sideways"]).code, EXIT_USAGE);
    assert_eq!(
        pbkit(&["generate", "--vote-type", "approval", "--num-projects", "0"]).code,
        EXIT_USAGE
    );
    assert_eq!(pbkit(&["generate"]).code, EXIT_USAGE);
    assert_eq!(pbkit(&["--help"]).code, EXIT_OK);
}

#[test]
fn binary_end_to_end() {
    let (_dir, path) = wieliczka_file();
    let out = Command::new(env!("CARGO_BIN_EXE_pbkit"))
        .args(["outcome", &path])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("funded: 4, 5"));

    let out = Command::new(env!("CARGO_BIN_EXE_pbkit"))
        .args(["validate", Path::new("/nope.pb").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_NO_INPUT));
}
