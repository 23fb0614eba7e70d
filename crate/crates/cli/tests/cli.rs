use std::io::Write;
use std::process::{Command, Stdio};

use dualis::calculus::{builtin_calculus, BuiltinId, Calculus};
use dualis_cli::{run, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_dualis");

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn call_with(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code =
        run(std::iter::once("dualis").chain(args.iter().copied()), None, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call(args: &[&str]) -> (i32, String, String) {
    call_with(args, "")
}

#[test]
fn prove_exit_codes() {
    assert_eq!(call(&["prove", "--calculus", "SP", "|- p & ~p"]).0, EXIT_OK);
    assert_eq!(call(&["prove", "--calculus", "LJ", "|- p | ~p"]).0, EXIT_NEGATIVE);
    assert_eq!(call(&["prove", "--calculus", "LK", "p |- p"]).0, EXIT_OK);
    assert_eq!(call(&["prove", "--calculus", "LK", "|- forall x. P(x)"]).0, EXIT_USAGE);
}

#[test]
fn prove_json_checks() {
    let (code, out, _) = call(&["--emit", "json", "prove", "--calculus", "ANTI_LJ", "~(p & ~p) |-"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "proved");
    assert_eq!(v["proof"]["calculus"], "LJ°");
    assert_eq!(call_with(&["check", "-"], &out).0, EXIT_OK);
}

#[test]
fn contraction_flag() {
    let args = ["--contraction", "bounded:3", "prove", "--calculus", "LK", "|- p | ~p"];
    assert_eq!(call(&args).0, EXIT_OK);
}

#[test]
fn depth_env_is_a_default() {
    let goal = "|- (p -> q) -> ~q -> ~p";
    let invoke = |args: &[&str], env: Option<&str>| {
        let argv = std::iter::once("dualis").chain(args.iter().copied()).chain(["prove", "--calculus", "LK", goal]);
        run(argv, env.map(String::from), &mut std::io::empty(), &mut Vec::new(), &mut Vec::new())
    };
    assert_eq!(invoke(&[], Some("1")), 2);
    assert_eq!(invoke(&["--depth", "64"], Some("1")), EXIT_OK);
    assert_eq!(invoke(&[], Some("x")), EXIT_USAGE);
}

#[test]
fn dualize_text() {
    let (code, lk, _) = call(&["dualize", "LK", "--emit", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(lk.lines().any(|l| l.trim() == "¬L°: Θ,A ⊢ Γ / Θ ⊢ ¬A,Γ"), "{lk}");
    let (_, lj, _) = call(&["dualize", "LJ"]);
    assert!(lj.lines().next().unwrap().contains("antecedent ≤ 1"), "{lj}");
}

#[test]
fn dualize_twice_through_a_pipe() {
    let first = Command::new(BIN).args(["dualize", "LJ", "--emit", "json"]).output().unwrap();
    assert!(first.status.success());
    let mut second = Command::new(BIN)
        .args(["dualize", "-", "--emit", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    second.stdin.take().unwrap().write_all(&first.stdout).unwrap();
    let out = second.wait_with_output().unwrap();
    assert!(out.status.success());
    let back = Calculus::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(back, builtin_calculus(BuiltinId::Lj));
}

#[test]
fn dualize_rejects_bad_input() {
    assert_eq!(call(&["dualize", "NOPE"]).0, EXIT_USAGE);
    assert_eq!(call_with(&["dualize", "-"], "{\"name\": 3}").0, EXIT_USAGE);
}

#[test]
fn classify_labels() {
    for (f, want) in [("p | ~p", "Tautology"), ("p & ~p", "Contradiction"), ("(p -> q) -> p", "Contingent")] {
        let (code, out, _) = call(&["classify", f]);
        assert_eq!((code, out.trim()), (EXIT_OK, want));
    }
    assert_eq!(call(&["classify", "forall x. P(x)"]).0, EXIT_USAGE);
    assert_eq!(call(&["classify", "p &"]).0, EXIT_USAGE);
}

#[test]
fn mirror_swaps_sides() {
    let (code, out, _) = call(&["mirror", "p, q |- r"]);
    assert_eq!((code, out.trim()), (EXIT_OK, "r |- p, q"));
}

#[test]
fn check_fixtures() {
    let axiom = fixture("axiom.json");
    assert_eq!(call(&["check", &axiom]).0, EXIT_OK);
    assert_eq!(call(&["check", &axiom, "--calculus", "LK"]).0, EXIT_OK);
    assert_eq!(call(&["check", &axiom, "--calculus", "ANTI_LJ"]).0, EXIT_OK);
    assert_eq!(call(&["check", &fixture("forall_valid.json")]).0, EXIT_OK);
    let (code, out, _) = call(&["check", &fixture("forall_eigenvariable.json")]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert!(out.contains("eigenvariable"), "{out}");
    assert_eq!(call(&["check", &fixture("missing.json")]).0, EXIT_USAGE);
    assert_eq!(call_with(&["check", "-"], "not json").0, EXIT_USAGE);
}

#[test]
fn rules_lists_a_calculus() {
    let (code, out, _) = call(&["rules", "LK"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("LK: "));
    let (_, json, _) = call(&["rules", "SP", "--emit", "json"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["name"], "LK°");
}

#[test]
fn enumerate_reports_strict_inclusions() {
    let args = ["--emit", "json", "enumerate", "--max-size", "4", "--templates", "right", "--no-rows"];
    let (code, out, _) = call(&args);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["sequents"], 56842);
    assert_eq!(v["summary"]["disagreements"], 0);
    let inc = &v["summary"]["inclusions"];
    assert_eq!(inc[0]["first_witness"], "|- p | ~p");
    assert_eq!(inc[0]["violations"], 0);
    assert_eq!(inc[1]["violations"], 0);
    let sp = v["summary"]["calculi"]["SP"]["proved"].as_u64().unwrap();
    assert_eq!(sp, v["summary"]["oracle_mirror_valid"].as_u64().unwrap());

    let (_, again, _) = call(&args);
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("generated_at");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(&out), strip(&again));
}

#[test]
fn enumerate_left_template_witness() {
    let (code, out, _) = call(&["--emit", "json", "enumerate", "--templates", "left", "--calculi", "SP,ANTI_LJ"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let inc = &v["summary"]["inclusions"][0];
    assert_eq!((inc["sub"].as_str(), inc["first_witness"].as_str()), (Some("ANTI_LJ"), Some("p | ~p |-")));
    let row = v["rows"].as_array().unwrap().iter().find(|r| r["sequent"] == "p | ~p |-").unwrap();
    assert_eq!(
        (row["verdicts"]["SP"].as_str(), row["verdicts"]["ANTI_LJ"].as_str()),
        (Some("proved"), Some("refuted"))
    );
}

#[test]
fn enumerate_guard() {
    let (code, _, err) = call(&["enumerate", "--max-size", "5", "--templates", "right"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("1102320"), "{err}");
    assert_eq!(call(&["enumerate", "--atoms", "0"]).0, EXIT_USAGE);
    assert_eq!(call(&["enumerate", "--templates", "diagonal"]).0, EXIT_USAGE);
}
