use std::path::Path;
use std::process::{Command, Output};

use bmult_cli::report::{Report, SurveyReport, SCHEMA_VERSION};
use bmult_cli::run::{exit_for, EXIT_DISAGREEMENT, EXIT_OK};
use bmult_core::arith::AbelianInvariants;
use bmult_core::catalog;
use bmult_core::pcgroup::parse_presentation;

const FIXTURE_64: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/b0_nontrivial_64.pc");

fn bmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bmult"))
        .args(args)
        .env_remove("BMULT_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_report(args: &[&str]) -> Report {
    let o = bmult(args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn inv(orders: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_cyclic_orders(orders)
}

fn emit_to(dir: &Path, descriptor: &str, name: &str) {
    let path = dir.join(name);
    let o = bmult(&["catalog", "emit", descriptor, "-o", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn check_consistent_file() {
    let dir = tempfile::tempdir().unwrap();
    emit_to(dir.path(), "heisenberg?p=3", "h3.pc");
    let o = bmult(&["check", dir.path().join("h3.pc").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("consistent, order 27"));
}

#[test]
fn check_tampered_file_lists_overlap() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.pc");
    std::fs::write(&path, "gens: a b c\norder a 2\norder b 2\norder c 2\npow a = b\nconj b^a = b c\n").unwrap();
    let o = bmult(&["check", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["consistent"], false);
    let overlap = v["failures"][0]["overlap"].as_str().unwrap();
    assert!(overlap.contains('=') && overlap.contains('('), "{overlap}");
}

#[test]
fn missing_file_is_input_error() {
    let o = bmult(&["check", "/nonexistent/group.pc"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("/nonexistent/group.pc"));
    assert_eq!(code(&bmult(&["b0", "/nonexistent/group.pc"])), 1);
}

#[test]
fn syntax_error_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.pc");
    std::fs::write(&path, "gens: a\norder a two\n").unwrap();
    let o = bmult(&["b0", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("2:"), "{}", stderr(&o));
}

#[test]
fn b0_examples() {
    let r = json_report(&["b0", "catalog:phi8_32?p=5", "--json"]);
    assert_eq!(r.bogomolov, Some(inv(&[])));
    assert_eq!(r.order, "3125");

    let r = json_report(&["b0", "catalog:abelian?orders=2,2", "--method", "both", "--json"]);
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    assert_eq!(r.bogomolov, Some(inv(&[])));
    assert_eq!(r.multiplier, Some(inv(&[2])));
    assert_eq!(r.agreement, Some(true));

    let r = json_report(&["b0", FIXTURE_64, "--method", "both", "--bicyclic", "--json"]);
    assert_eq!(r.bogomolov, Some(inv(&[2])));
    assert_eq!(r.cocycle.unwrap().bicyclic_agrees, Some(true));
}

#[test]
fn multiplier_example() {
    for method in ["exterior", "cocycle", "both"] {
        let r = json_report(&["multiplier", "catalog:heisenberg?p=3", "--method", method, "--json"]);
        assert_eq!(r.multiplier, Some(inv(&[3, 3])), "{method}");
        assert_eq!(r.bogomolov, None);
        assert!(r.criterion.is_none());
    }
}

#[test]
fn resource_bounds_exit_4() {
    let o = bmult(&["b0", "catalog:heisenberg?p=5", "--method", "cocycle"]);
    assert_eq!(code(&o), 4);
    let o = bmult(&["b0", "catalog:abelian?orders=4,4", "--tail-exponent", "1"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("too small"));
    let o = bmult(&["b0", "catalog:heisenberg?p=3", "--max-order", "10"]);
    assert_eq!(code(&o), 4);
    let o = Command::new(env!("CARGO_BIN_EXE_bmult"))
        .args(["b0", "catalog:heisenberg?p=3"])
        .env("BMULT_MAX_ORDER", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);
}

#[test]
fn raised_oracle_bound_warns() {
    let o = bmult(&["multiplier", "catalog:heisenberg?p=5", "--method", "both", "--oracle-bound", "125"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
    assert!(stdout(&o).contains("Z/5 x Z/5"));
}

#[test]
fn inconsistent_catalog_variant_exits_2() {
    let o = bmult(&["b0", "catalog:phi7_2111br?p=5&r=2&literal=1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("(b2 b5) b1"));
}

#[test]
fn disagreement_exits_3() {
    let mut r = json_report(&["b0", "catalog:abelian?orders=2,2", "--method", "both", "--json"]);
    assert_eq!(exit_for(&r), EXIT_OK);
    r.agreement = Some(false);
    assert_eq!(exit_for(&r), EXIT_DISAGREEMENT);
}

#[test]
fn catalog_list_and_unknown_key() {
    let o = bmult(&["catalog", "list", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_array().unwrap().iter().map(|k| k["key"].as_str().unwrap()).collect();
    for k in catalog::KEYS {
        assert!(keys.contains(&k.name));
    }
    assert_eq!(code(&bmult(&["catalog", "emit", "nope?p=5"])), 1);
    assert_eq!(code(&bmult(&["b0", "catalog:nope"])), 1);
    assert_eq!(code(&bmult(&["b0", "catalog:phi5_2111?p=6"])), 1);
}

#[test]
fn catalog_emit_round_trips() {
    let o = bmult(&["catalog", "emit", "phi5_2111?p=5"]);
    assert_eq!(code(&o), 0);
    let parsed = parse_presentation(&stdout(&o)).unwrap();
    assert_eq!(parsed, catalog::entry("phi5_2111?p=5").unwrap().presentation);
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let args = ["b0", "catalog:dihedral?order=16", "--method", "both", "--bicyclic", "--json"];
    let a = bmult(&args);
    let b = bmult(&args);
    assert_eq!(a.stdout, b.stdout);
    let r: Report = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", stdout(&a));
    assert!(r.timing_ms.is_none());
    let t = json_report(&["b0", "catalog:dihedral?order=16", "--timing", "--json"]);
    assert!(t.timing_ms.unwrap().contains_key("total"));
}

#[test]
fn survey_counts_and_collects_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = bmult(&["survey", dir.path().to_str().unwrap(), "--json"]);
    let s: SurveyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((code(&o), s.summary.files, s.summary.nontrivial_bogomolov), (0, 0, 0));

    for (i, d) in ["phi5_2111?p=5", "phi8_32?p=5", "heisenberg?p=3"].iter().enumerate() {
        emit_to(dir.path(), d, &format!("g{i}.pc"));
    }
    std::fs::copy(FIXTURE_64, dir.path().join("z64.pc")).unwrap();
    std::fs::write(dir.path().join("broken.pc"), "gens: a\n").unwrap();
    let args = ["survey", dir.path().to_str().unwrap(), "--json"];
    let o = bmult(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s: SurveyReport = serde_json::from_str(&stdout(&o)).unwrap();
    let files: Vec<&str> = s.entries.iter().map(|e| e.file.as_str()).collect();
    assert_eq!(files, ["broken.pc", "g0.pc", "g1.pc", "g2.pc", "z64.pc"]);
    assert_eq!(s.summary.files, 5);
    assert_eq!(s.summary.errors, 1);
    assert_eq!(s.entries[0].error.as_ref().unwrap().exit_code, 1);
    assert_eq!(s.summary.nontrivial_bogomolov, 1);
    assert_eq!(bmult(&args).stdout, o.stdout);
}
