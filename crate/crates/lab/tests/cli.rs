use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use thomason_core::simplicial::{standard, StandardKind};
use thomason_lab::formats::{to_json, SsetDoc};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thomason-lab")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn homology_of_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("boundary.json");
    std::fs::write(&path, to_json(&SsetDoc::from_sset(&standard(StandardKind::Boundary(3)).unwrap()))).unwrap();
    let out = lab(&["homology", path.to_str().unwrap()]);
    assert!(out.status.success());
    let h = json_of(&out);
    assert_eq!(h["H"][0]["betti"], 1);
    assert_eq!(h["H"][1]["betti"], 0);
    assert_eq!(h["H"][2]["betti"], 1);
}

#[test]
fn dwyer_check_on_files() {
    let corner = lab(&["dwyer-check", data("square-corner.json").to_str().unwrap(), "--sub", "00,01,10"]);
    assert!(corner.status.success());
    let v = json_of(&corner);
    assert_eq!(v["status"], "refuted");
    assert_eq!(v["exhausted"], true);

    let face = lab(&["dwyer-check", data("cube.json").to_str().unwrap(), "--sub", "000,001,010,011"]);
    let v = json_of(&face);
    assert_eq!(v["status"], "certified");
    assert_eq!(v["retraction"]["111"], "011");

    let bad = lab(&["dwyer-check", data("cube.json").to_str().unwrap(), "--sub", "999"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn filtrations_from_files() {
    let monoid = lab(&["filtration", "monoid", data("z2-glued.json").to_str().unwrap(), "--stages", "3"]);
    assert!(monoid.status.success());
    let v = json_of(&monoid);
    assert_eq!(v["passed"], true);
    assert_eq!(v["stage_sizes"], v["oracle_sizes"]);

    let muro = lab(&["filtration", "muro", data("split-idempotent.json").to_str().unwrap(), "--stages", "2"]);
    assert!(muro.status.success());
    assert_eq!(json_of(&muro)["passed"], true);
}

#[test]
fn scenario_exit_codes() {
    let ok = lab(&["scenario", "raptis", "--format", "json"]);
    assert!(ok.status.success());
    assert_eq!(json_of(&ok)["scenario"], "raptis");

    // a one-node budget leaves the exhaustive refutation undecided
    let capped = lab(&["scenario", "raptis", "--budget", "1"]);
    assert_eq!(capped.status.code(), Some(1));
    let allowed = lab(&["scenario", "raptis", "--budget", "1", "--allow-unknown"]);
    assert!(allowed.status.success());

    assert_eq!(lab(&["scenario", "nope"]).status.code(), Some(2));
}
