//! End-to-end tests of the command-line interface: the exit-code contract,
//! byte-identical determinism, corpus self-verification, and construction.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_lie2forge");

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().expect("spawn lie2forge")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const NAMES: &[&str] = &[
    "abelian",
    "abelian_g3_phi",
    "heisenberg3",
    "kks_sl2",
    "sl2",
    "sl2_cartan_qlb",
    "sl2_string_lie2",
];

#[test]
fn examples_list_is_sorted_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = run(&["examples", "list"], dir.path());
    let b = run(&["examples", "list"], dir.path());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let names: Vec<&str> = std::str::from_utf8(&a.stdout).unwrap().lines().collect();
    assert_eq!(names, NAMES);
    let mut sorted = names.clone();
    sorted.sort_unstable();
    assert_eq!(names, sorted);
}

#[test]
fn every_example_verifies_under_its_default_suite() {
    let dir = tempfile::tempdir().unwrap();
    for name in NAMES {
        let emit = run(&["examples", "emit", name], dir.path());
        assert_eq!(code(&emit), 0, "emit {name}");
        let file = format!("{name}.json");
        let out = run(&["verify", &file], dir.path());
        assert_eq!(
            code(&out),
            0,
            "verify {name}:\n{}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    run(&["examples", "emit", "sl2_string_lie2"], dir.path());
    for format in ["text", "json"] {
        let a = run(
            &["verify", "sl2_string_lie2.json", "--format", format, "--seed", "7"],
            dir.path(),
        );
        let b = run(
            &["verify", "sl2_string_lie2.json", "--format", format, "--seed", "7"],
            dir.path(),
        );
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{format} output differs between runs");
    }
    let e1 = run(&["examples", "emit", "heisenberg3"], dir.path());
    let f1 = std::fs::read(dir.path().join("heisenberg3.json")).unwrap();
    let e2 = run(&["examples", "emit", "heisenberg3"], dir.path());
    let f2 = std::fs::read(dir.path().join("heisenberg3.json")).unwrap();
    assert_eq!(code(&e1), 0);
    assert_eq!(code(&e2), 0);
    assert_eq!(f1, f2);
}

#[test]
fn a_corrupted_structure_constant_exits_one_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    run(&["examples", "emit", "sl2_string_lie2"], dir.path());
    let path = dir.path().join("sl2_string_lie2.json");
    let text = std::fs::read_to_string(&path).unwrap();
    // [h,e] = 2e becomes 3e, breaking Jacobi and the pairing-derived 3-bracket
    let corrupted = text.replacen("\"2\"", "\"3\"", 1);
    assert_ne!(text, corrupted);
    std::fs::write(dir.path().join("corrupted_sl2.json"), corrupted).unwrap();
    let out = run(&["verify", "corrupted_sl2.json", "--suite", "linfty"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("witness"));
}

#[test]
fn malformed_input_and_unknown_names_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("malformed.json"), "{ not json").unwrap();
    assert_eq!(code(&run(&["verify", "malformed.json"], dir.path())), 2);
    std::fs::write(dir.path().join("wrongkind.json"), r#"{"kind":"mystery"}"#).unwrap();
    assert_eq!(code(&run(&["verify", "wrongkind.json"], dir.path())), 2);
    assert_eq!(code(&run(&["verify", "missing.json"], dir.path())), 2);
    assert_eq!(code(&run(&["examples", "emit", "unknown_example"], dir.path())), 2);
    run(&["examples", "emit", "sl2_cartan_qlb"], dir.path());
    let out = run(&["verify", "sl2_cartan_qlb.json", "--suite", "thm31"], dir.path());
    assert_eq!(code(&out), 2, "inapplicable suite is a usage error");
    let out = run(&["verify", "sl2_cartan_qlb.json", "--suite", "nonsense"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_writes_a_model_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    run(&["examples", "emit", "heisenberg3"], dir.path());
    let out = run(
        &["construct", "qp2group", "heisenberg3.json", "-o", "model.json"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let check = run(&["verify", "model.json"], dir.path());
    assert_eq!(code(&check), 0, "{}", String::from_utf8_lossy(&check.stdout));
    let a = std::fs::read(dir.path().join("model.json")).unwrap();
    run(&["construct", "qp2group", "heisenberg3.json", "-o", "model2.json"], dir.path());
    let b = std::fs::read(dir.path().join("model2.json")).unwrap();
    assert_eq!(a, b, "construction output is deterministic");
}

#[test]
fn construct_rejects_dimension_mismatches_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    // d has a 𝔤-row count that does not match the 𝔤 basis
    let bad = r#"{
  "kind": "weak_lie2",
  "v_basis": ["u"],
  "g_basis": ["e1", "e2"],
  "d": [["1"]],
  "bracket2_gg": {},
  "bracket2_gv": {},
  "bracket3": {}
}"#;
    std::fs::write(dir.path().join("bad.json"), bad).unwrap();
    let out = run(&["construct", "qp2group", "bad.json", "-o", "never.json"], dir.path());
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("never.json").exists());
}
