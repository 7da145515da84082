use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tortken"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run tortken")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    let path = manifest_dir().join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_golden(args: &[&str], file: &str) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}");
    assert_eq!(stdout(&o).trim_end(), golden(file).trim_end(), "{args:?} vs {file}");
}

#[test]
fn reproduce_matches_golden_files() {
    for t in ["matrix-m", "det54", "counterexample", "psi", "simplicity-table"] {
        assert_golden(&["reproduce", t], &format!("reproduce-{t}.txt"));
    }
}

#[test]
fn counterexample_line_is_exact() {
    let out = stdout(&run(&["reproduce", "counterexample"]));
    assert!(out
        .lines()
        .any(|l| l == "f(x^(0),x^(1),x^(2),x^(6)) = -1  [p=3,k=0,l=1,m=2]"));
}

#[test]
fn algebra_show_and_deg4_system_match_golden() {
    assert_golden(
        &["algebra", "show", "--builtin", "gametic", "--dim", "3"],
        "algebra-show-gametic-3.txt",
    );
    assert_golden(&["idspace", "--deg4-system"], "idspace-deg4-system.txt");
}

#[test]
fn gametic_rows_are_constant() {
    let out = stdout(&run(&["algebra", "show", "--builtin", "gametic", "--dim", "3"]));
    let rows: Vec<Vec<&str>> = out
        .lines()
        .filter(|l| l.starts_with('e'))
        .map(|l| l.split_whitespace().skip(1).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| *r == rows[0]));
}

#[test]
fn validate_reports_novikov_ok() {
    let o = run(&[
        "algebra", "validate", "--builtin", "osborn", "--p", "3", "--m", "1", "--alpha", "1",
        "--beta", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "novikov: OK"));
}

#[test]
fn check_exit_codes() {
    let holds = run(&[
        "check", "--identity", "tortken", "--builtin", "osborn-plus", "--p", "3", "--m", "2",
        "--alpha", "1", "--beta", "1",
    ]);
    assert_eq!(holds.status.code(), Some(0));
    assert!(stdout(&holds).contains("verdict: holds"));

    let fails = run(&[
        "check", "--identity", "sokolov", "--builtin", "osborn-plus", "--p", "3", "--m", "1",
        "--alpha", "1", "--beta", "0",
    ]);
    assert_eq!(fails.status.code(), Some(1));
    assert!(stdout(&fails).contains("witness: f("));

    let windowed = run(&[
        "check", "--identity", "tortken", "--builtin", "integration", "--N", "12", "--range",
        "0..3",
    ]);
    assert_eq!(windowed.status.code(), Some(0));
    assert!(stdout(&windowed).contains("window-relative"));
}

#[test]
fn empty_range_is_inconclusive() {
    // Degree 12 alone: every product of two such elements leaves the window.
    let o = run(&[
        "check", "--identity", "tortken", "--builtin", "integration", "--N", "12", "--range",
        "12..12",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
}

#[test]
fn expressions_and_seeds() {
    let o = run(&[
        "check", "--expr", "a*b - b*a", "--builtin", "random-commutative", "--dim", "3", "--p",
        "5", "--seed", "7", "--trials", "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# tortken check seed=7 trials=5\n"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("tortken-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind": "structure_constants", "field": {"char": 5}, "dim": 2, "table": [[0, 1, 7]]}"#,
    )
    .unwrap();
    let o = run(&["algebra", "show", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.table[0]"));

    let o = run(&["idspace", "--degree", "6", "--builtin", "gametic", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DegreeOutOfRange"));

    assert_eq!(run(&["check", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--identity", "nope", "--builtin", "lie2"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn idspace_on_laurent_window() {
    let o = run(&[
        "idspace", "--degree", "3", "--builtin", "osborn-laurent", "--alpha", "0", "--beta", "0",
        "--window", "-4..8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rank: usize = out
        .lines()
        .find_map(|l| l.strip_prefix("rank "))
        .expect("rank line")
        .parse()
        .unwrap();
    assert!(rank >= 3);
}

#[test]
fn substitutions_file() {
    let dir = std::env::temp_dir().join(format!("tortken-subs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("subs.json");
    std::fs::write(
        &f,
        r#"{"substitutions": [["x^(1)", "x^(0)"], [{"x^(0)": 1, "x^(1)": "2"}, "x^(1)"]]}"#,
    )
    .unwrap();
    let o = run(&[
        "idspace", "--degree", "2", "--builtin", "divided-power", "--p", "3", "--m", "1",
        "--basis", "multilinear", "--substitutions", f.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("rank 1"));
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = manifest_dir().join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, args: &[&str]) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let o = run(&full);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    let validator = schema(schema_name);
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
}

#[test]
fn json_outputs_match_schemas() {
    let osborn = ["--builtin", "osborn-plus", "--p", "3", "--m", "1", "--alpha", "0", "--beta", "1"];
    let with = |head: &[&'static str]| -> Vec<&'static str> {
        head.iter().copied().chain(osborn).collect()
    };
    assert_valid("check", &with(&["check", "--identity", "tortken"]));
    assert_valid("check", &with(&["check", "--identity", "sokolov"]));
    assert_valid(
        "check",
        &["check", "--identity", "tortken", "--builtin", "integration", "--N", "8", "--range", "0..2"],
    );
    assert_valid("algebra-show", &with(&["algebra", "show"]));
    assert_valid(
        "algebra-show",
        &["algebra", "show", "--builtin", "integration", "--N", "4"],
    );
    assert_valid("algebra-validate", &with(&["algebra", "validate"]));
    assert_valid("simplicity", &with(&["simplicity"]));
    assert_valid("idspace", &["idspace", "--deg4-system"]);
    assert_valid("idspace", &with(&["idspace", "--degree", "3"]));
    for t in ["matrix-m", "det54", "counterexample", "tortken-prime", "simplicity-table", "psi"] {
        assert_valid("reproduce", &["reproduce", t]);
    }
}

#[test]
fn schemas_reject_malformed_reports() {
    let v: Value = serde_json::json!({"command": "check", "seed": 0, "trials": 64});
    assert!(!schema("check").is_valid(&v));
    assert!(Path::new(&manifest_dir().join("schemas/reproduce.schema.json")).exists());
}

#[test]
fn outputs_are_deterministic() {
    let args = ["check", "--identity", "tortken", "--builtin", "random-commutative", "--dim", "3", "--p", "5", "--seed", "1"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}
