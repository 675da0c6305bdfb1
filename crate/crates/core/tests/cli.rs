//! End-to-end runs of the command-line binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fermion_map::planner::TransformPlan;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermion-map")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_passes_with_exit_zero() {
    let o = run(&["verify", "--code", "surface", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verification: PASS"));
    let o = run(&["verify", "--code", "toric", "--d", "6", "--strings", "50", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--code", "toric", "--d", "5"][..],
        &["verify", "--code", "surface", "--d", "4"],
        &["verify", "--code", "hexagon", "--d", "3"],
        &["apply", "--code", "surface", "--d", "3", "--pauli", "XYZ"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).trim().is_empty(), "{args:?}");
    }
}

#[test]
fn plan_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plan.json");
    let o = run(&["plan", "--code", "toric", "--d", "4", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&file).unwrap();
    let plan: TransformPlan = serde_json::from_str(&text).unwrap();
    assert_eq!(plan, fermion_map::plan(&fermion_map::build_toric_code(4).unwrap()).unwrap());

    let o = run(&["verify", "--in", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["apply", "--in", path_str(&file), "--pauli", "+ZZZZIIIIIIIIIIII"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["apply", "--in", path_str(&file), "--pauli", "-XIIIIIIIIIIIIIII"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn malformed_plan_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, "{\"schema_version\": 1, \"steps\": [").unwrap();
    let o = run(&["verify", "--in", path_str(&file)]);
    assert_eq!(o.status.code(), Some(2));
    let missing: PathBuf = dir.path().join("absent.json");
    assert_eq!(run(&["verify", "--in", path_str(&missing)]).status.code(), Some(2));
}

#[test]
fn mutated_plan_fails_verification_without_passing_output() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("mutant.json");
    let mut plan = fermion_map::plan(&fermion_map::build_surface_code(3).unwrap()).unwrap();
    plan.steps.remove(0);
    std::fs::write(&file, serde_json::to_string_pretty(&plan).unwrap()).unwrap();
    let o = run(&["verify", "--in", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stdout(&o).contains("PASS"), "{}", stdout(&o));
    assert!(stderr(&o).contains("check failed"));
}

#[test]
fn spectrum_csv_counts_every_state() {
    let o = run(&["spectrum", "--code", "toric", "--d", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("energy,degeneracy"));
    let rows: Vec<(i64, u128)> = lines
        .map(|l| {
            let (e, g) = l.split_once(',').unwrap();
            (e.parse().unwrap(), g.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 9);
    assert_eq!(rows.iter().map(|r| r.1).sum::<u128>(), 1 << 16);
    assert_eq!(rows[0], (-16, 4));
}

#[test]
fn render_to_file_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("toric.svg");
    let o = run(&["render", "--code", "toric", "--d", "6", "--out", path_str(&file)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/toric_d6.svg");
    assert_eq!(std::fs::read_to_string(file).unwrap(), std::fs::read_to_string(golden).unwrap());
}

#[test]
fn entanglement_reports_flat_levels() {
    let o = run(&["entanglement", "--code", "surface", "--d", "3", "--random", "5", "--seed", "11", "--dense"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).is_empty());
}
