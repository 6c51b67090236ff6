use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orient6"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn orient6")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/h4_t5.dat")
}

fn normalize(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("//"))
        .map(|l| format!("{}\n", l.trim_end()))
        .collect()
}

#[test]
fn lists_twelve_five_tournaments() {
    let o = run(&["tourn", "list", "-k", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
}

#[test]
fn hom_check_exit_codes() {
    let h4 = fixture("h4.graph");
    let none = run(&["hom", "check", "-g", h4.to_str().unwrap(), "-t", "T5"]);
    assert_eq!(none.status.code(), Some(1));
    assert!(stdout(&none).starts_with("NONE"));

    let found = run(&["hom", "check", "-g", h4.to_str().unwrap(), "-t", "T2"]);
    assert_eq!(found.status.code(), Some(0));
    assert!(stdout(&found).contains("valid: true"));

    let bad = run(&["hom", "check", "-g", h4.to_str().unwrap(), "-t", "T13"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = run(&["hom", "check", "-g", "/nonexistent/graph", "-t", "T1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn hom_check_json() {
    let h4 = fixture("h4.graph");
    let o = run(&[
        "--json",
        "hom",
        "check",
        "-g",
        h4.to_str().unwrap(),
        "-t",
        "T3",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "FOUND");
    assert_eq!(v["valid"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 18);
}

#[test]
fn export_opl_matches_golden() {
    let h4 = fixture("h4.graph");
    let o = run(&["export-opl", "-g", h4.to_str().unwrap(), "-t", "T5"]);
    assert!(o.status.success());
    let expected = fs::read_to_string(golden()).unwrap();
    assert_eq!(normalize(&stdout(&o)), normalize(&expected));
}

#[test]
fn export_opl_model() {
    let o = run(&["export-opl", "--model"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dvar int phi[j in Vertices];"));
}

#[test]
fn prop1_on_a6_and_t5() {
    let o = run(&["prop1", "-t", "A6", "--include-equal"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("holds: true (288 cases"));
    let o = run(&["prop1", "-t", "T5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn color_random_grid() {
    let o = run(&["--json", "color", "-m", "4", "-n", "3", "--seed", "9"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn hex_gen_round_trips_through_color() {
    let o = run(&["hex", "gen", "-m", "3", "-n", "2", "--seed", "4"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.graph");
    fs::write(&path, &o.stdout).unwrap();
    let c = run(&["color", "-m", "3", "-n", "2", "-g", path.to_str().unwrap()]);
    assert!(c.status.success());
    assert!(stdout(&c).ends_with("valid: true\n"));
}

#[test]
fn chi_o_of_h4() {
    let h4 = fixture("h4.graph");
    let o = run(&["chi-o", "-g", h4.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn tournament_queries() {
    let o = run(&["tourn", "canon", "T5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("5:"));
    let o = run(&["--json", "tourn", "ds", "T5"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["multiset"].as_array().unwrap().len(), 5);
}

fn report(args: &[&str]) -> (Option<i32>, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut all = vec!["verify-paper", "--out", out.to_str().unwrap()];
    all.extend_from_slice(args);
    let o = run(&all);
    let v = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    (o.status.code(), v)
}

#[test]
fn verify_paper_report_schema() {
    let (code, v) = report(&[]);
    assert_eq!(code, Some(0));
    assert_eq!(v["schema"], "orient6-report/1");
    assert_eq!(v["overall"], "PASS");
    let checks = v["checks"].as_array().unwrap();
    for c in checks {
        for key in [
            "name",
            "mandatory",
            "inputs",
            "verdict",
            "details",
            "wall_ms",
        ] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"hom_h4_t5"));
    assert!(names.contains(&"lower_bound"));
    assert_eq!(
        names.iter().filter(|n| n.starts_with("hom_h49_t")).count(),
        12
    );
}

#[test]
fn exact_verdicts_do_not_depend_on_the_seed() {
    let verdicts = |v: &Value| -> Vec<(String, String)> {
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| !c["name"].as_str().unwrap().contains("sampled"))
            .map(|c| (c["name"].to_string(), c["verdict"].to_string()))
            .collect()
    };
    let (_, a) = report(&["--seed", "1"]);
    let (_, b) = report(&["--seed", "12345"]);
    assert_ne!(a["seeds_used"], b["seeds_used"]);
    assert_eq!(verdicts(&a), verdicts(&b));
}

#[test]
fn tampered_h49_fails_verification() {
    let text = fs::read_to_string(fixture("h49.graph")).unwrap();
    // reverse the first arc line
    let mut flipped = false;
    let mut header_seen = false;
    let lines: Vec<String> = text
        .lines()
        .map(|l| {
            let fields: Vec<&str> = l.split_whitespace().collect();
            if l.starts_with('#') || fields.len() != 2 || flipped {
                return l.to_string();
            }
            if !header_seen {
                header_seen = true;
                return l.to_string();
            }
            flipped = true;
            format!("{} {}", fields[1], fields[0])
        })
        .collect();
    assert!(flipped);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h49.graph");
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let o = run(&["verify-paper", "--h49", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("failed: fixture_h49"));
}
