//! End-to-end checks of the binary: output discipline, exit codes, file
//! generation, and suite wiring.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twmc"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .join("twmc/fixtures")
        .join(format!("{name}.txt"))
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_prints_exactly_one_line() {
    let out = bin()
        .args(["solve", "--problem", "dominating-set"])
        .arg(fixture("p3-path"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "10\n");

    let out = bin()
        .args(["solve", "--problem", "connected-ge-k"])
        .arg(fixture("k3"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "-1\n");
}

#[test]
fn verify_agrees_with_solve_on_fixtures() {
    for name in ["p4-path", "k33", "petersen", "sun"] {
        for problem in [
            "dominating-set",
            "connected-ge-k",
            "cograph",
            "bipartite-cograph",
            "maximal-cluster-graph",
        ] {
            let solve = bin()
                .args(["solve", "--problem", problem])
                .arg(fixture(name))
                .output()
                .unwrap();
            let verify = bin()
                .args(["verify", "--problem", problem])
                .arg(fixture(name))
                .output()
                .unwrap();
            assert!(solve.status.success() && verify.status.success());
            assert_eq!(stdout_of(&solve), stdout_of(&verify), "{name}/{problem}");
        }
    }
}

#[test]
fn c4_free_is_verify_only() {
    let out = bin()
        .args(["verify", "--problem", "c4-free"])
        .arg(fixture("k4"))
        .output()
        .unwrap();
    assert!(out.status.success());
    // Chords everywhere: no induced four-cycle, so every subset qualifies.
    assert!(!stdout_of(&out).trim().is_empty());

    let out = bin()
        .args(["solve", "--problem", "c4-free"])
        .arg(fixture("k4"))
        .output()
        .unwrap();
    assert!(!out.status.success(), "c4-free has no registered solver");
}

#[test]
fn verify_refuses_oversized_instances() {
    let out = bin()
        .args(["verify", "--problem", "dominating-set"])
        .arg(fixture("caterpillar60"))
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("enumeration is limited"), "stderr: {err}");
}

#[test]
fn invalid_decomposition_fails_with_report() {
    let dir = std::env::temp_dir().join("twmc-cli-test-invalid");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.txt");
    // Two bags, no tree edge between them.
    std::fs::write(&path, "2\n2\n1 1\n2\n1\n0 1\n2\n0\n0 1\n\n").unwrap();
    let out = bin()
        .args(["solve", "--problem", "dominating-set"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("tree"), "stderr: {err}");

    let out = bin().arg("validate-td").arg(&path).output().unwrap();
    assert!(!out.status.success());
    assert!(stdout_of(&out).contains("tree"));
}

#[test]
fn gen_writes_deterministic_parseable_files() {
    let dir = std::env::temp_dir().join("twmc-cli-test-gen");
    let _ = std::fs::remove_dir_all(&dir);
    let run = |sub: &Path| {
        bin()
            .args([
                "gen", "--config", "warmup", "--seed", "5", "--count", "3", "--out",
            ])
            .arg(sub)
            .output()
            .unwrap()
    };
    let a = run(&dir.join("a"));
    let b = run(&dir.join("b"));
    assert!(a.status.success() && b.status.success());
    for i in 0..3 {
        let name = format!("warmup-5-{i:04}.txt");
        let ta = std::fs::read_to_string(dir.join("a").join(&name)).unwrap();
        let tb = std::fs::read_to_string(dir.join("b").join(&name)).unwrap();
        assert_eq!(ta, tb, "generation must be deterministic");
        let va = bin()
            .arg("validate-td")
            .arg(dir.join("a").join(&name))
            .output()
            .unwrap();
        assert!(va.status.success());
    }
}

#[test]
fn suite_command_reports_and_exits_zero() {
    let dir = std::env::temp_dir().join("twmc-cli-test-suite");
    std::fs::create_dir_all(&dir).unwrap();
    let json_path = dir.join("report.json");
    let out = bin()
        .args([
            "suite",
            "correctness",
            "--problem",
            "cograph",
            "--seed",
            "11",
            "--cases",
            "20",
            "--out",
        ])
        .arg(&json_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("20/20 cases passed"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(json["suite"], "correctness");
    assert_eq!(json["cases"].as_array().unwrap().len(), 20);
}

#[test]
fn coverage_exits_by_completeness() {
    let out = bin()
        .args([
            "coverage", "--config", "standard", "--count", "25", "--seed", "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("all 18 classes covered"));
}
