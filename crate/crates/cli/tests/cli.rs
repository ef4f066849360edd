use std::path::PathBuf;
use std::process::{Command, Output};

fn repo(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(path)
}

fn graver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graver")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path(p: &str) -> String {
    repo(p).to_string_lossy().into_owned()
}

#[test]
fn graver_of_row_of_ones() {
    let o = graver(&["graver", &path("data/row_of_ones.txt")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("6 elements"));
}

#[test]
fn graver_of_identity_is_empty() {
    let o = graver(&["graver", &path("data/identity2.txt")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 elements"));
}

#[test]
fn graver_of_a33_has_max_type_three() {
    let o = graver(&["graver", &path("data/a33.txt"), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let max_type = doc["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            let e: Vec<i64> = v.as_array().unwrap().iter().map(|x| x.to_string().parse().unwrap()).collect();
            e.chunks(3).filter(|b| b.iter().any(|&x| x != 0)).count()
        })
        .max()
        .unwrap();
    assert_eq!(max_type, 3);
}

#[test]
fn completion_and_default_engine_print_the_same_basis() {
    let a = graver(&["graver", &path("data/a33.txt")]);
    let b = graver(&["graver", &path("data/a33.txt"), "--completion"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn complexity_values() {
    for (file, want) in [("data/a33.txt", "9"), ("data/twisted_cubic.txt", "6"), ("data/identity2.txt", "0")] {
        let o = graver(&["complexity", &path(file)]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), format!("g(A,B) = {want}"), "{file}");
    }
}

#[test]
fn explicit_b_matrix() {
    let o = graver(&["complexity", &path("data/row_of_ones.txt"), &path("data/identity3.txt")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "g(A,B) = 3");
}

#[test]
fn parse_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2\n1 x\n0 1\n").unwrap();
    assert_eq!(code(&graver(&["graver", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&graver(&["graver", "/nonexistent/matrix.txt"])), 2);
}

#[test]
fn budget_overrun_exits_3() {
    let o = graver(&["graver", &path("data/a33.txt"), "--budget-completion", "3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_shipped_base_relation() {
    let o = graver(&["relation", "verify", &path("crates/core/golden/base_a34.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("sum |h| = 27"));
}

#[test]
fn verify_rejects_a_broken_relation() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(repo("crates/core/golden/base_a34.json")).unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, text.replacen("[1,3,5,2,3,6,7]", "[2,3,5,2,3,6,7]", 1)).unwrap();
    let o = graver(&["relation", "verify", broken.to_str().unwrap(), "--skip-membership"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn chain_sums() {
    let base = path("crates/core/golden/base_a34.json");
    let plain = graver(&["relation", "chain", &base, "--l", "2", "--target", "7"]);
    assert_eq!(code(&plain), 0);
    assert!(stdout(&plain).trim_end().ends_with("sum |h| = 363"));
    let switched =
        graver(&["relation", "chain", &base, "--l", "2", "--switch-at", "6", "--switch-l", "0", "--target", "7"]);
    assert_eq!(code(&switched), 0);
    assert!(stdout(&switched).trim_end().ends_with("sum |h| = 367"));
}

#[test]
fn chain_output_file_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m6.json");
    let o = graver(&[
        "relation",
        "chain",
        &path("crates/core/golden/base_a34.json"),
        "--l",
        "2",
        "--target",
        "6",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let written = std::fs::read_to_string(&out).unwrap();
    let golden = std::fs::read_to_string(repo("crates/core/golden/lift_m6.json")).unwrap();
    assert_eq!(written, golden);
}

#[test]
fn failed_condition_exits_1_with_diagnostics() {
    let o = graver(&["relation", "lift", &path("crates/core/golden/base_a34.json"), "--l", "1"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd(2, 2) = 2"));
}

#[test]
fn cyclic_base_relation_from_matrix() {
    let o = graver(&["relation", "base", &path("data/row_of_ones.txt"), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["copies"].to_string(), "3");
    assert_eq!(doc["coefficients"].to_string(), "[1,1,1]");
    assert_eq!(code(&graver(&["relation", "base", &path("data/identity2.txt")])), 1);
}

#[test]
fn bound_tables() {
    let o = graver(&["bound", "cor3", "--from", "4", "--to", "8", "--compare", "berstein-onn"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<Vec<String>> =
        stdout(&o).lines().skip(1).map(|l| l.split_whitespace().map(str::to_owned).collect()).collect();
    let col = |i: usize| rows.iter().map(|r| r[i].clone()).collect::<Vec<_>>().join(",");
    assert_eq!(col(1), "27,75,171,363,747");
    assert_eq!(col(2), "27,61,129,265,537");

    let o = graver(&["bound", "cor2", "--g", "3", "--m", "4"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap().split_whitespace().last(), Some("7"));

    let o = graver(&["bound", "mixed", "--m0", "6", "--m", "7", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(doc["formula"], "mixed");
    assert_eq!(doc["value"], "367");
}

#[test]
fn bound_out_of_range_exits_2() {
    let o = graver(&["bound", "cor3", "--m", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
    assert_eq!(code(&graver(&["bound", "cor2", "--m", "5"])), 2);
}

#[test]
fn reproduce_passes() {
    let o = graver(&["reproduce"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn reproduce_skip_membership_runs_no_oracle() {
    let o = graver(&["reproduce", "--skip-membership"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("membership"));
}

#[test]
fn reproduce_detects_tampered_golden() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(repo("crates/core/golden")).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    let target = dir.path().join("lift_m7.json");
    let text = std::fs::read_to_string(&target).unwrap();
    std::fs::write(&target, text.replacen("\"coefficients\": [57,", "\"coefficients\": [58,", 1)).unwrap();
    let o = graver(&["reproduce", "--skip-membership", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[FAIL] golden lift_m7: coefficient 0: expected 58, got 57"), "{}", stdout(&o));
}
