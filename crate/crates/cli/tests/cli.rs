//! End-to-end tests of the cga binary: golden outputs, exit codes, and the
//! verify cache's hit/corruption behavior.

use std::path::Path;
use std::process::{Command, Output};

fn cga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cga"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn cga_env(args: &[&str], key: &str, val: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cga"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn dims_prints_the_counting_table() {
    let out = cga(&["dims", "--ell", "1/2", "--max-level", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().map(str::trim).collect();
    assert_eq!(
        lines,
        vec![
            "m d e O", "0 1 0 1", "1 1 1 1", "2 2 2 1", "3 2 4 1", "4 3 6 1"
        ]
    );

    let out = cga(&["dims", "--ell", "3/2", "--max-level", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().nth(1), Some("0 1 0 1"));
}

#[test]
fn dims_emits_json_rows() {
    let out = cga(&["dims", "--ell", "3/2", "--max-level", "5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[5]["m"], 5);
    assert_eq!(rows[5]["d"], 5);
    assert_eq!(rows[5]["e"], 13);
    assert_eq!(rows[5]["O"], 2);
}

#[test]
fn integer_ell_is_rejected() {
    let out = cga(&["dims", "--ell", "2", "--max-level", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("ℓ must be an odd half-integer"));
}

#[test]
fn kac_prints_determinant_and_factorization() {
    let out = cga(&["kac", "--ell", "1/2", "--level", "2", "--factor"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("-2δμ^2 - μ^2"));
    assert_eq!(lines.next(), Some("-1 · μ^2 · (2δ+1)^1"));

    let out = cga(&["kac", "--ell", "1/2", "--level", "0"]);
    assert_eq!(stdout(&out).trim(), "1");

    let out = cga(&["kac", "--ell", "1/2", "--level", "1", "--factor"]);
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some("-1 · μ^1"));
}

#[test]
fn kac_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = cga(&[
        "kac",
        "--ell",
        "3/2",
        "--level",
        "2",
        "--factor",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in ["basis", "matrix", "determinant", "factorization", "structure"] {
        assert!(v.get(key).is_some(), "missing {}", key);
    }
    let report = cga_core::json::kac_report_from_json(&v).unwrap();
    assert_eq!(report.factorization.mu_exponent, 2);
    assert_eq!(report.factorization.delta_factors, vec![(0, 1)]);
    assert_eq!(report.matrix.basis.len(), 2);
}

#[test]
fn singular_reports_the_verified_vector() {
    let out = cga(&["singular", "--ell", "1/2", "--q", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("δ = -1/2"));
    assert!(text.contains("C: 2μ"));
    assert!(text.contains("P1^2: -1"));
    assert!(text.trim().ends_with("VERIFIED"));

    let out = cga(&["singular", "--ell", "3/2", "--q", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("δ = -2"));
    assert!(text.trim().ends_with("VERIFIED"));

    // numeric mu
    let out = cga(&["singular", "--ell", "1/2", "--q", "1", "--mu", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("C: 6"));
}

#[test]
fn singular_validates_its_inputs() {
    let out = cga(&["singular", "--ell", "1/2", "--q", "0"]);
    assert_eq!(code(&out), 2);
    let out = cga(&["singular", "--ell", "1/2", "--q", "1", "--mu", "0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn scan_reports_kernel_dimensions() {
    let out = cga(&["scan", "--ell", "1/2", "--delta", "-1/2", "--mu", "1", "--level", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().next(), Some("dim 1"));

    let out = cga(&["scan", "--ell", "1/2", "--delta", "-1/2", "--mu", "1", "--level", "3"]);
    assert_eq!(stdout(&out).trim(), "dim 0");

    let out = cga(&["scan", "--ell", "1/2", "--delta", "7", "--mu", "1", "--level", "2"]);
    assert_eq!(stdout(&out).trim(), "dim 0");

    let out = cga(&["scan", "--ell", "1/2", "--delta", "1", "--mu", "0", "--level", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_passes_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let cold = cga(&["verify", "--ell", "1/2", "--max-level", "5", "--cache", cache]);
    assert_eq!(code(&cold), 0, "stderr: {}", stderr(&cold));
    let text = stdout(&cold);
    assert!(text.contains("power-commutator oracle: ok"));
    assert!(text.contains("PASS (6 cells)"));

    // cache files carry a schema version and a content hash
    let cell = dir.path().join("1_2").join("4.json");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cell).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["sha256"].as_str().unwrap().len(), 64);

    // a warm run reads every cell back and prints identical bytes
    let warm = cga(&["verify", "--ell", "1/2", "--max-level", "5", "--cache", cache]);
    assert_eq!(code(&warm), 0);
    assert_eq!(warm.stdout, cold.stdout);
    assert!(stderr(&warm).is_empty());

    // corruption is detected, recomputed, and warned about
    std::fs::write(&cell, "{ not json").unwrap();
    let fixed = cga(&["verify", "--ell", "1/2", "--max-level", "5", "--cache", cache]);
    assert_eq!(code(&fixed), 0);
    assert_eq!(fixed.stdout, cold.stdout);
    assert!(stderr(&fixed).contains("recomputing"));
    // and the rewritten cell is valid again
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cell).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);

    // a tampered payload fails its hash even though it parses
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cell).unwrap()).unwrap();
    v["payload"]["d"] = serde_json::json!(999);
    std::fs::write(&cell, serde_json::to_string(&v).unwrap()).unwrap();
    let fixed = cga(&["verify", "--ell", "1/2", "--max-level", "5", "--cache", cache]);
    assert_eq!(code(&fixed), 0);
    assert_eq!(fixed.stdout, cold.stdout);
    assert!(stderr(&fixed).contains("content hash"));
}

#[test]
fn verify_covers_multiple_ells_and_reads_the_env_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = cga_env(
        &["verify", "--ell", "3/2,1/2", "--max-level", "3"],
        "CGA_CACHE_DIR",
        dir.path(),
    );
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    // cells sorted by (ell, m) regardless of the flag order
    let l12 = text.find("ℓ=1/2 m=0").unwrap();
    let l32 = text.find("ℓ=3/2 m=0").unwrap();
    assert!(l12 < l32);
    assert!(text.contains("PASS (8 cells)"));
    assert!(dir.path().join("1_2").join("0.json").exists());
    assert!(dir.path().join("3_2").join("3.json").exists());
}
