use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn chebwell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebwell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spectrum_first_kind() {
    let out = chebwell(&["spectrum", "--model", "first-kind", "-N", "6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,e_closed_form,e_numeric,abs_delta");
    assert_eq!(lines.len(), 7);
    for l in &lines[1..] {
        let delta: f64 = l.rsplit(',').next().unwrap().parse().unwrap();
        assert!(delta < 1e-10);
    }
}

#[test]
fn spectrum_single_site_is_zero() {
    for model in ["first-kind", "second-kind"] {
        let out = chebwell(&["spectrum", "--model", model, "-N", "1", "--format", "json"]);
        assert_eq!(code(&out), 0);
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 1);
        assert!(v["rows"][0]["e_closed_form"].as_f64().unwrap().abs() < 1e-15);
    }
}

#[test]
fn validation_errors_exit_two() {
    assert_eq!(code(&chebwell(&["spectrum", "-N", "0"])), 2);
    assert_eq!(code(&chebwell(&["spectrum", "-N", "4", "--tol", "0"])), 2);
    assert_eq!(code(&chebwell(&["sweep", "--family", "k", "-N", "6", "--from", "1", "--to", "0", "--steps", "5"])), 2);
    assert_eq!(code(&chebwell(&["sweep", "--family", "k", "-N", "6", "--from", "0", "--to", "1", "--steps", "1"])), 2);
    assert_eq!(code(&chebwell(&["metric", "--mode", "l", "-N", "2"])), 2);
    assert_eq!(code(&chebwell(&["metric", "--mode", "spectral", "-N", "3", "--nu", "1,1"])), 2);
    assert_eq!(code(&chebwell(&["nonsense"])), 2);
}

#[test]
fn metric_k_is_metric() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.json");
    let out = chebwell(&["metric", "--mode", "k", "-N", "6", "--lambda", "0.3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = read_json(&path);
    let check = &v["metrics"][0]["verification"];
    assert!(check["intertwining_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(check["signature"], "metric");
}

#[test]
fn metric_basis_band_one_has_two_elements() {
    let out = chebwell(&["metric", "--mode", "basis", "-N", "6", "--band", "1"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metrics"].as_array().unwrap().len(), 2);
}

#[test]
fn metric_spectral_positive() {
    let out = chebwell(&["metric", "--mode", "spectral", "-N", "4", "--nu", "1,1,1,1"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["metrics"][0]["verification"]["min_eigenvalue"].as_f64().unwrap() > 0.0);
}

#[test]
fn metric_for_wrong_chain_exits_one() {
    let out = chebwell(&["metric", "--mode", "k", "-N", "6", "--lambda", "0.3", "--model", "second-kind"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn metric_csv_matrix() {
    let out = chebwell(&["metric", "--mode", "diagonal", "-N", "3", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("c_1,c_2,c_3\n5.0000000000000000e-1,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn sweep_k6_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = chebwell(&[
            "sweep", "--family", "k", "-N", "6", "--from", "-2.5", "--to", "2.5", "--steps", "500",
            "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let text = String::from_utf8(text).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 501);
    assert!(lines.iter().all(|l| l.split(',').count() == 7));
    assert!(!text.contains('\r'));
}

#[test]
fn sweep_l8_zero_crossings() {
    let out = chebwell(&["sweep", "--family", "l", "--lambda", "0", "-N", "8", "--from", "0", "--to", "1.5", "--steps", "301"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = text.lines();
    assert!(rdr.next().unwrap().starts_with("lambda,mu,k_1"));
    let mut negatives_changed_at = Vec::new();
    let mut prev = 0;
    for line in rdr {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let neg = cols[2..].iter().filter(|v| **v < 0.0).count();
        if neg != prev {
            negatives_changed_at.push(cols[1]);
            prev = neg;
        }
    }
    assert_eq!(negatives_changed_at.len(), 2, "{negatives_changed_at:?}");
    assert!((negatives_changed_at[0] - 0.5412).abs() < 0.01);
    assert!((negatives_changed_at[1] - 1.3066).abs() < 0.01);
}

#[test]
fn scan_small_grids_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = chebwell(&["scan", "-N", "8", "--grid", "2", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
    assert_eq!(read_json(&report)["linear"], false);

    let out = chebwell(&["scan", "-N", "8", "--grid", "60", "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rep = read_json(&report);
    assert_eq!(rep["linear"], true);
    assert_eq!(rep["segments"].as_array().unwrap().len(), 8);
}

#[test]
fn scan_circle_control_fails_linearity_but_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("circle.json");
    let out = chebwell(&[
        "scan", "--fixture", "circle", "--grid", "60", "--mu-min", "-1", "--mu-max", "1",
        "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(read_json(&report)["linear"], false);
}

#[test]
fn verify_small_and_canary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.json");
    let out = chebwell(&["verify", "--max-n", "12", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rep = read_json(&path);
    assert_eq!(rep["passed"], true);
    assert_eq!(rep["checks"].as_array().unwrap().len(), 14);

    let out = chebwell(&["verify", "--max-n", "12", "--canary", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let rep = read_json(&path);
    let failed: Vec<&str> = rep["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"k_intertwining"));
}
