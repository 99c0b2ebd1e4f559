//! End-to-end tests of the command-line interface: output shapes, exit
//! codes, and determinism.

use std::process::{Command, Output};

fn loopalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn bracket_reports_terms_and_crossings() {
    let out = loopalg(&["bracket", "--surface", "holed-torus:3,3,4", "a", "b"]);
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["terms"]["ab"], "1");
    assert_eq!(doc["crossings"].as_array().unwrap().len(), 1);
    let crossing = &doc["crossings"][0];
    assert_eq!(crossing["sign"], 1);
    assert!(crossing["angle"].as_f64().unwrap() > 0.0);
}

#[test]
fn bracket_of_boundary_is_zero() {
    let out = loopalg(&["bracket", "--surface", "holed-torus:3,3,4", "abAB", "b"]);
    let doc = json(&out);
    assert_eq!(doc["terms"].as_object().unwrap().len(), 0);
    assert_eq!(doc["crossings"].as_array().unwrap().len(), 0);
}

#[test]
fn bracket_outputs_negate_under_swap() {
    let ab = json(&loopalg(&["bracket", "--surface", "modular", "a", "b"]));
    let ba = json(&loopalg(&["bracket", "--surface", "modular", "b", "a"]));
    let t1 = ab["terms"].as_object().unwrap();
    let t2 = ba["terms"].as_object().unwrap();
    assert_eq!(t1.len(), t2.len());
    for (k, v) in t1 {
        let c1: i64 = v.as_str().unwrap().parse().unwrap();
        let c2: i64 = t2[k].as_str().unwrap().parse().unwrap();
        assert_eq!(c1, -c2);
    }
}

#[test]
fn parse_error_exits_2() {
    let out = loopalg(&["bracket", "--surface", "modular", "a!", "b"]);
    assert_eq!(out.status.code(), Some(2));
    let out = loopalg(&["bracket", "--surface", "holed-torus:2,2,2", "a", "b"]);
    assert_eq!(out.status.code(), Some(2));
    let out = loopalg(&["center-check", "--surface", "modular", "1*(a"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn center_check_examples() {
    let doc = json(&loopalg(&[
        "center-check",
        "--surface",
        "holed-torus:3,3,4",
        "1*(abAB)",
    ]));
    assert_eq!(doc["status"], "consistent_with_central");
    assert!(doc["witness"].is_null());

    let doc = json(&loopalg(&[
        "center-check",
        "--surface",
        "holed-torus:3,3,4",
        "1*(a)",
    ]));
    assert_eq!(doc["status"], "certified_noncentral");
    assert_eq!(doc["witness"]["probe"], "b");

    let doc = json(&loopalg(&[
        "center-check",
        "--surface",
        "holed-torus:3,3,4",
        "1*()",
    ]));
    assert_eq!(doc["status"], "consistent_with_central");
}

#[test]
fn center_check_other_readings() {
    for reading in ["sk", "gw", "vh", "gw-vh"] {
        let doc = json(&loopalg(&[
            "center-check",
            "--surface",
            "holed-torus:3,3,4",
            "1*(abAB)",
            "--reading",
            reading,
        ]));
        assert_eq!(doc["status"], "consistent_with_central", "reading {reading}");
        let doc = json(&loopalg(&[
            "center-check",
            "--surface",
            "holed-torus:3,3,4",
            "1*(ab)",
            "--reading",
            reading,
        ]));
        assert_eq!(doc["status"], "certified_noncentral", "reading {reading}");
    }
}

#[test]
fn verify_beardon_passes() {
    let out = loopalg(&["verify", "beardon", "--surface", "modular", "--max-len", "3"]);
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc["max_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn verify_unknown_suite_exits_2() {
    let out = loopalg(&["verify", "nonsense", "--surface", "modular"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn twist_scan_csv_shape() {
    let out = loopalg(&[
        "twist-scan",
        "--surface",
        "holed-torus:3,3,4",
        "--curve",
        "a",
        "--steps",
        "5",
        "--t-max",
        "0.8",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "t,theta,theta_reversed,l_other,l_product,trace_curve");
    assert_eq!(lines.len(), 6);
    let rows: Vec<Vec<f64>> = lines[1..]
        .iter()
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    // t = 0 row reproduces the base surface
    assert_eq!(rows[0][0], 0.0);
    assert!((rows[0][5] - 3.0).abs() < 1e-12);
    // theta strictly increases, trace stays constant
    for w in rows.windows(2) {
        assert!(w[1][1] > w[0][1]);
        assert!((w[1][5] - w[0][5]).abs() < 1e-12);
    }
}

#[test]
fn surface_json_round_trip() {
    let dir = std::env::temp_dir().join("loopalg-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("surface.json");
    let rep = loopalg::hyperbolic::rep_once_holed_torus(3.0, 4.0, 5.0).unwrap();
    std::fs::write(&path, rep.to_json_string()).unwrap();
    let doc = json(&loopalg(&[
        "bracket",
        "--surface",
        path.to_str().unwrap(),
        "a",
        "b",
    ]));
    assert_eq!(doc["terms"]["ab"], "1");
}
