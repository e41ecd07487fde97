//! Command-line behavior: exit codes per error class, report determinism,
//! strict schema handling, and the documented invocation examples.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    root.to_string_lossy().into_owned()
}

fn ordunit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordunit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn result_of(out: &Output) -> serde_json::Value {
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    report["result"].clone()
}

#[test]
fn validate_open_quadrant_reports_non_archimedean() {
    let out = ordunit(&["validate", &fixture("open_quadrant.space")]);
    assert!(out.status.success());
    let r = result_of(&out);
    assert_eq!(r["valid"], true);
    assert_eq!(r["archimedean"], false);
}

#[test]
fn norm_m_on_the_matrix_space_element() {
    let out = ordunit(&[
        "norm",
        &fixture("m2.space"),
        "--kind",
        "m",
        "--element",
        "E12",
    ]);
    assert!(out.status.success());
    let r = result_of(&out);
    let value: f64 = r["value"].as_str().unwrap().parse().unwrap();
    assert!((value - 0.5).abs() <= 1e-6);
}

#[test]
fn norm_maximal_with_literal_element_and_tolerance() {
    let out = ordunit(&[
        "norm",
        &fixture("c2.space"),
        "--kind",
        "M",
        "--element",
        "(1,0)+(0,1)i",
        "--tol",
        "1e-4",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = result_of(&out);
    let lo = r["lower"].as_f64().unwrap();
    let hi = r["upper"].as_f64().unwrap();
    let s2 = core::f64::consts::SQRT_2;
    assert!(lo <= s2 && s2 <= hi);
    assert!(hi - lo <= 1e-4);
    assert_eq!(r["status"], "certified");
}

#[test]
fn exit_code_2_on_parse_errors() {
    // unknown field in the space file
    let dir = std::env::temp_dir().join("ordunit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.space");
    std::fs::write(
        &bad,
        r#"{"schema_version": 1, "scalar_mode": "exact", "dimension": 1,
           "cone": {"type": "polyhedral_v", "generators": [["1"]]},
           "unit": ["1"], "surprise": true}"#,
    )
    .unwrap();
    let out = ordunit(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // mode-inconsistent literal
    let bad2 = dir.join("bad2.space");
    std::fs::write(
        &bad2,
        r#"{"schema_version": 1, "scalar_mode": "exact", "dimension": 1,
           "cone": {"type": "polyhedral_v", "generators": [["0.5"]]},
           "unit": ["1"]}"#,
    )
    .unwrap();
    let out = ordunit(&["validate", bad2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_3_on_precondition_violations() {
    let out = ordunit(&[
        "quotient",
        &fixture("r3.space"),
        "--ideal",
        "diag12",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not an order ideal"), "{err}");
}

#[test]
fn exit_code_4_on_capability_limits() {
    // state enumeration over the matrix cone is out of scope
    let out = ordunit(&["states", &fixture("m2.space")]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let run = || {
        let out = ordunit(&[
            "norm",
            &fixture("c2.space"),
            "--kind",
            "dec",
            "--element",
            "one_i",
            "--tol",
            "1e-4",
        ]);
        assert!(out.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["timing_ms"] = serde_json::json!(0);
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_accepts_fresh_reports_and_rejects_tampered_ones() {
    let dir = std::env::temp_dir().join("ordunit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = ordunit(&[
        "norm",
        &fixture("c2.space"),
        "--kind",
        "M",
        "--element",
        "one_i",
        "--tol",
        "1e-3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = ordunit(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS lower certificate"));
    assert!(text.contains("PASS upper certificate"));
    assert!(text.contains("PASS result reproduces"));

    // tamper with the claimed upper bound: verification must fail
    let mut report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    report["result"]["upper"] = serde_json::json!(0.5);
    let tampered = dir.join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&report).unwrap()).unwrap();
    let out = ordunit(&["verify", tampered.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn exit_code_5_when_matrix_bounds_stay_wide() {
    // non-normal, non-diagonal element: bounds-only mode cannot certify 1e-6
    let out = ordunit(&[
        "norm",
        &fixture("m2.space"),
        "--kind",
        "dec",
        "--element",
        "skew_mix",
    ]);
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
    let r = result_of(&out);
    assert_eq!(r["status"], "bounds_only");
    let lo = r["lower"].as_f64().unwrap();
    let hi = r["upper"].as_f64().unwrap();
    assert!(lo <= hi && hi - lo > 1e-6);
}

#[test]
fn verify_covers_structural_reports_too() {
    let dir = std::env::temp_dir().join("ordunit-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cases: Vec<(&str, Vec<String>)> = vec![
        (
            "arch.json",
            vec!["archimedeanize".into(), fixture("halfplane.space")],
        ),
        (
            "iso.json",
            vec![
                "first-iso".into(),
                fixture("r3.space"),
                "--map".into(),
                "drop_z".into(),
            ],
        ),
        (
            "ext.json",
            vec![
                "extend-functional".into(),
                fixture("r3.space"),
                "--functional".into(),
                "unit_state".into(),
            ],
        ),
    ];
    for (name, args) in cases {
        let path = dir.join(name);
        let mut full = args;
        full.push("--out".into());
        full.push(path.to_string_lossy().into_owned());
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let out = ordunit(&refs);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let out = ordunit(&["verify", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "verify {name}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn seminorm_rejects_complex_elements() {
    let out = ordunit(&[
        "seminorm",
        &fixture("c2.space"),
        "--element",
        "(1,0)+(0,1)i",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn archimedeanize_halfplane_reports_the_line() {
    let out = ordunit(&["archimedeanize", &fixture("halfplane.space")]);
    assert!(out.status.success());
    let r = result_of(&out);
    assert_eq!(r["identity"], false);
    assert_eq!(r["quotient_space"]["dimension"], 1);
    assert_eq!(r["quotient_space"]["unit"][0], "1");
}

#[test]
fn first_iso_via_map_block() {
    let out = ordunit(&["first-iso", &fixture("r3.space"), "--map", "drop_z"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = result_of(&out);
    assert_eq!(r["order_isomorphism"], true);
    assert_eq!(r["cone_condition"], true);
    assert_eq!(r["kernel_is_order_ideal"], true);
}
