//! Binary-level behaviour: exit codes, config handling, and byte-level
//! determinism of the emitted files.

use std::path::Path;
use std::process::{Command, Output};

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmx"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

#[test]
fn identical_invocations_are_byte_identical() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    let args = [
        "cmx", "--model", "ho", "--N", "1..3", "--format", "json", "--seed", "42", "--out", "run",
    ];
    assert!(run_in(d1.path(), &args).status.success());
    assert!(run_in(d2.path(), &args).status.success());
    let a = std::fs::read(d1.path().join("run.json")).unwrap();
    let b = std::fs::read(d2.path().join("run.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn missing_model_is_a_config_error() {
    let d = tempfile::tempdir().unwrap();
    let out = run_in(d.path(), &["moments"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--model"));
}

#[test]
fn unknown_model_is_a_config_error() {
    let d = tempfile::tempdir().unwrap();
    let out = run_in(d.path(), &["moments", "--model", "hydrogen"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("hydrogen") && err.contains("coupled2d"));
}

#[test]
fn malformed_config_names_line_and_field() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(d.path().join("bad.cfg"), "[model]\ndims = 1\nV = one 2\n").unwrap();
    let out = run_in(d.path(), &["moments", "--config", "bad.cfg"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("model.V"), "{err}");
}

#[test]
fn invalid_grid_rejected() {
    let d = tempfile::tempdir().unwrap();
    let out = run_in(d.path(), &["cmx", "--model", "ho", "--t", "3:0:50"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_failure_in_single_order_mode_exits_3() {
    // an exact eigenstate trial: the connected-moment system is degenerate
    let d = tempfile::tempdir().unwrap();
    std::fs::write(
        d.path().join("eigen.cfg"),
        "[model]\ndims = 1\nV = 1 2\n\n[trial]\ndims = 1\nquad = 1/2\n",
    )
    .unwrap();
    let out = run_in(d.path(), &["cmx", "--config", "eigen.cfg", "--N", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn range_mode_continues_past_failures() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(
        d.path().join("eigen.cfg"),
        "[model]\ndims = 1\nV = 1 2\n\n[trial]\ndims = 1\nquad = 1/2\n",
    )
    .unwrap();
    let out = run_in(
        d.path(),
        &["cmx", "--config", "eigen.cfg", "--N", "1..3", "--format", "json", "--out", "r"],
    );
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.path().join("r.json")).unwrap()).unwrap();
    let recs = doc["records"].as_array().unwrap();
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r["ok"] == false));
    assert!(recs[0]["error"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn inline_config_matches_catalog_model() {
    let d = tempfile::tempdir().unwrap();
    std::fs::write(
        d.path().join("ho.cfg"),
        "[model]\ndims = 1\nV = 1 2\n\n[trial]\ndims = 1\nquad = 2/5\npoly = 1 2\npoly = -1/2 0\n\n[run]\nJ = 7\nout = inline\n",
    )
    .unwrap();
    assert!(run_in(d.path(), &["moments", "--config", "ho.cfg"]).status.success());
    assert!(run_in(d.path(), &["moments", "--model", "ho", "--J", "7", "--out", "cat"])
        .status
        .success());
    let inline = std::fs::read_to_string(d.path().join("inline.csv")).unwrap();
    let cat = std::fs::read_to_string(d.path().join("cat.csv")).unwrap();
    assert_eq!(inline, cat);
    assert!(inline.contains("10471/2040"));
}

#[test]
fn scan_emits_order_table() {
    let d = tempfile::tempdir().unwrap();
    let out = run_in(
        d.path(),
        &["scan", "--model", "ho", "--N", "1..3", "--format", "csv", "--out", "scan"],
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(d.path().join("scan.csv")).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("n,highest_moment_index,a0"));
    let row1: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row1[0], "1");
    assert_eq!(row1[1], "3");
    let a0: f64 = row1[2].parse().unwrap();
    assert!((a0 - 4.932).abs() < 2e-3);
}

#[test]
fn reference_spectrum_is_serialized() {
    let d = tempfile::tempdir().unwrap();
    let out = run_in(
        d.path(),
        &["reference", "--model", "ho_gauss", "--format", "json", "--out", "ref"],
    );
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.path().join("ref.json")).unwrap()).unwrap();
    let overlaps = doc["spectrum"]["overlaps"].as_array().unwrap();
    let sum: f64 = overlaps.iter().map(|v| v.as_f64().unwrap()).sum();
    assert!(sum <= 1.0 + 1e-9);
    assert!((overlaps[0].as_f64().unwrap() - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-9);
    let energies = doc["spectrum"]["energies"].as_array().unwrap();
    assert!((energies[0].as_f64().unwrap() - 1.0).abs() < 1e-9);
    // curve columns include the closed-form correlation for this entry
    let names: Vec<&str> = doc["curve"]["series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"exact_C2"));
}

#[test]
fn extended_precision_parameters_emitted() {
    let d = tempfile::tempdir().unwrap();
    let out = run_in(
        d.path(),
        &[
            "zfit", "--model", "ho", "--N", "3", "--precision", "ext:50", "--format", "json",
            "--out", "z",
        ],
    );
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.path().join("z.json")).unwrap()).unwrap();
    let ext = &doc["records"][0]["extended"];
    assert_eq!(ext["digits"], 50);
    let w0 = ext["exponents"][0]["re"].as_str().unwrap();
    assert!(w0.starts_with("2.9118"), "{w0}");
}

#[test]
fn double_well_extended_solve_succeeds_where_double_fails() {
    // at order 5 the double-well connected-moment Hankel exceeds the double
    // precision conditioning limit; the exact-rational route still solves it
    let d = tempfile::tempdir().unwrap();
    let out = run_in(
        d.path(),
        &["cmx", "--model", "double_well", "--N", "5", "--format", "json", "--out", "dw"],
    );
    assert_eq!(out.status.code(), Some(3));

    let out = run_in(
        d.path(),
        &[
            "cmx", "--model", "double_well", "--N", "4..5", "--precision", "ext:40", "--format",
            "json", "--out", "dw",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(d.path().join("dw.json")).unwrap()).unwrap();
    // order 5: the double route declines, the exact route still delivers
    let rec5 = &doc["records"][1];
    assert_eq!(rec5["ok"], false);
    assert!(rec5["error"].as_str().unwrap().contains("degenerate"));
    assert_eq!(rec5["extended"]["digits"], 40);
    assert_eq!(rec5["extended"]["exponents"].as_array().unwrap().len(), 5);
    let a0: &str = rec5["extended"]["a0"].as_str().unwrap();
    assert!(a0.contains('e'), "{a0}");
    // order 4 passes the double-precision guard and carries extended data
    let rec4 = &doc["records"][0];
    assert_eq!(rec4["ok"], true);
    assert_eq!(rec4["extended"]["digits"], 40);
}
