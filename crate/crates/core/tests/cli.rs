// Copyright 2026 the cheeger authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use cheeger_core::cli::run;
use serde_json::Value;
use tempfile::TempDir;

fn cheeger(out: &Path, args: &[&str]) -> i32 {
    let mut argv = vec!["cheeger".to_string(), "--out".into(), out.display().to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

fn shape_file(dir: &Path, name: &str, json: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, json).unwrap();
    p
}

fn read_json(path: PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))).unwrap()
}

#[test]
fn compute_disk_writes_json_and_csv() {
    let dir = TempDir::new().unwrap();
    let shape = shape_file(dir.path(), "disk.json", r#"{"kind": "disk", "radius": 1.0}"#);
    let s = shape.to_str().unwrap();
    assert_eq!(cheeger(dir.path(), &["compute", "--shape", s, "--q", "1.5"]), 0);
    let doc = read_json(dir.path().join("compute-disk-q1.5.json"));
    let value = doc["estimate"]["value"].as_f64().unwrap();
    let expect = 2.0 * std::f64::consts::PI.powf(1.0 / 3.0);
    assert!((value - expect).abs() < 1e-12, "{value}");
    assert_eq!(doc["estimate"]["converged"], Value::Bool(true));

    assert_eq!(cheeger(dir.path(), &["--format", "csv", "compute", "--shape", s, "--q", "1.5"]), 0);
    let csv = fs::read_to_string(dir.path().join("compute-disk-q1.5.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("q,value,"));
    assert!(lines.next().unwrap().starts_with("1.5,"));
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = TempDir::new().unwrap();
    let shape = shape_file(dir.path(), "sq.json", r#"{"kind": "rectangle", "width": 1.0, "height": 1.0}"#);
    let s = shape.to_str().unwrap();
    let args = ["--vertex-count", "24", "--multistarts", "2", "compute", "--shape", s, "--q", "1.2"];
    assert_eq!(cheeger(dir.path(), &args), 0);
    let first = fs::read(dir.path().join("compute-sq-q1.2.json")).unwrap();
    assert_eq!(cheeger(dir.path(), &args), 0);
    assert_eq!(first, fs::read(dir.path().join("compute-sq-q1.2.json")).unwrap());
    let tmp_left = fs::read_dir(dir.path()).unwrap().filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with(".tmp")).count();
    assert_eq!(tmp_left, 0);
}

#[test]
fn out_dir_from_environment() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("nested");
    std::env::set_var("CHEEGER_OUT_DIR", &out);
    let code = run(["cheeger", "constants", "--N", "2", "--q", "1.5"]);
    std::env::remove_var("CHEEGER_OUT_DIR");
    assert_eq!(code, 0);
    let doc = read_json(out.join("constants-N2-q1.5.json"));
    let lower = doc["C_lower"].as_f64().unwrap();
    assert!((lower - (2.0 * std::f64::consts::PI.sqrt()).powf(2.0 / 3.0)).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let disk = shape_file(d, "disk.json", r#"{"kind": "disk", "radius": 1.0}"#);
    let disk = disk.to_str().unwrap();
    // Invalid exponent and malformed arguments.
    assert_eq!(cheeger(d, &["compute", "--shape", disk, "--q", "2"]), 2);
    assert_eq!(cheeger(d, &["compute", "--shape", disk, "--q=-1"]), 2);
    assert_eq!(cheeger(d, &["compute", "--shape", disk]), 2);
    assert_eq!(cheeger(d, &["--vertex-count", "2", "compute", "--shape", disk, "--q", "1"]), 2);
    // Shape files that cannot be used.
    assert_eq!(cheeger(d, &["compute", "--shape", d.join("missing.json").to_str().unwrap(), "--q", "1"]), 3);
    let bad = shape_file(d, "bad.json", r#"{"kind": "disk", "radius": -1.0}"#);
    assert_eq!(cheeger(d, &["compute", "--shape", bad.to_str().unwrap(), "--q", "1"]), 3);
    let garbage = shape_file(d, "garbage.json", "not json");
    assert_eq!(cheeger(d, &["compute", "--shape", garbage.to_str().unwrap(), "--q", "1"]), 3);
    let nonconvex = shape_file(
        d,
        "dart.json",
        r#"{"kind": "polygon", "vertices": [[0,0],[2,1],[0,2],[0.5,1]]}"#,
    );
    assert_eq!(cheeger(d, &["compute", "--shape", nonconvex.to_str().unwrap(), "--q", "1"]), 3);
    assert_eq!(cheeger(d, &["union", "--shape", disk, "--q", "1"]), 3);
    // Not converged: the result is still written.
    let sq = shape_file(d, "sq.json", r#"{"kind": "rectangle", "width": 1.0, "height": 1.0}"#);
    let code = cheeger(d, &["--max-iters", "3", "--multistarts", "1", "compute", "--shape", sq.to_str().unwrap(), "--q", "1.5"]);
    if code == 4 {
        let doc = read_json(d.join("compute-sq-q1.5.json"));
        assert_eq!(doc["estimate"]["converged"], Value::Bool(false));
    } else {
        assert_eq!(code, 0);
    }
}

#[test]
fn union_and_demos() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let u = shape_file(
        d,
        "pair.json",
        r#"{"kind": "union", "members": [
            {"kind": "disk", "radius": 0.1, "center": [0, 0]},
            {"kind": "disk", "radius": 1.0, "center": [5, 0]}]}"#,
    );
    assert_eq!(cheeger(d, &["union", "--shape", u.to_str().unwrap(), "--q", "0.5"]), 0);
    let doc = read_json(d.join("union-pair-q0.5.json"));
    assert!((doc["estimate"]["value"].as_f64().unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-6);

    assert_eq!(cheeger(d, &["demo", "two-ball", "--r", "0.1", "--R", "1", "--q", "0.5"]), 0);
    let doc = read_json(d.join("two-ball-r0.1-R1-q0.5.json"));
    assert!(doc["lambda_proxy"].as_f64().unwrap() < doc["value"].as_f64().unwrap());

    assert_eq!(cheeger(d, &["demo", "elongation", "--family", "stadium", "--q", "0.5"]), 0);
    let doc = read_json(d.join("elongation-stadium-q0.5.json"));
    assert!((doc["slope"].as_f64().unwrap() + 1.0).abs() < 0.05);

    assert_eq!(cheeger(d, &["demo", "nonexistence", "--q", "1.5"]), 0);
    let doc = read_json(d.join("nonexistence-q1.5.json"));
    let ratios: Vec<f64> = doc.as_array().unwrap().iter().map(|r| r["ratio"].as_f64().unwrap()).collect();
    assert_eq!(ratios.len(), 10);
    assert!(ratios.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn smooth_square() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let sq = shape_file(d, "sq.json", r#"{"kind": "rectangle", "width": 1.0, "height": 1.0}"#);
    assert_eq!(cheeger(d, &["smooth", "--shape", sq.to_str().unwrap()]), 0);
    let text = fs::read_to_string(d.join("smooth-sq.json")).unwrap();
    assert!(text.contains("perimeter"));
}

#[test]
fn verify_with_custom_corpus() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let disk = shape_file(d, "disk.json", r#"{"kind": "disk", "radius": 1.0}"#);
    let out = d.join("report");
    assert_eq!(cheeger(&out, &["verify", "--qs", "0.5,1.5", "--corpus", disk.to_str().unwrap()]), 0);
    let report = read_json(out.join("report.json"));
    assert_eq!(report["summary"]["failed"], Value::from(0));
    for name in ["report.md", "sandwich.svg", "elongation.svg"] {
        assert!(fs::metadata(out.join(name)).unwrap().len() > 0, "{name}");
    }
    assert_eq!(cheeger(&out, &["verify", "--qs", "2.5", "--corpus", disk.to_str().unwrap()]), 2);
}
