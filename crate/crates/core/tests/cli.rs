use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const WORKED: &str = r#"{
  "helix": {"pitch_m": 3.0, "radius_m": 0.3183098861837907},
  "medium": {"eps1": 2.5, "eps2": -1.5, "eps3": 2.0}
}"#;

fn vacphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vacphase")).args(args).output().expect("spawn vacphase")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn phase_json(config: &Path) -> serde_json::Value {
    let out = vacphase(&["phase", "--config", s(config), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn phase_worked_example() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "w.json", WORKED);
    let v = phase_json(&cfg);
    let b = &v["breakdown"];
    assert!((b["phi_vac_R"].as_f64().unwrap() - 0.4 * PI).abs() < 1e-12);
    assert!((b["phi_vac_L"].as_f64().unwrap() + 0.2 * PI).abs() < 1e-12);
    assert!((b["phi_vac_total"].as_f64().unwrap() - 0.2 * PI).abs() < 1e-12);

    let text = vacphase(&["phase", "--config", s(&cfg), "--degrees"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("36.000000000000 deg"), "{text}");
}

#[test]
fn phase_normal_ordering_has_no_vacuum_term() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "n.json",
        r#"{
  "helix": {"pitch_m": 3.0, "radius_m": 0.3183098861837907},
  "medium": {"eps1": 2.5, "eps2": -1.5, "eps3": 2.0},
  "ordering": "normal"
}"#,
    );
    let v = phase_json(&cfg);
    assert_eq!(v["breakdown"]["phi_vac_total"].as_f64().unwrap(), 0.0);
}

#[test]
fn phase_evanescent_medium_fails_with_index_name() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "e.json",
        r#"{
  "helix": {"pitch_m": 3.0, "radius_m": 0.3},
  "medium": {"eps1": 1.0, "eps2": -2.0, "eps3": 1.0}
}"#,
    );
    let out = vacphase(&["phase", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n_plus"));
}

#[test]
fn config_errors_exit_two_with_key_path() {
    let dir = TempDir::new().unwrap();
    let unknown = write(
        &dir,
        "u.json",
        r#"{"helix": {"pitch_m": 3.0, "radius_m": 0.3}, "medium": {"eps1": 2.0, "eps2": 0.0, "eps3": 1.0, "eps4": 1.0}}"#,
    );
    let out = vacphase(&["phase", "--config", s(&unknown)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("medium"));

    let bad_pitch =
        write(&dir, "p.json", r#"{"helix": {"pitch_m": -1.0, "radius_m": 0.3}, "medium": {"eps1": 2.0, "eps2": 0.0, "eps3": 1.0}}"#);
    let out = vacphase(&["phase", "--config", s(&bad_pitch)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("helix.pitch_m"));

    let out = vacphase(&["phase", "--config", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));

    let out = vacphase(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_defaults_pass_and_impossible_tolerance_fails() {
    let out = vacphase(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "t.json",
        r#"{
  "helix": {"pitch_m": 3.0, "radius_m": 0.3183098861837907},
  "medium": {"eps1": 2.5, "eps2": -1.5, "eps3": 2.0},
  "oracle": {"tolerance": 1e-300}
}"#,
    );
    let out = vacphase(&["verify", "--config", s(&cfg), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["passed"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"sector_propagate_R"), "{failed:?}");
}

fn read_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn two_axis_sweep_row_major() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "s.json",
        &format!(
            r#"{{
  "base": {WORKED},
  "axes": [
    {{"path": "helix.radius_m", "values": {{"start": 0.1, "stop": 0.5, "count": 5}}}},
    {{"path": "medium.eps2", "values": [-1.5, -0.5, 0.5, 1.5]}}
  ]
}}"#
        ),
    );
    let out_path = dir.path().join("grid.csv");
    let out = vacphase(&["sweep", "--config", s(&spec), "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_path);
    assert_eq!(header[0], "helix.radius_m");
    assert_eq!(header[1], "medium.eps2");
    assert_eq!(header.last().unwrap(), "error");
    assert_eq!(rows.len(), 20);
    let radius: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let eps2: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(radius[0], radius[3]);
    assert!(radius[4] > radius[3]);
    assert_eq!(eps2[0], -1.5);
    assert_eq!(eps2[3], 1.5);
    assert!(rows.iter().all(|r| r.last().unwrap().is_empty()));
}

#[test]
fn time_sweep_is_linear_in_time() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "t.json",
        &format!(r#"{{"base": {WORKED}, "axes": [{{"path": "time.value", "values": [1.0, 2.0, 3.0]}}]}}"#),
    );
    let out_path = dir.path().join("t.csv");
    let out = vacphase(&["sweep", "--config", s(&spec), "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_rows(&out_path);
    let col = header.iter().position(|h| h == "phi_vac_total").unwrap();
    let v: Vec<f64> = rows.iter().map(|r| r[col].parse().unwrap()).collect();
    for (k, value) in v.iter().enumerate() {
        let want = 0.2 * PI * (k + 1) as f64;
        assert!((value - want).abs() <= 1e-12 * want, "{value} vs {want}");
    }
}

#[test]
fn sweep_records_evanescent_rows() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "e.json",
        &format!(r#"{{"base": {WORKED}, "axes": [{{"path": "medium.eps2", "values": [-3.0, 0.0]}}]}}"#),
    );
    let out_path = dir.path().join("e.csv");
    let out = vacphase(&["sweep", "--config", s(&spec), "--out", s(&out_path)]);
    let (_, rows) = read_rows(&out_path);
    assert_eq!(rows.len(), 2);
    assert!(rows[0].last().unwrap().contains("n_plus"));
    assert!(rows[1].last().unwrap().is_empty());
    assert_ne!(out.status.code(), Some(2));
}

#[test]
fn modes_tables() {
    let out = vacphase(&["modes", "--eps1", "2.5", "--eps2", "-1.5", "--eps3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("n_plus  (R) 1.000000000000"), "{text}");
    assert!(text.contains("n_minus (L) 2.000000000000"), "{text}");

    let out = vacphase(&["modes", "--eps1", "2", "--eps2", "0", "--eps3", "1"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("degenerate"));

    let out = vacphase(&["modes", "--eps1", "1", "--eps2", "2", "--eps3", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("advisory: n_minus evanescent"));
}
