//! The `kohn` binary: exit codes, schemas, and write-then-verify round trips.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn kohn(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_kohn")).args(args).output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exited"), json)
}

fn domain(dir: &Path, name: &str, gens: &[&str]) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let v = serde_json::json!({"variables": ["z1", "z2"], "generators": gens});
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn multiplicity_values() {
    let dir = tempfile::tempdir().unwrap();
    for (gens, q) in [(&["z1", "z2"][..], 1), (&["z1^2", "z2^3"], 6), (&["z1^2", "z2^3 + z2*z1^5"], 6)] {
        let (code, v) = kohn(&["multiplicity", s(&domain(dir.path(), "d", gens))]);
        assert_eq!(code, 0);
        assert_eq!(v["q"], q);
        assert_eq!(v["origin_isolated"], true);
    }
    let (code, v) = kohn(&["multiplicity", s(&domain(dir.path(), "line", &["z1"]))]);
    assert_eq!(code, 0);
    assert_eq!(v["q"], "infinite");
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"variables": ["z1", "z2"], "generators": ["z1^^2"]}"#).unwrap();
    assert_eq!(kohn(&["multiplicity", s(&bad)]).0, 2);
    assert_eq!(kohn(&["multiplicity", s(&dir.path().join("missing.json"))]).0, 2);
    assert_eq!(kohn(&["catlin-dangelo", "--M", "2", "--N", "2", "--K", "3"]).0, 2);
    let matrix = dir.path().join("m.json");
    std::fs::write(&matrix, r#"{"vars": ["z1", "z2"], "entries": [["z1", "0"]]}"#).unwrap();
    assert_eq!(kohn(&["matrix-lab", s(&matrix)]).0, 2);
    assert_eq!(kohn(&["no-such-command"]).0, 2);
}

#[test]
fn full_radical_exit_codes_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("trace.json");
    let (code, v) = kohn(&["full-radical", s(&domain(dir.path(), "c", &["z1", "z2"])), "--out", s(&out)]);
    assert_eq!(code, 0);
    assert_eq!(v["nu_star"], 0);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["schema"], "kohn-trace/1");
    assert_eq!(written["caps"]["max_rounds"], 8);
    assert_eq!(written["caps"]["power_cap"], 64);
    assert_eq!(written["caps"]["radical_degree_cap"], 6);

    let cd9 = domain(dir.path(), "cd9", &["z1^2", "z2^3 + z2*z1^9"]);
    let (code, v) = kohn(&["full-radical", s(&cd9), "--power-cap", "8"]);
    assert_eq!(code, 3);
    assert_eq!(v["caps"]["power_cap"], 8);

    let cd4 = domain(dir.path(), "cd4", &["z1^2", "z2^3 + z2*z1^4"]);
    let (code, v) = kohn(&["full-radical", s(&cd4)]);
    assert_eq!(code, 0);
    assert!(v["p_list"].as_array().unwrap().iter().all(Value::is_u64));
}

#[test]
fn effective3d_write_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = domain(dir.path(), "cd", &["z1^2", "z2^3 + z2*z1^5"]);
    let cert = dir.path().join("cert.json");
    let (code, v) = kohn(&["effective3d", s(&d), "--seed", "3", "--out", s(&cert)]);
    assert_eq!(code, 0);
    assert_eq!(v["config"]["seed"], 3);
    assert_eq!(v["final_order"], "1/1024");
    assert_eq!(kohn(&["verify", s(&d), s(&cert)]).0, 0);

    // Against another domain.
    let other = domain(dir.path(), "other", &["z1^2", "z2^3 + z2*z1^6"]);
    let (code, v) = kohn(&["verify", s(&other), s(&cert)]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);

    // One byte changed in a payload.
    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = text.replacen("z1^2", "z1^3", 3);
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, tampered).unwrap();
    assert_eq!(kohn(&["verify", s(&d), s(&bad)]).0, 1);

    let coords = domain(dir.path(), "coords", &["z1", "z2"]);
    let (code, v) = kohn(&["effective3d", s(&coords)]);
    assert_eq!(code, 0);
    assert_eq!(v["final_order"], "1/4");
    assert_eq!(v["certificate"]["schema"], "kohn-cert/1");
}

#[test]
fn effective3d_cap_and_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let sq = domain(dir.path(), "sq", &["z1^2", "z2^2"]);
    let (code, v) = kohn(&["effective3d", s(&sq), "--degree-budget", "10"]);
    assert_eq!(code, 3);
    assert_eq!(v["config"]["degree_budget"], 10);
    let line = domain(dir.path(), "line", &["z1", "z1*z2"]);
    assert_eq!(kohn(&["effective3d", s(&line)]).0, 2);
}

#[test]
fn catlin_dangelo_report() {
    let (code, v) = kohn(&["catlin-dangelo", "--M", "2", "--N", "3", "--K", "5", "--mode", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "kohn-report/1");
    assert_eq!(v["final_order"], "1/1024");
    assert!(v["p1_lower"].as_u64().unwrap() >= 5);
    assert_eq!(v["caps"]["power_cap"], 64);
    let (code, v) = kohn(&["catlin-dangelo", "--M", "2", "--N", "3", "--K", "4", "--mode", "effective"]);
    assert_eq!(code, 0);
    assert!(v["p1"].is_null());
}

#[test]
fn matrix_lab_reports() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.json");
    std::fs::write(&id, r#"{"vars": ["z1", "z2"], "entries": [["1", "0"], ["0", "1"]]}"#).unwrap();
    let (code, v) = kohn(&["matrix-lab", s(&id)]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "reducible");
    assert_eq!(v["decomposition"], serde_json::json!(["0", "0"]));
}

#[test]
fn table_format() {
    let (code, _) = kohn(&["--format", "table", "catlin-dangelo", "--M", "2", "--N", "3", "--K", "5", "--mode", "effective"]);
    assert_eq!(code, 0);
    let out = Command::new(env!("CARGO_BIN_EXE_kohn"))
        .args(["catlin-dangelo", "--M", "2", "--N", "3", "--K", "5", "--mode", "effective", "--format", "table"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("final_order") && l.ends_with("1/1024")));
}
