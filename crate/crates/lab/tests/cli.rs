use std::process::{Command, Output};

use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rickart-lab"))
        .args(args)
        .env_remove("RICKART_LAB_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    lab(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = lab(args);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["props", "Z2+Z16"]), 0);
    assert_eq!(code(&["check", "E_SIP"]), 0);
    assert_eq!(code(&["check", "T_SDR2", "--max-order", "24"]), 0);
    assert_eq!(code(&["ring", "f2", "probe"]), 0);
    assert_eq!(code(&["check", "SKEW_EXAMPLE"]), 1);
    assert_eq!(code(&["check", "REG_COR", "--max-order", "8"]), 1);
    assert_eq!(code(&["props", "Zx"]), 2);
    assert_eq!(code(&["check", "NOPE"]), 2);
    assert_eq!(code(&["ring", "nope", "probe"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["props", "Z2^13"]), 3);
}

#[test]
fn diagnostics_go_to_stderr() {
    let out = lab(&["check", "NOPE"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOPE"));
}

#[test]
fn props_json() {
    let v = json(&["props", "Z2+Z16", "--json"]);
    assert_eq!(v["properties"]["CS_RICKART"]["value"], false);
    assert_eq!(v["properties"]["SIP_EXTENDING"]["value"], true);
    assert_eq!(v["properties"]["STRICTLY_SIP_EXTENDING"]["value"], false);
}

#[test]
fn summands_and_classify() {
    let v = json(&["summands", "Z2+Z16"]);
    let s = v["summands"].as_array().unwrap();
    assert_eq!(s.len(), 6);
    assert_eq!(s.iter().filter(|x| x["fully_invariant"] == true).count(), 2);
    let c = json(&["classify", "Z+Z4"]);
    assert_eq!(c["properties"]["STRONGLY_CS_RICKART"], false);
    let q = json(&["classify", "Q"]);
    assert_eq!(q["properties"]["STRONGLY_CS_RICKART"], true);
}

#[test]
fn check_json_is_byte_identical_across_runs() {
    let args = ["check", "T_SDR2", "--max-order", "24", "--json"];
    let (a, b) = (lab(&args), lab(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["theorem"], "T_SDR2");
    assert_eq!(v["corpus"]["max_order"], 24);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn environment_overrides_default_bound() {
    let out = Command::new(env!("CARGO_BIN_EXE_rickart-lab"))
        .args(["check", "T_SDR1", "--json"])
        .env("RICKART_LAB_MAX_ORDER", "8")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["corpus"]["max_order"], 8);
    assert_eq!(v["corpus"]["size"], 28);
}

#[test]
fn probe_reports_discrepancies_without_failing() {
    let out = lab(&["ring", "f2", "probe", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["failures"].as_array().unwrap().is_empty());
    assert!(!v["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn cache_command_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(code(&["cache", "--cache-dir", d, "--warm", "8"]), 0);
    let v = json(&["cache", "--cache-dir", d]);
    let entries = v["entries"].as_array().unwrap();
    // every group of order at most 8
    assert_eq!(entries.len(), 11);
    let z2sq = entries.iter().find(|e| e["key"] == "2-2").unwrap();
    assert_eq!(z2sq["subgroups"], 5);
    assert_eq!(code(&["check", "ST1", "--max-order", "8", "--cache-dir", d]), 0);
    let cleared = lab(&["cache", "--cache-dir", d, "--clear"]);
    assert!(String::from_utf8_lossy(&cleared.stdout).contains("removed 11"));
    assert_eq!(code(&["cache", "--warm", "65", "--cache-dir", d]), 2);
}
