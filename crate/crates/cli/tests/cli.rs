use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn circstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn analyze_reports_stable_c2_instance() {
    let v = json(&circstab(&["analyze", "--n", "12", "--set", "3,4,8,9"]));
    assert_eq!(v["verdict"]["status"], "stable");
    assert_eq!(v["conditions"]["c2"]["holds"], true);
    assert_eq!(v["conditions"]["c2"]["b"], 3);
    assert_eq!(v["vertices"], 12);
    assert_eq!(v["edges"], 24);
}

#[test]
fn analyze_accepts_product_groups() {
    let v = json(&circstab(&[
        "analyze",
        "--group",
        "4x4",
        "--set",
        "(2,2),(0,2),(1,3),(3,1),(0,1),(0,3)",
        "--no-compat",
    ]));
    assert_eq!(v["verdict"]["status"], "nontrivially_unstable");
    assert_eq!(v["arcTransitive"], true);
    assert!(v["conditions"].is_null());
    assert!(v["compatibility"].is_null());
}

#[test]
fn invalid_inputs_exit_with_bad_input() {
    for args in [
        &["analyze", "--n", "12", "--set", "3,4"][..],
        &["analyze", "--n", "12", "--set", "0,1,11"][..],
        &["conditions", "--n", "0", "--set", "1"][..],
        &["family", "thm3", "--l", "3", "--m", "9"][..],
        &["analyze", "--set", "1"][..],
    ] {
        let out = circstab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn vertex_cap_exits_with_resource_code() {
    let out = circstab(&["--vertex-cap", "10", "analyze", "--n", "12", "--set", "1,11"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn node_limit_exhaustion_is_a_resource_failure() {
    let out = circstab(&["compat", "--n", "12", "--set", "1,11", "--method", "matrix", "--node-limit", "1"]);
    let code = out.status.code();
    assert!(code == Some(3) || code == Some(0), "{code:?}");
    if code == Some(0) {
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v[0]["inconclusive"], false);
    }
}

#[test]
fn conditions_subcommand() {
    let v = json(&circstab(&["conditions", "--n", "24", "--set", "2,3,8,9,10,14,15,16,21,22"]));
    for c in ["c1", "c2prime", "c3", "c4"] {
        assert_eq!(v[c]["holds"], false, "{c}");
    }
    assert_eq!(v["c2"]["holds"], true);
    assert_eq!(v["anyCorrected"], false);
}

#[test]
fn compat_both_methods_agree() {
    let v = json(&circstab(&["compat", "--n", "15", "--set", "1,4,11,14", "--method", "both"]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["compatible"], true);
    assert_eq!(arr[1]["compatible"], true);
}

#[test]
fn skeleton_json_and_dot() {
    let v = json(&circstab(&["skeleton", "--n", "8", "--set", "1,4,7"]));
    assert_eq!(v["booleanSquare"]["set"], serde_json::json!(["2", "3", "5", "6"]));
    assert_eq!(v["cartesianSkeleton"]["set"], serde_json::json!(["3", "5"]));
    assert_eq!(v["dispensable"].as_array().unwrap().len(), 8);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sk.dot");
    let out = circstab(&["skeleton", "--n", "8", "--set", "1,4,7", "--emit", "dot", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.contains("graph"));
    assert!(dot.contains("--"));
}

#[test]
fn dcover_of_odd_circulant_is_circulant() {
    let v = json(&circstab(&["dcover", "--n", "3", "--set", "1,2"]));
    assert_eq!(v["circulant"]["n"], 6);
    let dot = circstab(&["dcover", "--n", "3", "--set", "1,2", "--emit", "dot"]);
    assert!(dot.status.success());
    assert_eq!(String::from_utf8_lossy(&dot.stdout).matches("--").count(), 6);
}

#[test]
fn thm3_family_passes() {
    let v = json(&circstab(&["family", "thm3", "--l", "3", "--m", "5"]));
    assert_eq!(v["allPass"], true);
    assert_eq!(v["n"], 15);
}

#[test]
fn survey_resumes_from_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let p = path.to_str().unwrap();
    let full = json(&circstab(&["survey", "--min-n", "3", "--max-n", "9", "--out", p]));
    assert_eq!(full["total"], 51);
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 52);
    let header: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(header["version"], "circstab-survey/1");

    // keep the header, ten records and half of the next line
    let mut torn = lines[..11].join("\n");
    torn.push('\n');
    torn.push_str(&lines[11][..lines[11].len() / 2]);
    fs::write(&path, torn).unwrap();
    let resumed = json(&circstab(&["survey", "--min-n", "3", "--max-n", "9", "--out", p]));
    assert_eq!(resumed, full);
    let again = fs::read_to_string(&path).unwrap();
    assert_eq!(again.lines().count(), 52);
    for line in again.lines() {
        serde_json::from_str::<Value>(line).unwrap();
    }
}

#[test]
fn survey_csv_goes_to_stdout() {
    let out = circstab(&["survey", "--min-n", "3", "--max-n", "6", "--csv"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "status"));
    assert_eq!(rdr.records().count(), 1 + 3 + 3 + 7);
    let agg: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(agg["total"], 14);
}

#[test]
fn c2_filter_counts() {
    let v = json(&circstab(&["survey", "--min-n", "12", "--max-n", "12", "--c2-b", "3", "--no-compat"]));
    assert_eq!(v["total"], 31);
    assert_eq!(v["unstable"], 22);
}
