use std::process::{Command, Output};

use serde_json::Value;

fn cpn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cpn")).args(args).output().expect("cpn runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn count_cp2() {
    let out = cpn(&["count", "--n", "2", "--variant", "cp"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "9\n");
}

#[test]
fn count_by_height() {
    let out = cpn(&["count", "--n", "2", "--variant", "cp", "--by-height"]);
    assert_eq!(stdout(&out), "0 1\n1 6\n2 2\n");
}

#[test]
fn enumerate_cp1() {
    let out = cpn(&["enumerate", "--n", "1", "--variant", "cp"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "PT 1 -\nPT 1 1->1\n");
}

#[test]
fn enumerate_to_file() {
    let dir = std::env::temp_dir().join(format!("cpn-enum-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cp2.txt");
    let out = cpn(&["enumerate", "--n", "2", "--variant", "cp", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 9);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_single_suite() {
    let out = cpn(&["verify", "--n", "3", "--suite", "thm2.1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], true);
    let r = &v["reports"][0];
    assert_eq!(r["suite"], "thm2.1");
    assert_eq!(r["checked"], 50);
    assert_eq!(r["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_reports_mismatches_with_exit_1() {
    let out = cpn(&["verify", "--n", "4", "--suite", "thm3.6"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let cert = &v["reports"][0]["mismatches"][0];
    assert_eq!(cert["elements"].as_array().unwrap().len(), 2);
    assert_eq!(cert["characterized"], true);
    assert_eq!(cert["oracle"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cpn(&["count", "--n", "2", "--variant", "xyz"]).status.code(), Some(2));
    assert_eq!(cpn(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(cpn(&["count", "--n", "20", "--variant", "cp"]).status.code(), Some(2));
    assert_eq!(cpn(&["regular", "--n", "3", "--variant", "ct", "--mode", "char"]).status.code(), Some(2));
    assert_eq!(cpn(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn regular_both_modes_agree_on_cp3() {
    let out = cpn(&["regular", "--n", "3", "--variant", "cp", "--mode", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["elements"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    let bad = rows.iter().find(|r| r["element"] == "PT 3 1->1,3->2").unwrap();
    assert_eq!(bad["characterized"], false);
    assert_eq!(bad["oracle"], false);
}

#[test]
fn regular_oracle_on_total_contractions() {
    let out = cpn(&["regular", "--n", "3", "--variant", "ct", "--mode", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["elements"].as_array().unwrap().len(), 17);
}

#[test]
fn green_classes_match_on_cp3() {
    for rel in ["L", "R", "H", "D", "J"] {
        let out = cpn(&["green", "--n", "3", "--variant", "cp", "--relation", rel, "--mode", "both"]);
        assert_eq!(out.status.code(), Some(0), "{rel}");
        let v = json(&out);
        assert_eq!(v["oracle_classes"], v["characterized_classes"], "{rel}");
    }
}

#[test]
fn eggbox_json_and_dot() {
    let out = cpn(&["eggbox", "--n", "1", "--variant", "cp", "--format", "json"]);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["variant"], "cp");
    let d = v["d_classes"].as_array().unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d[0]["elements"][0], "PT 1 1->1");
    assert_eq!(d[0]["regular"], true);

    let dot = stdout(&cpn(&["eggbox", "--n", "2", "--variant", "ocp", "--format", "dot"]));
    assert!(dot.starts_with("graph "));
    assert!(dot.contains("subgraph cluster_d0"));
}

#[test]
fn eggbox_partitions_cp3() {
    let v = json(&cpn(&["eggbox", "--n", "3", "--variant", "cp"]));
    let total: usize = v["d_classes"].as_array().unwrap().iter().map(|d| d["elements"].as_array().unwrap().len()).sum();
    assert_eq!(total, 50);
    for d in v["d_classes"].as_array().unwrap() {
        let size = d["elements"].as_array().unwrap().len();
        let l: usize = d["l_classes"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
        let r: usize = d["r_classes"].as_array().unwrap().iter().map(|c| c.as_array().unwrap().len()).sum();
        assert_eq!((l, r), (size, size));
    }
}
