use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = r#"{"n":3,"relations":[[1,1],[1,2],[2,3],[3,3]]}"#;
const TWO_CYCLE: &str = r#"{"schema_version":1,"n":2,"relations":[[1,2],[2,1]]}"#;

fn file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn pbw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbw")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn graph_formats() {
    let alg = file("graph_cycle.json", TWO_CYCLE);
    let out = pbw(&["graph", "--input", path_str(&alg)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["overlaps"], serde_json::json!([[1, 2, 1], [2, 1, 2]]));

    let dot = pbw(&["graph", "--input", path_str(&alg), "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph relations {"));
    assert!(text.contains("1 -> 2;") && text.contains("2 -> 1;"));
}

#[test]
fn constraints_and_reduce() {
    let alg = file("constraints_example.json", EXAMPLE);
    let out = pbw(&["constraints", "--input", path_str(&alg)]);
    assert_eq!(out.status.code(), Some(0));
    let list = json(&out)["constraints"].as_array().unwrap().clone();
    let cond_i = list.iter().filter(|c| c["origin"].as_str().unwrap().starts_with("I.")).count();
    assert_eq!(cond_i, 7);

    let reduced = pbw(&["constraints", "--input", path_str(&alg), "--reduce"]);
    let residual = json(&reduced)["constraints"].as_array().unwrap().clone();
    assert_eq!(residual.len(), 4);
    assert!(residual.iter().all(|c| c["origin"] == "II"));

    let red = json(&pbw(&["reduce", "--input", path_str(&alg)]));
    assert_eq!(
        red["free_a"],
        serde_json::json!(["a[1,1;1]", "a[1,2;1]", "a[1,2;2]", "a[2,3;2]", "a[3,3;3]"])
    );
    assert_eq!(red["rules"]["a[2,3;3]"], "a[1,2;1]");
}

#[test]
fn deform_then_check_and_oracle() {
    let alg = file("deform_cycle.json", TWO_CYCLE);
    let out = pbw(&["deform", "--input", path_str(&alg)]);
    assert_eq!(out.status.code(), Some(0));
    let d = json(&out);
    assert_eq!(d["case"], 2);
    assert_eq!(d["witness"]["two_cycle"], serde_json::json!([1, 2]));
    assert_eq!(d["relations"], serde_json::json!(["x1*x2 - x2 - x1 + 1", "x2*x1 - x2 - x1 + 1"]));

    let params = file("deform_cycle_params.json", std::str::from_utf8(&out.stdout).unwrap());
    for cmd in ["check", "oracle"] {
        let v = pbw(&[cmd, "--input", path_str(&alg), "--params", path_str(&params)]);
        assert_eq!(v.status.code(), Some(0), "{cmd}");
        assert_eq!(json(&v)["pbw"], true);
    }
}

#[test]
fn negative_verdict_exits_one() {
    let alg = file("negative_cycle.json", TWO_CYCLE);
    let params = file("negative_params.json", r#"{"b":[{"i":1,"j":2,"value":"1/2"}]}"#);
    let check = pbw(&["check", "--input", path_str(&alg), "--params", path_str(&params)]);
    assert_eq!(check.status.code(), Some(1));
    let v = json(&check);
    assert_eq!(v["pbw"], false);
    assert_eq!(v["failures"].as_array().unwrap().len(), 2);

    let oracle = pbw(&["oracle", "--input", path_str(&alg), "--params", path_str(&params)]);
    assert_eq!(oracle.status.code(), Some(1));
    let failures = json(&oracle)["failures"].as_array().unwrap().clone();
    assert_eq!(failures[0]["triple"], serde_json::json!([1, 2, 1]));
    assert_eq!(failures[0]["left"], "1/2*x1");
    assert_eq!(failures[0]["right"], "0");

    let pruned = pbw(&["check", "--prune", "--input", path_str(&alg), "--params", path_str(&params)]);
    assert_eq!(pruned.status.code(), Some(1));
}

#[test]
fn validation_errors_exit_two() {
    let bad = file("bad_index.json", r#"{"n":2,"relations":[[1,3]]}"#);
    let out = pbw(&["graph", "--input", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("$.relations[0][1]") && err.contains("index 3 out of range"));

    let alg = file("scope_alg.json", r#"{"n":2,"relations":[[1,2]]}"#);
    let params = file("scope_params.json", r#"{"a":[{"i":2,"j":2,"m":1,"value":1}],"b":[{"i":1,"j":2,"value":"x"}]}"#);
    let out = pbw(&["check", "--input", path_str(&alg), "--params", path_str(&params)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("params$.a[0]") && err.contains("out of scope"));
    assert!(err.contains("params$.b[0].value"));

    let free = file("free_alg.json", r#"{"n":1,"relations":[]}"#);
    assert_eq!(pbw(&["deform", "--input", path_str(&free)]).status.code(), Some(2));
    assert_eq!(pbw(&["check", "--input", path_str(&free)]).status.code(), Some(2));
    assert_eq!(pbw(&["survey", "--n", "5"]).status.code(), Some(2));
    assert_eq!(pbw(&["graph"]).status.code(), Some(2));
    let malformed = file("malformed.json", "{");
    assert_eq!(pbw(&["graph", "--input", path_str(&malformed)]).status.code(), Some(2));
}

#[test]
fn shortcuts_report() {
    let alg = file("shortcut_path.json", r#"{"n":4,"relations":[[1,2],[2,3],[3,4]]}"#);
    let v = json(&pbw(&["shortcuts", "--input", path_str(&alg)]));
    let overlaps = v["overlaps"].as_array().unwrap();
    assert_eq!(overlaps.len(), 2);
    for o in overlaps {
        assert_eq!(o["shape"], "ijk");
        assert_eq!(o["clauses"], serde_json::json!([1, 2]));
        assert_eq!(o["skip_iii_after"], "I+II");
    }
    assert_eq!(overlaps[0]["skip_ii_r"], serde_json::json!([4]));
}

#[test]
fn survey_csv_and_json() {
    let out = pbw(&["survey", "--n", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2], "1,11,1,1,0,0,0,0,0,1,0,1");

    let first = pbw(&["survey", "--n", "2"]);
    let second = pbw(&["survey", "--n", "2"]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(json(&first)["rows"].as_array().unwrap().len(), 16);
}

#[test]
fn output_flag_writes_file() {
    let alg = file("output_alg.json", EXAMPLE);
    let target = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("output_result.json");
    let out = pbw(&["graph", "--input", path_str(&alg), "--output", path_str(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["n"], 3);
}
