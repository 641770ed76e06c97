use std::process::Command;

use serde_json::Value;

fn ell(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ell")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = ell(args);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{out:?}: {e}")))
}

#[test]
fn factor_is_byte_stable() {
    let (code, out) = ell(&["factor", "12"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"schema\":\"ellgrp/1\",\"input\":12,\"factors\":[-2,2]}\n");
    assert_eq!(ell(&["factor", "12"]).1, out);
}

#[test]
fn negative_arguments() {
    let (code, v) = json(&["factor", "-8"]);
    assert_eq!(code, 0);
    assert_eq!(v["factors"], serde_json::json!([2, 2]));
    let (_, v) = json(&["circ-prime", "-10"]);
    assert_eq!(v["circ_prime"], Value::Bool(true));
    assert_eq!(json(&["circ-prime", "0"]).0, 1);
}

#[test]
fn curve_classification() {
    let (code, v) = json(&["curve", "--p", "7", "--cubic", "1,2,-3,0,0,0,0,0,0,0", "--classify"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "ellgrp/1");
    assert_eq!(v["points"], 9);
    assert_eq!(v["flexes"], 0);
    assert_eq!(v["canonical"]["variant"], "OneTorsion");
    assert_eq!(v["canonical"]["k"], 1);
    assert_eq!(v["canonical"]["shape"], serde_json::json!([3]));
}

#[test]
fn iso_distinguishes_the_two_cyclic_nine_groups() {
    let (code, v) = json(&["iso", "--left", "9:1", "--right", "9:0"]);
    assert_eq!(code, 0);
    assert_eq!(v["isomorphic"], false);
    assert_eq!(json(&["iso", "--left", "9:4", "--right", "9:1"]).1["isomorphic"], true);
}

#[test]
fn euclid_and_coproduct() {
    let (_, v) = json(&["euclid", "2,1"]);
    assert_eq!(v["witness"], 4);
    let (code, v) = json(&["coproduct", "--left", "3:0", "--right", "3:0"]);
    assert_eq!(code, 0);
    assert_eq!(v["recipe"], "FlexFlex");
    assert_eq!(v["object"], "3,3,3:0,0,0");
}

#[test]
fn failing_table_exits_one() {
    let path = std::env::temp_dir().join(format!("ell-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"size":2,"labels":["a","b"],"table":[[0,0],[1,1]]}"#).unwrap();
    let (code, v) = json(&["verify-table", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1);
    assert_eq!(v["eg1"], false);
    assert_eq!(v["first_violation"]["axiom"], "EG1");
}

#[test]
fn validation_errors_exit_two() {
    assert_eq!(ell(&["nonsense"]).0, 2);
    assert_eq!(ell(&["curve", "--p", "7", "--cubic", "1,2,3"]).0, 2);
    assert_eq!(ell(&["hom", "--src", "3:1"]).0, 2);
    let (code, v) = json(&["table", "3:7,1"]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
}

#[test]
fn pretty_mode() {
    let (code, out) = ell(&["--pretty", "iso", "--left", "3:0", "--right", "3:0"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("isomorphic: true\n"), "{out}");
}
