use std::process::{Command, Output};

use serde_json::Value;

use delpezzo::rational::{format_rational, parse_rational};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delpezzo")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Every string that parses as a rational is already in lowest terms.
fn assert_canonical_rationals(v: &Value) {
    match v {
        Value::String(s) => {
            if let Ok(q) = parse_rational(s) {
                assert_eq!(&format_rational(&q), s);
            }
        }
        Value::Array(items) => items.iter().for_each(assert_canonical_rationals),
        Value::Object(map) => map.values().for_each(assert_canonical_rationals),
        _ => {}
    }
}

#[test]
fn counterexample_at_one_half() {
    let v = json(&["counterexample", "--lambda", "1/2"]);
    assert_eq!(v["alpha"], "8/9");
    assert_eq!(v["alpha_c"], "1");
    assert_eq!(v["conjecture_violated"], true);
    assert_canonical_rationals(&v);
}

#[test]
fn theorem_at_zero() {
    let v = json(&["alpha", "theorem", "--lambda", "0", "--n", "1", "--alpha-s", "1"]);
    assert_eq!(v["alpha"], "1");
    let v = json(&["alpha", "theorem", "--lambda", "-1/5", "--n", "2", "--alpha-s", "5/6", "--allow-negative-lambda"]);
    assert_eq!(v["alpha"], "25/18");
    let out = run(&["alpha", "theorem", "--lambda", "-1/5", "--n", "2", "--alpha-s", "5/6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn lemma_verification() {
    let v = json(&["lemma", "verify", "local-1"]);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["certificates"], 1);
    let v = json(&["lemma", "verify", "all"]);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["lemmas"].as_array().unwrap().len(), 12);
    let v = json(&["lemma", "verify", "local-1", "--probe", "x<=1"]);
    assert_eq!(v["status"], "feasible");
    assert!(parse_rational(v["witness"]["x"].as_str().unwrap()).unwrap() > parse_rational("1").unwrap());
    assert_eq!(run(&["lemma", "verify", "local-1", "--probe", "a>=0"]).status.code(), Some(1));
    assert_eq!(run(&["lemma", "verify", "local-1", "--probe", "nothing"]).status.code(), Some(2));
    assert_eq!(run(&["lemma", "verify", "local-9"]).status.code(), Some(2));
}

#[test]
fn classification_and_ampleness() {
    let v = json(&["classify", "--class", "3,-9/10,-1,-1,-1,-1,-1,-1,-1"]);
    assert_eq!(v["type"], "P2");
    assert_eq!(v["mu"], "1");
    assert_eq!(v["a"][0], "1/10");
    assert_eq!(v["recomposition_ok"], true);
    let v = json(&["ample", "--class", "3,-3/2,-1,-1,-1,-1,-1,-1,-1"]);
    assert_eq!(v["ample"], false);
    assert_eq!(v["pseudoeffective"], true);
    let v = json(&["ample", "--class", "-3,1,1,1,1,1,1,1,1"]);
    assert_eq!(v["pseudoeffective"], false);
    assert!(v["separating_nef_class"].is_string());
    assert_eq!(run(&["classify", "--class", "0,1,0,0,0,0,0,0,0"]).status.code(), Some(2));
    let v = json(&["alpha", "conjecture", "--class", "3,-1/2,-1,-1,-1,-1,-1,-1,-1"]);
    assert_eq!(v["alpha_c"], "1");
}

#[test]
fn surfaces() {
    let v = json(&["surface", "analyze", "--a", "4:1,0,0,0,0", "--b", "6:0,0,0,0,0,0,1", "--q", "2:0,0,0", "--g", "3:0,0,0,1"]);
    assert_eq!(v["smooth"], true);
    assert_eq!(v["cuspidal_member"], false);
    assert_eq!(v["alpha_s"], "1");
    assert_eq!(v["given_pair"]["n_intersections"], 1);
    let bad = run(&["surface", "analyze", "--a", "4:1,0,0,0,0", "--b", "6:0,0,0,0,0,0,1", "--q", "2:0,0,0", "--g", "3:0,1,0,0"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(run(&["surface", "analyze", "--a", "4:0,0,0,0,0", "--b", "6:0,0,0,0,0,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["surface", "analyze", "--a", "3:1,0,0,0", "--b", "6:0,0,0,0,0,0,1"]).status.code(), Some(2));
}

#[test]
fn tables_and_ranges() {
    assert_eq!(json(&["alpha", "table", "--degree", "1", "--flags", "cuspidal"])["alpha"], "5/6");
    assert_eq!(json(&["alpha", "table", "--degree", "4"])["alpha"], "2/3");
    assert_eq!(run(&["alpha", "table", "--degree", "1"]).status.code(), Some(2));
    assert_eq!(json(&["range", "kstable", "--lambda", "1/5"])["contains"], true);
    assert_eq!(json(&["range", "kstable", "--lambda", "-1/6"])["contains"], false);
    assert_eq!(json(&["range", "cylinder", "--lambda", "-1/4"])["contains"], true);
}

#[test]
fn curves() {
    let v = json(&["curves", "enumerate", "--kind", "conic"]);
    assert_eq!(v["count"], 2160);
    assert_eq!(v["bertini_stable"], true);
}

#[test]
fn decimal_rendering_is_additive() {
    let v = json(&["--decimal", "4", "counterexample", "--lambda", "1/2"]);
    assert_eq!(v["alpha"], "8/9");
    assert_eq!(v["alpha_decimal"], "0.8889");
}

#[test]
fn malformed_input_and_help() {
    for args in [
        &["ample", "--bogus"][..],
        &["ample", "--class", "1,2,3"],
        &["counterexample", "--lambda", "1/0"],
        &["counterexample", "--lambda", "0.5"],
        &["counterexample", "--lambda", "1"],
        &["alpha", "theorem", "--lambda", "0", "--n", "4", "--alpha-s", "1"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    for args in [
        &["--help"][..],
        &["curves", "enumerate", "--help"],
        &["ample", "--help"],
        &["classify", "--help"],
        &["alpha", "conjecture", "--help"],
        &["alpha", "theorem", "--help"],
        &["alpha", "table", "--help"],
        &["surface", "analyze", "--help"],
        &["counterexample", "--help"],
        &["range", "--help"],
        &["lemma", "verify", "--help"],
    ] {
        assert!(run(args).status.success(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["lemma", "verify", "all"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["classify", "--class", "6,-1,-2,-2,-2,-2,-2,-2,-2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
