//! `run_command` end to end: exit codes, examples and JSON round trips.

use std::io::Write;

use serde_json::Value;

use drgtriples::constraints::BUILTIN_RULES_TOML;
use super::{render_json, run_command, EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK};

const TARGET: &str = "{55,54,2;1,1,54}";

fn run(args: &[&str]) -> (i32, String) {
    run_command(std::iter::once("drgtriples").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out) = run(&full);
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"));
    (code, v, out)
}

#[test]
fn spectrum_example() {
    let (code, out) = run(&["spectrum", TARGET]);
    assert_eq!(code, EXIT_OK);
    for line in ["55^1", "7^1617", "-1^110", "-8^1408"] {
        assert!(out.lines().any(|l| l == line), "{out}");
    }
    let (_, v, _) = run_json(&["spectrum", TARGET]);
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 4);
    assert_eq!(v["spectrum"][3]["eigenvalue"], -8);
}

#[test]
fn triples_211_example() {
    let (code, v, _) = run_json(&["triples", TARGET, "--config", "2,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["point_count"], 3);
    assert_eq!(v["parameter_values"]["[333]"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["table"]["[222]"], "-[333] + 2652");
}

#[test]
fn params_example() {
    let (code, v, _) = run_json(&["params", TARGET]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((v["p"][1][2][2].as_u64(), v["p"][2][2][2].as_u64(), v["p"][3][2][2].as_u64()), (Some(2808), Some(2811), Some(2862)));
    assert_eq!(v["k"], serde_json::json!([1, 55, 2970, 110]));
    let (code, text) = run(&["params", " { 3 , 2 ; 1 , 1 } "]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("v = 10"));
}

#[test]
fn rationals_are_strings() {
    let (_, v, _) = run_json(&["krein", TARGET]);
    assert_eq!(v["q_matrix"][2], serde_json::json!([1, "-49/15", -2, "64/15"]));
    assert_eq!(v["nontrivial_vanishing"], serde_json::json!([]));
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["params", TARGET],
        vec!["spectrum", TARGET],
        vec!["krein", "{3,2,1;1,2,3}"],
        vec!["triples", TARGET, "--config", "2,2,3"],
        vec!["symmetrize", TARGET, "--config", "2,2,1"],
        vec!["prove-moore", TARGET],
        vec!["oracle-check", "--graph", "cube3"],
    ] {
        let (_, v, out) = run_json(&args);
        assert_eq!(render_json(&v), out, "{args:?}");
        let again: Value = serde_json::from_str(&render_json(&v)).unwrap();
        assert_eq!(render_json(&again), out);
    }
}

#[test]
fn prove_moore_report() {
    let (code, v, _) = run_json(&["prove-moore", TARGET]);
    // the mechanical chain stops short of a contradiction
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdict"], "FEASIBLE_UNRESOLVED");
    assert_eq!(v["conditional"]["verdict"], "INFEASIBLE");
    assert_eq!(v["conditional"]["certificate"]["demand"], 52);
    assert_eq!(v["conditional"]["certificate"]["capacity"], 1);
    let (code, text) = run(&["prove-moore", TARGET]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("verdict: FEASIBLE_UNRESOLVED"));
}

#[test]
fn infeasible_arrays_exit_2() {
    // k_2 = 8/3
    let (code, out) = run(&["params", "{4,2;1,3}"]);
    assert_eq!(code, EXIT_INFEASIBLE, "{out}");
    assert!(out.starts_with("INFEASIBLE"));
    let (code, v, _) = run_json(&["prove-moore", "{4,2;1,3}"]);
    assert_eq!(code, EXIT_INFEASIBLE);
    assert_eq!(v["verdict"], "INFEASIBLE");
}

#[test]
fn errors_exit_1() {
    for args in [
        vec!["params", "{4,2"],
        vec!["params", "{3,2;1}"],
        vec!["triples", TARGET, "--config", "2,2"],
        vec!["triples", TARGET, "--config", "4,1,1"],
        vec!["oracle-check", "--graph", "clebsch"],
        vec!["oracle-check", "--graph", "path(4)"],
        vec!["frobnicate"],
        vec!["triples", TARGET],
    ] {
        let (code, out) = run(&args);
        assert_eq!(code, EXIT_ERROR, "{args:?}: {out}");
        assert!(!out.is_empty());
    }
    let (code, v, _) = run_json(&["spectrum", "{2,1;1,1}"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(v["error"].as_str().unwrap().contains("not rational"));
}

#[test]
fn help_documents_grammar_and_exit_codes() {
    let (code, out) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("{b0,...,b_(d-1);c1,...,c_d}"));
    assert!(out.contains("2 proved infeasible"));
    let (_, out) = run(&["triples", "--help"]);
    assert!(out.contains("--config") && out.contains("--rules") && out.contains("--use-krein"));
}

#[test]
fn symmetrize_lists_relations() {
    let (code, v, _) = run_json(&["symmetrize", TARGET, "--config", "2,2,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["point_count"], 203);
    assert!(!v["relations"].as_array().unwrap().is_empty());
    let (_, v, _) = run_json(&["symmetrize", TARGET, "--config", "1,2,3"]);
    assert_eq!(v["relations"], serde_json::json!([]));
}

#[test]
fn rules_file_is_applied() {
    let dir = std::env::temp_dir().join(format!("drgtriples-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rules.toml");
    std::fs::File::create(&path).unwrap().write_all(BUILTIN_RULES_TOML.as_bytes()).unwrap();
    let p = path.to_str().unwrap();
    let (code, v, _) = run_json(&["triples", TARGET, "--config", "2,2,2", "--rules", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["point_count"], 122);
    assert_eq!(v["ranges"]["[222]"], serde_json::json!([2652, 2659]));
    let (_, v, _) = run_json(&["prove-moore", TARGET, "--rules", p]);
    assert_eq!(v["verdict"], "FEASIBLE_UNRESOLVED");

    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "format_version = 1\n[[rule]]\nid = 3\n").unwrap();
    let (code, _) = run(&["triples", TARGET, "--config", "2,2,2", "--rules", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_ERROR);
    let (code, _) = run(&["triples", TARGET, "--config", "2,2,2", "--rules", "/nonexistent/rules.toml"]);
    assert_eq!(code, EXIT_ERROR);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn use_krein_flag() {
    let (code, v, _) = run_json(&["triples", TARGET, "--config", "2,1,1", "--use-krein"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["point_count"], 3);
    let (code, v, _) = run_json(&["triples", "{2,1;1,1}", "--config", "1,1,2", "--use-krein"]);
    assert_eq!(code, EXIT_OK);
    assert!(v["notes"][0].as_str().unwrap().contains("Krein equations unavailable"));
}

#[test]
fn oracle_check_command() {
    let (code, v, _) = run_json(&["oracle-check", "--graph", "odd4", "--config", "1,1,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["violation_count"], 0);
    assert_eq!(v["reports"][0]["exhaustive"], true);
    let seeded = ["oracle-check", "--graph", "rook(9)", "--config", "2,2,2", "--sample-seed", "11"];
    let (code, a, _) = run_json(&seeded);
    let (_, b, _) = run_json(&seeded);
    assert_eq!(code, EXIT_OK);
    assert_eq!(a, b);
    assert_eq!(a["reports"][0]["seed"], 11);
    assert_eq!(a["array"], "{16,8;1,2}");
}
