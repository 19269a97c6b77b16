//! End-to-end tests of the `pal` binary: exit codes for every path, JSON
//! shapes, and feeding a found countermodel back into evaluation.

use serde_json::Value;
use std::process::{Command, Output};

fn pal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_model(dir: &std::path::Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

const TWO_WORLDS: &str = r#"{
  "worlds": ["w1", "w2"],
  "agents": {"a": [["w1","w1"],["w1","w2"],["w2","w1"],["w2","w2"]]},
  "valuation": {"p": ["w1"]}
}"#;

#[test]
fn parse_prints_canonical_form() {
    let out = pal(&["parse", "p & (q | r)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "p & (q | r)");

    let out = pal(&["--json", "parse", "p->q"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["formula"], "p -> q");
}

#[test]
fn parse_error_exits_2_with_offset() {
    let out = pal(&["parse", "p &"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("byte 3"), "stderr was: {err}");
}

#[test]
fn eval_false_exits_1() {
    let dir = std::env::temp_dir();
    let model = write_model(&dir, "pal_cli_eval.json", TWO_WORLDS);
    let out = pal(&["eval", "--model", &model, "--world", "w1", "K a p"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "false");

    let out = pal(&["eval", "--model", &model, "--world", "w1", "[!p] K a p"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "true");
}

#[test]
fn eval_with_domain_uses_the_domain_semantics() {
    let dir = std::env::temp_dir();
    let model = write_model(&dir, "pal_cli_domain.json", TWO_WORLDS);
    // p holds at w1 but w1 is outside the domain.
    let out = pal(&[
        "eval",
        "--model",
        &model,
        "--world",
        "w1",
        "--domain",
        "w2",
        "--semantics",
        "sse",
        "p",
    ]);
    assert_eq!(code(&out), 1);
    // Domains only make sense for the domain semantics.
    let out = pal(&[
        "eval", "--model", &model, "--world", "w1", "--domain", "w2", "p",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn announce_prints_updated_model() {
    let dir = std::env::temp_dir();
    let model = write_model(&dir, "pal_cli_announce.json", TWO_WORLDS);
    let out = pal(&["announce", "--model", &model, "p"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["worlds"], serde_json::json!(["w1"]));

    // Announcing a model-wide falsehood is an input error.
    let out = pal(&["announce", "--model", &model, "~top"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn valid_verdicts_and_exit_codes() {
    let out = pal(&["valid", "--max-worlds", "2", "--frame", "s5", "K a p -> p"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("valid up to bound"));

    let out = pal(&["--json", "valid", "--frame", "k", "K a p -> p"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "countermodel");
    assert_eq!(v["world"], "w1");
}

#[test]
fn countermodel_feeds_back_into_eval() {
    let out = pal(&["valid", "--frame", "k", "K a p -> p"]);
    assert_eq!(code(&out), 1);
    // Human mode prints the countermodel as a bare model file on stdout.
    let dir = std::env::temp_dir();
    let path = write_model(&dir, "pal_cli_counter.json", &stdout(&out));
    let again = pal(&["eval", "--model", &path, "--world", "w1", "K a p -> p"]);
    assert_eq!(code(&again), 1, "countermodel re-falsifies the formula");
    assert_eq!(stdout(&again).trim(), "false");
}

#[test]
fn rule_checking() {
    let out = pal(&[
        "rule",
        "--premise",
        "p -> q",
        "--premise",
        "p",
        "--conclusion",
        "q",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn suites_run_and_match_expectations() {
    let out = pal(&[
        "suite",
        "axioms",
        "--atoms",
        "p,q,r",
        "--semantics",
        "direct",
    ]);
    assert_eq!(
        code(&out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("axiom_t"));

    // --frame restricts the reported rows.
    let out = pal(&[
        "--json",
        "suite",
        "axioms",
        "--atoms",
        "p,q,r",
        "--frame",
        "s5",
        "--semantics",
        "direct",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["frame"] == "s5"));

    let out = pal(&["--json", "suite", "substitution", "--agents", "a"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert!(rows.iter().any(|r| r["name"] == "principle_1_schematic"
        && r["verdict"] == "countermodel"
        && r["countermodel"]["model"]["worlds"].is_array()));

    // The substitution suite rejects class-K scopes.
    let out = pal(&["suite", "substitution", "--frame", "k"]);
    assert_eq!(code(&out), 2);

    let out = pal(&["suite", "nosuch"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn wisemen_prints_cascade_and_theorem() {
    let out = pal(&["wisemen"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("7 -> 6 -> 4"), "stdout was: {text}");
    assert!(text.contains("theorem whitespot_c: VALID"));

    let out = pal(&["--json", "wisemen", "--footnote-axioms"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cascade"], serde_json::json!([7, 6, 4]));
    assert_eq!(v["premises_ok"], true);
    assert_eq!(v["goal_ok"], true);
}

#[test]
fn unknown_inputs_exit_2() {
    let out = pal(&["eval", "--model", "/nonexistent.json", "--world", "w1", "p"]);
    assert_eq!(code(&out), 2);

    let dir = std::env::temp_dir();
    let model = write_model(&dir, "pal_cli_unknown.json", TWO_WORLDS);
    let out = pal(&["eval", "--model", &model, "--world", "w9", "p"]);
    assert_eq!(code(&out), 2);
    let out = pal(&["valid", "--agents", "a", "K b p -> p"]);
    assert_eq!(code(&out), 2);
}
