use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const EXAMPLE: &str = r#"{"generators":[7,8,9,10],"m":[3,1,1,1],"ell":[1,1,1,2]}"#;
const TAIL: &str = r#""generators":[6,7,8,17],"order":[6,7,8,17],"m":[3,1,1,1],"ell":[1,1,2,1]"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semitrace")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (v, out.status.code().unwrap_or(-1))
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap_or(-1)
}

#[test]
fn sgp_invariants() {
    let (v, c) = json(&["sgp", "7", "8", "9", "10"]);
    assert_eq!(c, 0);
    assert_eq!(v["pseudo_frobenius"], serde_json::json!([11, 12, 13]));
    assert_eq!(v["apery"], serde_json::json!([0, 8, 9, 10, 18, 19, 20]));

    let (v, _) = json(&["sgp", "2", "3"]);
    assert_eq!(v["symmetric"], true);

    let (v, _) = json(&["sgp", r#"{"generators":[3,4,5]}"#]);
    assert_eq!(v["almost_symmetric"], true);
    assert_eq!(v["symmetric"], false);
    assert_eq!(v["type"], 2);
}

#[test]
fn sgp_rejects_bad_input() {
    assert_eq!(code(&["sgp", "4", "6"]), 2);
    assert_eq!(code(&["sgp", "0", "3"]), 2);
    assert_eq!(code(&["sgp", "{not json"]), 2);
}

#[test]
fn classify_example() {
    let (v, c) = json(&["classify", EXAMPLE]);
    assert_eq!(c, 0);
    let ng = &v["nearly_gorenstein"];
    assert_eq!(ng["agree"], true);
    assert_eq!(ng["case"], "main(b)");
    assert!(ng["verdicts"].as_array().unwrap().iter().all(|x| x["is_ng"] == true));
    assert_eq!(v["almost_gorenstein"]["theorem"], false);
}

#[test]
fn classify_three_four_five() {
    let (v, c) = json(&["classify", r#"{"generators":[3,4,5],"order":[3,5,4],"m":[1,1,1],"ell":[2,1,1]}"#]);
    assert_eq!(c, 0);
    assert_eq!(v["nearly_gorenstein"]["agree"], true);
    assert_eq!(v["nearly_gorenstein"]["case"], "main(a)");
    assert_eq!(v["almost_gorenstein"]["theorem"], true);
}

#[test]
fn classify_inhomogeneous_exits_3() {
    assert_eq!(code(&["classify", r#"{"generators":[7,8,9,10],"m":[3,1,1,1],"ell":[1,1,1,1]}"#]), 3);
}

#[test]
fn syzygy_method_is_gated() {
    assert_eq!(code(&["classify", "--method", "syzygy", EXAMPLE]), 2);
    let (v, c) = json(&["trace", "--method", "all", "--stretch-syzygy", EXAMPLE]);
    assert_eq!(c, 0);
    assert_eq!(v["agree"], true);
    assert_eq!(v["traces"].as_array().unwrap().len(), 3);
}

#[test]
fn input_from_file_and_stdin() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(EXAMPLE.as_bytes()).unwrap();
    let (v, c) = json(&["trace", f.path().to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["traces"][0]["generators"], serde_json::json!([7, 8, 9, 10]));

    let mut child = Command::new(env!("CARGO_BIN_EXE_semitrace"))
        .args(["--format", "json", "classify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(EXAMPLE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nearly_gorenstein"]["case"], "main(b)");

    assert_eq!(code(&["trace", "/nonexistent/input.json"]), 2);
}

#[test]
fn search_outcomes() {
    let (v, c) = json(&["search", "--m", "3,1,1,1", "--ell", "1,1,1,2"]);
    assert_eq!(c, 0);
    assert_eq!(v[0]["instance"]["order"], serde_json::json!([7, 8, 9, 10]));

    let (v, c) = json(&["search", "--m", "1,1,1", "--ell", "1,1,1"]);
    assert_eq!(c, 0);
    assert_eq!(v, serde_json::json!([]));

    assert_eq!(code(&["search", "--n", "3", "--bound", "501"]), 2);
    assert_eq!(code(&["search", "--m", "1,1", "--ell", "1,1,1"]), 2);
}

#[test]
fn higher_tail_case_verified() {
    let (v, c) = json(&["higher", &format!(r#"{{{TAIL},"I":[1],"J":[3]}}"#)]);
    assert_eq!(c, 0);
    assert_eq!(v["is_ng"], true);
    assert_eq!(v["clause"], "newnonAGcase(2b)");
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["witness"]["report"]["variables_covered"], 6);
}

#[test]
fn higher_three_deformations_never_ng() {
    let (v, c) = json(&["higher", &format!(r#"{{{TAIL},"I":[1,2],"J":[3]}}"#)]);
    assert_eq!(c, 0);
    assert_eq!(v["is_ng"], false);
    assert_eq!(v["clause"], "newnonAGcase(3)");
    assert!(v["witness"].is_null());
}

#[test]
fn higher_unsupported_exits_4() {
    let src = r#"{"generators":[7,9,10,12],"order":[9,7,12,10],"m":[2,1,1,1],"ell":[1,2,1,2],"J":[1]}"#;
    assert_eq!(code(&["higher", src]), 4);
    assert_eq!(code(&["higher", "--dihedral", src]), 4);
}

#[test]
fn higher_n3_agrees_with_trace() {
    let (v, c) = json(&["higher", r#"{"generators":[5,7,8],"order":[7,5,8],"m":[2,1,1],"ell":[1,2,2],"I":[1],"J":[2]}"#]);
    assert_eq!(c, 0);
    assert_eq!(v["clause"], "n3nonAGL");
    assert_eq!(v["trace_n3_is_ng"], v["is_ng"]);
}

#[test]
fn verify_subcommand() {
    let (v, c) = json(&["verify", &format!("{{{TAIL}}}")]);
    assert_eq!(c, 0);
    assert_eq!(v["defining_ideal_verified"], true);

    let (v, c) = json(&["verify", &format!(r#"{{{TAIL},"I":[1],"J":[3]}}"#)]);
    assert_eq!(c, 0);
    assert_eq!(v["witness_report"]["rows"], 2);

    assert_eq!(code(&["verify", &format!(r#"{{{TAIL},"I":[1,2],"J":[3]}}"#)]), 4);
}

#[test]
fn corpus_sample_is_deterministic() {
    let args = ["corpus", "--n", "3", "--sample", "25", "--seed", "7", "--higher"];
    let (a, ca) = json(&args);
    let (b, cb) = json(&args);
    assert_eq!((ca, cb), (0, 0));
    assert_eq!(a, b);
    assert_eq!(a["report"]["candidates"], 25);
    assert_eq!(code(&["corpus", "--n", "2"]), 2);
}
