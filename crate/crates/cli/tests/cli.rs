use std::io::Write;
use std::process::{Command, Output, Stdio};

use matfield::format::{parse_matrix_list, parse_rcf_classes, RcfClassDoc};
use serde_json::Value;

const X2_F27: &str = r#"{"p":3,"n":3,"terms":[{"i":0,"j":0,"u":[1,0,0]}]}"#;
const TWISTED_F27: &str = r#"{"p":3,"n":3,"modulus":[1,2,0,1],"terms":[{"i":0,"j":1,"u":[1,0,0]}]}"#;
const TWISTED_F81: &str = r#"{"p":3,"n":4,"terms":[{"i":0,"j":1,"u":[1,0,0,0]}]}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_matfield"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn ff_decide_identity() {
    let out = run(&["ff-decide", "-"], r#"{"p":3,"n":1,"matrices":[[[1]]]}"#);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["field"], true);
    assert_eq!(v["degree"], 1);
}

#[test]
fn ff_decide_not_field_and_oracle() {
    let input = r#"{"p":3,"n":2,"matrices":[[[1,0],[0,2]]]}"#;
    let out = run(&["ff-decide", "--oracle", "-"], input);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["field"], false);
    assert_eq!(v["witness"]["kind"], "reducible_min_poly");
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn ff_decide_reads_files() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(br#"{"p":3,"n":2,"matrices":[[[0,2],[1,0]]]}"#)
        .unwrap();
    let out = run(&["ff-decide", f.path().to_str().unwrap()], "");
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["degree"], 2);
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["ff-decide", "-"], r#"{"p":4,"n":1,"matrices":[[[1]]]}"#);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
    let out = run(&["ff-decide", "-"], r#"{"p":3,"n":1,"matrices":[[[0]]]}"#);
    assert_eq!(code(&out), 2);
    let out = run(&["ff-decide", "/nonexistent/input.json"], "");
    assert_eq!(code(&out), 2);
    let out = run(&["gen", "-"], r#"{"p":3,"n":1,"matrices":[[[1]]]}"#);
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_pair() {
    let input = r#"{"p":3,"n":2,"matrices":[[[1,0],[0,1]],[[0,2],[1,0]]]}"#;
    let out = run(&["gen", "-"], input);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["generator"]["rows"], serde_json::json!([[0, 2], [1, 0]]));
}

#[test]
fn planar_verdicts() {
    let out = run(&["planar", "--oracle", "-"], TWISTED_F27);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["oracle"]["agrees"], true);
    let out = run(&["planar", "-"], TWISTED_F81);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["planar"], false);
}

#[test]
fn spread_round_trips() {
    let out = run(&["spread", "-"], X2_F27);
    assert_eq!(code(&out), 0);
    let ms = parse_matrix_list(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(ms.len(), 3);
    assert!(ms[0].as_scalar() == Some(2));
}

#[test]
fn quot_twisted_f27() {
    let out = run(&["quot", "--oracle", "-"], TWISTED_F27);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 315);
    assert_eq!(v["lower"], 27);
    assert_eq!(v["upper"], 3 + 24 * 26 / 2);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn quot_elements_round_trip_and_guard() {
    let out = run(&["quot", "--elements", "-"], X2_F27);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let elems = parse_matrix_list(&v["elements"].to_string()).unwrap();
    assert_eq!(elems.len(), 27);
    let mut sorted = elems.clone();
    sorted.sort_by(|a, b| a.data().cmp(b.data()));
    assert_eq!(sorted, elems);

    let out = run(&["quot", "--elements", "--max-elements", "100", "-"], TWISTED_F27);
    assert_eq!(code(&out), 3);
}

#[test]
fn invariant_full_round_trips() {
    let out = run(&["invariant", "--full", "-"], TWISTED_F27);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["size"], 315);
    let docs: Vec<RcfClassDoc> = serde_json::from_value(v["classes"].clone()).unwrap();
    let ms = parse_rcf_classes(&docs).unwrap();
    assert_eq!(ms.total(), 315);
    assert_eq!(v["digest"], ms.digest());
}

#[test]
fn output_is_deterministic() {
    let a = run(&["invariant", "--full", "-"], TWISTED_F27);
    let b = run(&["--jobs", "1", "invariant", "--full", "-"], TWISTED_F27);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["quot", "--elements", "-"], TWISTED_F27);
    let b = run(&["quot", "--elements", "-"], TWISTED_F27);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn x2_equivalence() {
    let out = run(&["x2-equiv", "-"], X2_F27);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["degree"], 3);
    let out = run(&["x2-equiv", "-"], TWISTED_F27);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["equivalent"], false);
}

#[test]
fn twisted_check() {
    let out = run(
        &["twisted-check", "--alpha", "1,0,0", "--beta", "0,1,0", "--gamma", "2,1,0", "-"],
        TWISTED_F27,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["k"], 1);
    assert_eq!(v["structure"]["degree"], 3);
    assert_eq!(v["structure"]["checked"], 27);
    assert_eq!(v["identities"]["passed"], true);

    let out = run(&["twisted-check", "--alpha", "0,0,0", "--beta", "0,1,0", "-"], TWISTED_F27);
    assert_eq!(code(&out), 2);
}
