use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gexp(args: &[&str]) -> (Output, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_gexp")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const M2_C2: &str = r#"{
  "schema_version": 1,
  "field": {"cyclotomic_order": 2},
  "group": {"kind": "cyclic", "k": 2},
  "components": [{"subgroup": [0], "tuple": [0, 1]}]
}"#;

#[test]
fn verify_bz_on_the_tight_instance() {
    let p = write("m2_c2.json", M2_C2);
    let (out, v) = gexp(&["verify-bz", p.to_str().unwrap()]);
    assert!(out.status.success());
    let r = &v["results"];
    assert_eq!((r["L"].as_u64(), r["R"].as_u64()), (Some(4), Some(4)));
    assert_eq!(r["equality"], Value::Bool(true));
    assert_eq!(v["field_order"].as_u64(), Some(2));
    assert_eq!(v["version"].as_str(), Some(env!("CARGO_PKG_VERSION")));
}

#[test]
fn codim_two_of_m2() {
    let p = write("m2_codim.json", M2_C2);
    let (out, v) = gexp(&["codim", "--n", "2", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(v["results"]["c_n"].as_u64(), Some(2));
    assert_eq!(v["results"]["mode"].as_str(), Some("full"));
}

#[test]
fn bad_cocycle_fails_validation_with_a_path() {
    let p = write(
        "bad.json",
        r#"{
  "schema_version": 1,
  "group": {"kind": "cyclic", "k": 3},
  "components": [{"subgroup": [0, 1, 2], "cocycle": [[1, 1, 1], [1, 2, 1], [1, 1, 1]], "tuple": [0]}]
}"#,
    );
    let (out, v) = gexp(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["error"]["kind"].as_str(), Some("CocycleViolation"));
    assert_eq!(v["error"]["path"].as_str(), Some("components[0].cocycle"));
}

#[test]
fn schema_errors_exit_with_two() {
    let p = write("schema.json", &M2_C2.replace("\"tuple\"", "\"tupel\""));
    let (out, v) = gexp(&["exp-conj", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(v["error"]["kind"].as_str(), Some("SchemaError"));
}

#[test]
fn generated_instances_feed_other_commands() {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("fc4.json");
    let (out, _) = gexp(&["gen", "--kind", "group-algebra", "--group", "cyclic:4", "--out", p.to_str().unwrap()]);
    assert!(out.status.success());
    let (out, v) = gexp(&["quotient", "--subgroup", "0,2", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(v["results"]["identity_component_matches"], Value::Bool(true));
    let (_, v) = gexp(&["exp-conj", p.to_str().unwrap()]);
    assert_eq!(v["results"]["value"].as_u64(), Some(4));
    let (out, v) = gexp(&["--text", "validate", p.to_str().unwrap()]);
    assert!(out.status.success() && v.is_null());
    assert!(String::from_utf8(out.stdout).unwrap().contains("valid: true"));
}

#[test]
fn reports_are_deterministic() {
    let p = write("det.json", M2_C2);
    let strip = |mut v: Value| {
        v["timings"] = Value::Null;
        v
    };
    let (_, a) = gexp(&["census", p.to_str().unwrap()]);
    let (_, b) = gexp(&["census", p.to_str().unwrap()]);
    assert_eq!(strip(a), strip(b));
}

#[test]
fn string_monomial_of_m2() {
    let p = write("sm.json", M2_C2);
    let (out, v) = gexp(&["string-monomial", "--component", "0", "--k", "0", p.to_str().unwrap()]);
    assert!(out.status.success());
    let z = v["results"]["z"]["factors"].as_array().unwrap();
    assert_eq!(z.len(), 4);
}
