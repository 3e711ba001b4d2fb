use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn write_input(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn coxdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxdef"))
        .args(args)
        .env_remove("COXDEF_BUDGET")
        .output()
        .unwrap()
}

fn result(args: &[&str]) -> Value {
    let out = coxdef(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["tool"], "coxdef");
    assert_eq!(doc["version"], env!("CARGO_PKG_VERSION"));
    doc["result"].clone()
}

fn matrix(name: &str, rank: usize, orders: &str) -> String {
    write_input(name, &format!(r#"{{"rank": {rank}, "orders": {orders}}}"#))
        .to_string_lossy()
        .into_owned()
}

#[test]
fn flat_on_h3() {
    let m = matrix("h3.json", 3, "[[0,1,2],[0,2,3],[1,2,5]]");
    let r = result(&["flat", "--matrix", &m]);
    assert_eq!(r["flat"], false);
    assert_eq!(r["offending_triples"], serde_json::json!([[0, 1, 2]]));
    assert_eq!(r["obstructions"][0]["d"], 60);
}

#[test]
fn growth_of_dihedral_four() {
    let m = matrix("i4.json", 2, "[[0,1,4]]");
    let r = result(&["growth", "--matrix", &m, "--length", "4"]);
    assert_eq!(r["growth"], serde_json::json!([1, 2, 2, 2, 1]));
}

#[test]
fn square_is_identity() {
    let m = matrix("i3.json", 2, "[[0,1,3]]");
    let r = result(&["nf", "--matrix", &m, "--word", "0,0"]);
    let terms = r["normal_form"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["word"], serde_json::json!([]));
    assert_eq!(terms[0]["coeff"]["terms"], serde_json::json!([{"coeff": "1/1", "exps": []}]));
}

#[test]
fn group_point_product_is_a_group_element() {
    let m = matrix("a3.json", 3, r#"[[0,1,2],[0,2,3],[1,2,3]]"#);
    let r = result(&["mult", "--matrix", &m, "--left", "0,2", "--right", "2,1", "--point", "group"]);
    let terms = r["product"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["word"], serde_json::json!([0, 1]));
}

#[test]
fn witness_and_quiver_on_a3() {
    let m = matrix("a3w.json", 3, r#"[[0,1,2],[0,2,3],[1,2,3]]"#);
    let w = result(&["witness", "--matrix", &m, "--length", "8"]);
    assert_eq!(w["found"], true);
    assert_eq!(w["bound"], 6);
    let q = result(&["quiver", "--matrix", &m]);
    assert_eq!(q["violations"], serde_json::json!([]));
    assert_eq!(q["deformation"]["outcome"]["feasible"], false);
    assert_eq!(q["deformation"]["outcome"]["certificate"]["checks"], true);
    assert_eq!(q["deformation"]["determinant"][0]["in_span"], true);
}

#[test]
fn complex_and_fuchsian() {
    let m = matrix("b3.json", 3, r#"[[0,1,2],[0,2,3],[1,2,4]]"#);
    let c = result(&["complex", "--matrix", &m]);
    assert_eq!((c["vertices"].as_u64(), c["edges"].as_u64(), c["faces"].as_u64()), (Some(48), Some(72), Some(26)));
    assert_eq!(c["euler_characteristic"], 2);
    let s = write_input("sig.json", r#"{"orders": [2, 3, "inf"]}"#);
    let f = result(&["fuchsian", "--signature", s.to_str().unwrap(), "--length", "2"]);
    assert_eq!(f["flat"], true);
    assert_eq!(f["matrix_flat"], true);
}

#[test]
fn exit_codes() {
    let bad = write_input("bad.json", "{not json");
    assert_eq!(coxdef(&["flat", "--matrix", bad.to_str().unwrap()]).status.code(), Some(1));
    let low = matrix("low.json", 2, "[[0,1,1]]");
    assert_eq!(coxdef(&["flat", "--matrix", &low]).status.code(), Some(1));
    let m = matrix("e.json", 3, r#"[[0,1,3],[0,2,3],[1,2,3]]"#);
    assert_eq!(coxdef(&["growth", "--matrix", &m, "--length", "20", "--budget", "10"]).status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_coxdef"))
        .args(["growth", "--matrix", &m, "--length", "20"])
        .env("COXDEF_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    assert_eq!(coxdef(&["nf", "--matrix", &m, "--word", "0,x"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let m = matrix("det.json", 3, r#"[[0,1,2],[0,2,2],[1,2,2]]"#);
    let a = coxdef(&["witness", "--matrix", &m, "--seed", "7"]);
    let b = coxdef(&["witness", "--matrix", &m, "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["budget"]["elements"], 1_000_000);
}
