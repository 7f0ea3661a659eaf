use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use modcat_core::supermod::SuperModularData;
use modcat_core::ModularData;
use serde_json::Value;

fn modcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("modcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(path: &Path, args: &[&str]) {
    let mut all = args.to_vec();
    all.extend(["--out", path.to_str().unwrap()]);
    let out = modcat(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn round_trip_is_byte_identical() {
    for args in [
        vec!["construct", "sl2-adjoint", "--k", "3", "--l", "1"],
        vec!["construct", "sl2", "--k", "4", "--l", "-1"],
        vec!["construct", "pointed", "--orders", "5", "--modulus", "5", "--coeffs", "1"],
        vec!["construct", "svec", "--eps", "-1"],
    ] {
        let out = modcat(&args);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed: ModularData = serde_json::from_str(&text).unwrap();
        let parsed = parsed.normalized().unwrap();
        let again = serde_json::to_string_pretty(&serde_json::to_value(&parsed).unwrap()).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }
    let out = modcat(&["construct", "super-sl2", "--k", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: SuperModularData = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&serde_json::to_value(&parsed).unwrap()).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn galois_of_fibonacci() {
    let fib = scratch("fib.json");
    write(&fib, &["construct", "sl2-adjoint", "--k", "3", "--l", "1"]);
    let v = json(&modcat(&["galois", "--in", fib.to_str().unwrap()]));
    assert_eq!(v["group_order"], 2);
    assert_eq!(v["transitive"], true);
    let v = json(&modcat(&["validate", "--in", fib.to_str().unwrap()]));
    assert_eq!(v["ord_t"], 5);
    let v = json(&modcat(&["factor", "--in", fib.to_str().unwrap()]));
    assert_eq!(v["prime"], true);
    let v = json(&modcat(&["rep", "--in", fib.to_str().unwrap()]));
    assert_eq!(v["lifts"].as_array().unwrap().len(), 12);
}

#[test]
fn products_and_theorems() {
    let fib = scratch("fib2.json");
    let a5 = scratch("a5.json");
    let prod = scratch("prod.json");
    write(&fib, &["construct", "sl2-adjoint", "--k", "3"]);
    write(&a5, &["construct", "sl2-adjoint", "--k", "5"]);
    write(&prod, &["construct", "product", "--a", fib.to_str().unwrap(), "--b", a5.to_str().unwrap()]);
    let v = json(&modcat(&["galois", "--in", prod.to_str().unwrap()]));
    assert_eq!(v["transitive"], true);
    let v = json(&modcat(&["factor", "--in", prod.to_str().unwrap()]));
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
    let v = json(&modcat(&["theorems", "--in", prod.to_str().unwrap()]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn classify_catalog() {
    let v = json(&modcat(&["classify", "--max-ordt", "7"]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 11);
    let out = modcat(&["classify", "--max-ordt", "7", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,primes,ls,rank,anomaly\n"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn super_commands() {
    let s1 = scratch("s1.json");
    let sp = scratch("sp.json");
    write(&s1, &["construct", "super-sl2", "--k", "1"]);
    let v = json(&modcat(&["super", "--in", s1.to_str().unwrap()]));
    assert_eq!(v["transitive"], true);
    assert_eq!(v["s_simple"], true);
    assert_eq!(v["split"], "non_split");
    assert_eq!(v["pi_labels"], serde_json::json!(["V0", "V2"]));
    write(&sp, &["construct", "sproduct", "--a", s1.to_str().unwrap(), "--b", s1.to_str().unwrap()]);
    let v = json(&modcat(&["super", "--in", sp.to_str().unwrap()]));
    assert_eq!(v["transitive"], false);
    assert_eq!(v["reduced_S"].as_array().unwrap().len(), 4);
}

#[test]
fn approx_adds_floats() {
    let v = json(&modcat(&["construct", "sl2-adjoint", "--k", "3", "--approx"]));
    let golden: f64 = v["approx"]["S"][0][1][0].as_str().unwrap().parse().unwrap();
    assert!((golden - 1.618033988749).abs() < 1e-9);
    let parsed: ModularData = serde_json::from_value(v).unwrap();
    assert_eq!(parsed.rank, 2);
}

#[test]
fn exit_codes() {
    assert_eq!(modcat(&["construct", "sl2", "--k", "3", "--l", "2"]).status.code(), Some(2));
    assert_eq!(modcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(modcat(&["galois", "--in", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(modcat(&["galois", "--format", "csv", "--in", "/nonexistent.json"]).status.code(), Some(2));
    let sv = scratch("svec.json");
    write(&sv, &["construct", "svec"]);
    assert_eq!(modcat(&["validate", "--in", sv.to_str().unwrap()]).status.code(), Some(1));
    let fib = scratch("fib3.json");
    write(&fib, &["construct", "sl2-adjoint", "--k", "3"]);
    assert_eq!(
        modcat(&["galois", "--format", "csv", "--in", fib.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn deterministic_output() {
    let a = modcat(&["classify", "--max-ordt", "13"]);
    let b = modcat(&["classify", "--max-ordt", "13"]);
    assert_eq!(a.stdout, b.stdout);
}
