use std::process::Command;

use mixshuffle_core::ring::{RingElem, RingSpec};
use mixshuffle_core::semigroup::OrderedSemigroup;
use mixshuffle_core::shuffle::{ShuffleAlgebra, TensorPoly};
use mixshuffle_core::word::Word;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mixshuffle")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = run(&all);
    assert!(code == 0 || code == 1, "{err}");
    serde_json::from_str(&out).expect("valid JSON")
}

#[test]
fn mul_x_x() {
    let (code, out, _) = run(&["mul", "--ring", "Q", "--lambda", "1", "--sg", "free:x", "x", "x"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2·x⊗x + x²");
    let (_, out, _) = run(&["mul", "--ring", "Q", "--lambda", "0", "--sg", "free:x", "x", "x"]);
    assert_eq!(out.trim(), "2·x⊗x");
    let (_, out, _) = run(&["mul", "--lambda", "1", "--ascii", "x", "x"]);
    assert_eq!(out.trim(), "2*x(x)x + x^2");
}

#[test]
fn malformed_input_is_a_config_error() {
    assert_eq!(run(&["mul", "--sg", "free:x", "x", "x,,"]).0, 2);
    assert_eq!(run(&["mul", "--sg", "free:x", "x", "y"]).0, 2);
    assert_eq!(run(&["mul", "--lambda", "0.5", "x", "x"]).0, 2);
    assert_eq!(run(&["mul", "--sg", "bogus", "x", "x"]).0, 2);
}

#[test]
fn product_json_reparses() {
    let v = json(&["mul", "--ring", "Z", "--lambda", "-1", "--sg", "free:x,y", "x,y", "y²,x"]);
    let sg = OrderedSemigroup::free_abelian(&["x", "y"]).unwrap();
    let parsed = TensorPoly::from_json(&sg, &v).unwrap();
    let z = RingSpec::Integers;
    let alg = ShuffleAlgebra::new(z, RingElem::from_int(z, -1), sg.clone()).unwrap();
    let u = TensorPoly::word(&alg, Word::parse(&sg, "x,y").unwrap());
    let w = TensorPoly::word(&alg, Word::parse(&sg, "y^2,x").unwrap());
    assert_eq!(parsed, u.try_mul(&w).unwrap());
}

#[test]
fn lyndon_counts() {
    let v = json(&["lyndon", "--sg", "free:x", "--deg", "4"]);
    assert_eq!(v["counts"], serde_json::json!([1, 1, 2, 3]));
}

#[test]
fn cfl_of_baab() {
    let (code, out, _) = run(&["cfl", "b,a,a,b", "--sg", "free:a,b"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "b | a⊗a⊗b");
}

#[test]
fn tel_counts() {
    let v = json(&["gens", "tel", "--sg", "free:x", "--p", "2", "--deg", "4"]);
    assert_eq!(v["counts"], serde_json::json!([1, 1, 2, 3]));
    assert_eq!(run(&["gens", "tel", "--sg", "free:x"]).0, 2);
}

#[test]
fn rota_baxter_commands() {
    let (code, out, _) = run(&["rb", "P", "x"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1⊗x");
    let (code, out, _) = run(&["rb", "check-identity", "x", "1,x", "--lambda", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("identity holds"));
}

#[test]
fn verify_passes() {
    let v = json(&["verify", "intfr", "--sg", "free:x", "--lambda", "1", "--deg", "6"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["theorem"], "intfr");
    let ranks: Vec<u64> = v["cells"].as_array().unwrap().iter().skip(1).map(|c| c["rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks.len(), 6);
    let cokernels: Vec<&Value> =
        v["checks"].as_array().unwrap().iter().filter(|c| c["name"].as_str().unwrap().starts_with("cokernel")).collect();
    assert!(!cokernels.is_empty() && cokernels.iter().all(|c| c["passed"] == true));
    assert_eq!(run(&["verify", "psh", "--p", "2", "--sg", "set:x", "--deg", "5"]).0, 0);
    assert_eq!(run(&["verify", "isomor", "--p", "3", "--precision", "6", "--lambda", "2", "--deg", "5"]).0, 0);
}

#[test]
fn verify_reports_falsification() {
    let (code, out, _) = run(&["verify", "intfr", "--gens", "lyndon", "--lambda", "1", "--deg", "6"]);
    assert_eq!(code, 1);
    assert!(out.contains("unreachable word"), "{out}");
}

#[test]
fn verify_config_errors() {
    assert_eq!(run(&["verify", "nosuch"]).0, 2);
    assert_eq!(run(&["verify", "intfr", "--ring", "Q"]).0, 2);
    assert_eq!(run(&["verify", "psh"]).0, 2);
    // 3 is not a unit in Z/3^6
    assert_eq!(run(&["verify", "isomor", "--p", "3", "--precision", "6", "--lambda", "3"]).0, 2);
}

#[test]
fn seeded_reports_are_reproducible() {
    let a = run(&["verify", "props", "--seed", "11", "--format", "json"]);
    let b = run(&["verify", "props", "--seed", "11", "--format", "json"]);
    assert!(a.0 == 0 || a.0 == 1, "{}", a.2);
    assert_eq!(a.1, b.1);
}
