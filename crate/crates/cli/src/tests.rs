use super::*;
use crate::suite::{check_ids, run_suite, SUITES};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("syzkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn call_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} / {err}"));
    (code, v)
}

#[test]
fn transvect_inline_and_json_agree() {
    let (c1, v1) = call_json(&["transvect", "--m", "3", "--n", "2", "--r", "1", "--a", "1,-2,0,5", "--b", "3,1,4"]);
    assert_eq!(c1, 0);
    let a = serde_json::to_string(&json!({"pair": "x", "order": 3, "convention": "monomial", "coeffs": ["1", "-2", "0", "5"]})).unwrap();
    let (c2, v2) = call_json(&["transvect", "--m", "3", "--n", "2", "--r", "1", "--A", &a, "--B", "3,1,4"]);
    assert_eq!(c2, 0);
    assert_eq!(v1, v2);
    assert_eq!(v1["order"], 3);
}

#[test]
fn transvect_of_quadratics_is_discriminant_like() {
    // (A, A)_2 for A = a0 x1^2 + a1 x1 x2 + a2 x2^2 is 2 a0 a2 - a1^2 / 2
    let (code, v) = call_json(&["transvect", "--m", "2", "--n", "2", "--r", "2", "--a", "1,3,5", "--b", "1,3,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["coeffs"], json!(["11/2"]));
}

#[test]
fn transvect_binomial_convention_round_trips() {
    let (code, v) = call_json(&[
        "transvect", "--m", "2", "--n", "2", "--r", "0", "--a", "1,0,0", "--b", "0,0,1", "--convention", "binomial",
    ]);
    assert_eq!(code, 0);
    // x1^2 * x2^2 is 6 in binomial coordinates of order 4
    assert_eq!(v["coeffs"], json!(["0", "0", "1/6", "0", "0"]));
    assert_eq!(v["convention"], "binomial");
}

#[test]
fn transvect_rejects_bad_input() {
    assert_eq!(call(&["transvect", "--m", "3", "--n", "2", "--r", "1", "--a", "1,2", "--b", "1,1,1"]).0, 2);
    assert_eq!(call(&["transvect", "--m", "2", "--n", "2", "--r", "3", "--a", "1,2,3", "--b", "1,1,1"]).0, 2);
    assert_eq!(call(&["transvect", "--m", "2"]).0, 2);
}

#[test]
fn syzygy_prints_and_verifies_tables() {
    let (code, v) = call_json(&["syzygy", "--m", "5", "--n", "3", "--r", "2"]);
    assert_eq!(code, 0);
    assert!(v.is_object());
    let (code, out, _) = call(&["syzygy", "verify", "--m", "6", "--n", "4", "--r", "4", "--a", "0", "--b", "1", "--trials", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("verified"));
    let (code, _) = call_json(&["syzygy", "verify", "--m", "5", "--n", "5", "--r", "3", "--closed", "--trials", "1"]);
    assert_eq!(code, 0);
}

#[test]
fn syzygy_usage_errors() {
    assert_eq!(call(&["syzygy", "--m", "5", "--n", "3"]).0, 2);
    assert_eq!(call(&["syzygy", "--m", "5", "--n", "3", "--r", "1"]).0, 2);
    assert_eq!(call(&["syzygy", "--m", "5", "--n", "3", "--r", "2", "--a", "0", "--b", "0", "--closed"]).0, 2);
    assert_eq!(call(&["syzygy", "--m", "5", "--n", "3", "--r", "2", "--a", "1"]).0, 2);
}

#[test]
fn reconstruct_matches_direct_transvectants() {
    let (m, n) = (3u32, 2u32);
    let a = BinaryForm::from_coeffs(VarPair::X, &[1, 2, -1, 3].map(syzkit::rational::qi), Convention::Monomial);
    let b = BinaryForm::from_coeffs(VarPair::X, &[2, 0, 5].map(syzkit::rational::qi), Convention::Monomial);
    let u = |r| transvect(&a, &b, r).unwrap().to_json(Convention::Monomial).to_string();
    let (code, v) = call_json(&["reconstruct", "--m", "3", "--n", "2", "--u0", &u(0), "--u1", &u(1)]);
    assert_eq!(code, 0);
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), (m.min(n) - 1) as usize);
    for item in list {
        let r = item["r"].as_u64().unwrap() as u32;
        assert_eq!(BinaryForm::from_json(&item["form"]).unwrap(), transvect(&a, &b, r).unwrap());
    }
}

#[test]
fn ninej_methods() {
    let (code, v) = call_json(&["ninej", "--array", "1 1 1; 1 1 1; 1 1 1"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"], true);
    assert_eq!(v["value"], "0");
    let (code, out, _) = call(&["ninej", "--array", "1/2 1/2 1; 1/2 1/2 0; 1 1 1", "--method", "triplesum"]);
    assert_eq!(code, 0);
    assert!(!out.trim().is_empty());
    assert_eq!(call(&["ninej", "--array", "1 1 5; 1 1 1; 1 1 1"]).0, 2);
    assert_eq!(call(&["ninej", "--array", "1 1; 1 1 1; 1 1 1"]).0, 2);
}

#[test]
fn threej_and_sixj_values() {
    let (_, out, _) = call(&["threej", "--j1", "1/2", "--j2", "1/2", "--j", "1", "--m1", "1/2", "--m2", "-1/2", "--m", "0"]);
    assert_eq!(out.trim(), "1/6 * sqrt(6)");
    let (_, out, _) = call(&["sixj", "--array", "1 1 1; 1 1 1"]);
    assert_eq!(out.trim(), "1/6");
    assert_eq!(call(&["threej", "--j1", "1", "--j2", "1", "--j", "3", "--m1", "0", "--m2", "0", "--m", "0"]).0, 2);
    assert_eq!(call(&["sixj", "--array", "1 1 1 1 1"]).0, 2);
}

#[test]
fn sym_commands() {
    let (code, v) = call_json(&["sym", "tableaux", "--shape", "3,2"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 5);
    assert_eq!(v[0], "[1 2 3 / 4 5]");
    let (_, out, _) = call(&["sym", "mult", "--l", "3,2", "--m", "3,2", "--n", "4,1"]);
    assert_eq!(out.trim(), "1");
    let (code, v) = call_json(&["sym", "projmat", "--l", "3,1", "--m", "2,2", "--n", "2,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(v[0].as_array().unwrap().len(), 3);
    assert_eq!(call(&["sym", "mult", "--l", "3,2", "--m", "2,2", "--n", "4,1"]).0, 2);
    assert_eq!(call(&["sym", "tableaux", "--shape", "2,3"]).0, 2);
    assert_eq!(call(&["sym", "verify", "--d", "9"]).0, 2);
}

#[test]
fn sym_verify_degree_six() {
    let (code, v) = call_json(&["sym", "verify", "--d", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let (code, _, err) = call(&["verify", "--suite", "everything"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"));
}

#[test]
fn all_suite_lists_each_check_once() {
    let all = check_ids("all");
    assert_eq!(all.len(), 13);
    let mut from_parts: Vec<&str> = SUITES.iter().filter(|s| **s != "all").flat_map(|s| check_ids(s)).collect();
    from_parts.sort();
    let mut sorted = all.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 13);
    assert_eq!(from_parts, sorted);
}

#[test]
fn suite_report_is_stable_modulo_timing() {
    let a = run_suite("core", 7, 2).unwrap().without_timing().to_json();
    let b = run_suite("core", 7, 2).unwrap().without_timing().to_json();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn verify_writes_json_report_and_sets_exit_code() {
    let path = std::env::temp_dir().join(format!("syzkit-report-{}.json", std::process::id()));
    let (code, out, _) = call(&["verify", "--suite", "core", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS ac13-properties"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["suite"], "core");
    assert_eq!(v["checks"][0]["id"], "ac13-properties");
    assert_eq!(v["checks"][0]["status"], "pass");
    // a failing suite exits with 1
    assert_eq!(call(&["verify", "--suite", "symgroup"]).0, if run_suite("symgroup", 42, 5).unwrap().passed() { 0 } else { 1 });
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("transvect"));
}
