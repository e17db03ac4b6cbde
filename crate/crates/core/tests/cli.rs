use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn sdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sdom")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn analyze(file: &str, extra: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec!["analyze", path.to_str().unwrap(), "--output", "json"];
    args.extend_from_slice(extra);
    sdom(&args)
}

fn coxeter(file: &str, word: &str) -> Output {
    let path = data(file);
    sdom(&["coxeter", path.to_str().unwrap(), word, "--output", "json"])
}

#[test]
fn simple_dominant_report() {
    let out = analyze("lambda15.json", &[]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let compact = serde_json::to_string(&json(&out)).unwrap();
    assert!(compact.contains(r#""kind":"simple_dominant""#), "{text}");
    assert!(compact.contains(r#""k_positive":1"#));
    let j = json(&out);
    assert_eq!(j["lambda"], "15");
    assert_eq!(j["z"], serde_json::json!([["36/5", "21/5"], ["39/5", "54/5"]]));
}

#[test]
fn analysis_without_eigendata_finds_the_same_pair() {
    for file in ["lambda15_plain.json", "lambda15_float.json"] {
        let out = analyze(file, &[]);
        assert_eq!(code(&out), 0, "{file}");
        assert_eq!(json(&out)["kind"], "simple_dominant");
    }
}

#[test]
fn unit_row_sums_test_the_eigenvalue_one() {
    let out = analyze("stochastic_example.json", &[]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["z"], serde_json::json!([["3/5", "2/5"], ["2/5", "3/5"]]));

    let out = analyze("stochastic_nonexample.json", &[]);
    assert_eq!(code(&out), 2);
    let j = json(&out);
    assert_eq!(j["kind"], "not_simple_dominant_certified");
    assert_eq!(j["z"], serde_json::json!([["3", "-2"], ["-2", "3"]]));
    assert!(!j["certificate"].is_null());

    let out = analyze("stochastic_nonexample.json", &["--ignore-row-sums"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["lambda"], "5");
}

#[test]
fn orthogonal_eigenvectors_exit_two_with_certificate() {
    let out = analyze("defective.json", &[]);
    assert_eq!(code(&out), 2);
    let j = json(&out);
    assert_eq!(j["kind"], "multiplicity_at_least_two");
    assert!(!j["certificate"].is_null());
}

#[test]
fn scan_limit_is_inconclusive() {
    let out = analyze("circulant.json", &[]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["k_positive"], 4);

    let out = analyze("circulant.json", &["--k-max", "3"]);
    assert_eq!(code(&out), 3);
    let j = json(&out);
    assert_eq!(j["kind"], "inconclusive");
    assert_eq!(j["k_max_reached"], true);
}

#[test]
fn input_errors_exit_one() {
    for file in ["bad_entry.json", "bad_eigendata.json", "missing.json"] {
        let out = analyze(file, &[]);
        assert_eq!(code(&out), 1, "{file}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(code(&analyze("lambda15_float.json", &["--mode", "exact"])), 1);
    assert_eq!(code(&analyze("lambda15.json", &["--k-max", "1"])), 1);
    assert_eq!(code(&sdom(&["analyze"])), 1);
}

#[test]
fn malformed_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    for body in ["{", r#"{"n":2,"mode":"exact","entries":[["1"]]}"#, r#"{"n":2,"mode":"odd"}"#] {
        std::fs::write(&path, body).unwrap();
        let out = sdom(&["analyze", path.to_str().unwrap()]);
        assert_eq!(code(&out), 1, "{body}");
    }
}

#[test]
fn same_seed_gives_identical_bytes() {
    for file in ["lambda15_float.json", "circulant.json"] {
        let a = analyze(file, &["--seed", "7", "--mode", "float"]);
        let b = analyze(file, &["--seed", "7", "--mode", "float"]);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = coxeter("free4.json", "1,3,2,4,2,3");
    let b = coxeter("free4.json", "1,3,2,4,2,3");
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exact_file_analysed_in_float() {
    let out = analyze("lambda15_plain.json", &["--mode", "float"]);
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["regime"], "float");
    let lambda = j["lambda"].as_f64().unwrap();
    assert!((lambda - 15.0).abs() <= 1e-9);
}

#[test]
fn coxeter_reports() {
    let out = coxeter("free3_c2.json", "s1 s2 s3 s2");
    assert_eq!(code(&out), 0);
    let j = json(&out);
    assert_eq!(j["element"], serde_json::json!([["399", "-76", "284"], ["80", "-15", "56"], ["20", "-4", "15"]]));
    assert_eq!(j["signature"], serde_json::json!({"p": 2, "q": 1, "r": 0}));

    let out = coxeter("pentagon5.json", "1,2,3,4,5,1,2");
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["signature"], serde_json::json!({"p": 2, "q": 3, "r": 0}));

    let out = coxeter("affine2.json", "1,2");
    assert_eq!(code(&out), 2);
    let j = json(&out);
    assert_eq!(j["verdict"]["kind"], "multiplicity_at_least_two");
    assert_eq!(j["lehmer"], "rho_one");
}

#[test]
fn coxeter_input_errors_exit_one() {
    assert_eq!(code(&coxeter("pentagon5.json", "1,7")), 1);
    assert_eq!(code(&coxeter("pentagon5.json", "s1 x")), 1);
    assert_eq!(code(&coxeter("lambda15.json", "1")), 1);
}

#[test]
fn text_output_is_default() {
    let path = data("lambda15.json");
    let out = sdom(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verdict: simple_dominant"));
}
