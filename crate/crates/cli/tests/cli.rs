use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freepick")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn monotone_refutes_cube() {
    let out = run(&["monotone", "--series", &fixture("x3.json"), "--degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    let cert = &r["report"]["certificate"];
    assert_eq!(cert["verdict"], "refuted");
    let min = cert["letters"][0]["min_eig"].as_f64().unwrap();
    assert!((min + 1.0).abs() < 1e-12);
    assert_eq!(cert["witness"]["k"], 1);
}

#[test]
fn monotone_certifies_resolvent() {
    let out = run(&["monotone", "--series", &fixture("resolvent.json"), "--degree", "5", "--point", &fixture("point_small.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["report"]["certificate"]["verdict"], "certified_psd");
    assert_eq!(r["report"]["choi"][0]["completely_positive"], true);
}

#[test]
fn classify_fixtures() {
    for (file, expected) in [("type1.json", 1), ("type2.json", 2), ("type4.json", 4)] {
        let out = run(&["rep-classify", "--rep", &fixture(file)]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(r["report"]["type"], expected, "{file}");
        assert!(r["report"]["limits"].is_object());
    }
}

#[test]
fn cayley_of_zero_is_i() {
    let out = run(&["cayley", "--direction", "disk2half", "--point", &fixture("zero.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let t = &r["report"]["tuple"];
    assert_eq!(t["d"], 2);
    for m in t["matrices"].as_array().unwrap() {
        assert_eq!(complex(&m[0][0]), (0.0, 1.0));
        assert_eq!(complex(&m[0][1]), (0.0, 0.0));
        assert_eq!(complex(&m[1][1]), (0.0, 1.0));
    }
}

#[test]
fn eval_cube_counterexample() {
    let fx = report(&run(&["eval", "--series", &fixture("x3.json"), "--point", &fixture("point_x.json")]));
    let fy = report(&run(&["eval", "--series", &fixture("x3.json"), "--point", &fixture("point_y.json")]));
    let expect = [[9.0, 4.0], [4.0, 1.0]];
    for i in 0..2 {
        for j in 0..2 {
            let a = complex(&fx["report"]["value"][i][j]).0;
            let b = complex(&fy["report"]["value"][i][j]).0;
            assert_eq!(b - a, expect[i][j]);
        }
    }
}

#[test]
fn deriv_methods_agree() {
    let mut values = Vec::new();
    for method in ["block", "localizing", "fd"] {
        let out = run(&[
            "deriv", "--series", &fixture("resolvent.json"), "--point", &fixture("point_small.json"),
            "--direction", &fixture("direction_psd.json"), "--method", method,
        ]);
        assert_eq!(out.status.code(), Some(0));
        values.push(complex(&report(&out)["report"]["value"][0][0]).0);
    }
    assert!((values[0] - values[1]).abs() < 1e-12);
    assert!((values[0] - values[2]).abs() < 1e-6);
}

#[test]
fn interpolation_feasibility() {
    let good = run(&["interpolate", "--point", &fixture("jordan.json"), "--target", &fixture("jordan_target.json"), "--degree", "60"]);
    assert_eq!(good.status.code(), Some(0));
    assert!(report(&good)["report"]["residual"].as_f64().unwrap() < 1e-8);
    let bad = run(&["interpolate", "--point", &fixture("jordan.json"), "--target", &fixture("jordan_bad_target.json"), "--degree", "60"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(report(&bad)["report"]["feasible"], false);
    let from_series = run(&["interpolate", "--point", &fixture("point_small.json"), "--series", &fixture("x3.json"), "--degree", "3"]);
    assert_eq!(from_series.status.code(), Some(0));
}

#[test]
fn axioms_for_each_backend() {
    for (flag, file) in [("--series", "resolvent.json"), ("--rep", "type1.json"), ("--rep", "type4.json"), ("--model", "model.json")] {
        let out = run(&["axioms", flag, &fixture(file), "--samples", "20"]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(report(&out)["report"]["pass"], true);
    }
}

#[test]
fn herglotz_scalar_model() {
    let out = run(&["herglotz-eval", "--model", &fixture("model.json"), "--point", &fixture("half_point.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let (re, im) = complex(&r["report"]["value"][0][0]);
    assert!((re - 3.0).abs() < 1e-14 && im.abs() < 1e-14);
    let (phi, _) = complex(&r["report"]["schur"][0][0]);
    assert!((phi - 0.5).abs() < 1e-14);
}

#[test]
fn rep_eval_reports_imaginary_part() {
    let z = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(z.path(), r#"{"d":2,"n":1,"matrices":[[[[0.0,1.0]]],[[[0.0,1.0]]]]}"#).unwrap();
    let out = run(&["rep-eval", "--rep", &fixture("type1.json"), "--point", z.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["report"]["min_im_eig"].as_f64().unwrap() > 0.0);
}

#[test]
fn errors_exit_one() {
    let out = run(&["rep-eval", "--rep", &fixture("bad_sum.json"), "--point", &fixture("zero.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sum to the identity"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--point", &fixture("zero.json")]).status.code(), Some(1));
    let out = run(&["eval", "--series", &fixture("x3.json"), "--point", &fixture("zero.json")]);
    assert_eq!(out.status.code(), Some(1), "alphabet mismatch");
    assert_eq!(run(&["eval", "--series", "/nonexistent.json", "--point", &fixture("zero.json")]).status.code(), Some(1));
}

#[test]
fn reports_embed_config() {
    let out = run(&["monotone", "--series", &fixture("x3.json"), "--degree", "2", "--seed", "7", "--tol", "1e-8"]);
    let cfg = &report(&out)["config"];
    assert_eq!(cfg["degree"], 2);
    assert_eq!(cfg["seed"], 7);
    assert_eq!(cfg["tol"].as_f64(), Some(1e-8));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["rep-classify", "--rep", &fixture("type1.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["report"]["type"], 1);
}
