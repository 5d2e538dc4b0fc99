use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_miortho")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn compute_examples() {
    let out = run(&["compute", "--family", "laguerre", "--g", "5/2", "--index", "I:1", "--n", "0", "--route", "a"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["routes"][0]["p"], serde_json::json!(["-4", "-1"]));
    assert_eq!(v["case"], "L g=5/2 D=I1 n=0");

    let out = run(&["compute", "--family", "laguerre", "--g", "5/2", "--index", "I:1", "--what", "xi"]);
    assert_eq!(json(&out)["routes"][0]["xi"], serde_json::json!(["3", "1"]));

    let out = run(&["compute", "--family", "jacobi", "--g", "1/2", "--h", "1/2", "--n", "1"]);
    assert_eq!(json(&out)["routes"][0]["p"], serde_json::json!(["0", "1"]));
}

#[test]
fn compute_all_routes_reports_equality() {
    let out = run(&[
        "compute", "--family", "jacobi", "--g", "17/4", "--h", "13/3", "--index", "I:1,II:2,I:3", "--n", "2", "--route",
        "all",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["equal"], true);
    assert_eq!(v["routes"].as_array().unwrap().len(), 3);
}

#[test]
fn compute_formats() {
    let base = ["compute", "--family", "laguerre", "--g", "5/2", "--index", "I:1"];
    let csv = run(&[&base[..], &["--format", "csv"]].concat());
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("route,quantity,degree,coefficient\n"));
    assert!(text.contains("a,p,0,-4\n"));
    let tex = run(&[&base[..], &["--format", "latex"]].concat());
    let text = String::from_utf8(tex.stdout).unwrap();
    assert!(text.contains("= \\eta + 3"), "{text}");
}

#[test]
fn validation_exit_codes() {
    // duplicate seed
    let out = run(&["compute", "--family", "laguerre", "--g", "7/3", "--index", "I:1,I:1"]);
    assert_eq!(code(&out), 2);
    // Type II degree out of range at g = 7/3
    let out = run(&["compute", "--family", "laguerre", "--g", "7/3", "--index", "II:2"]);
    assert_eq!(code(&out), 2);
    // malformed flags
    assert_eq!(code(&run(&["compute", "--family", "laguerre", "--g", "x"])), 2);
    assert_eq!(code(&run(&["compute", "--family", "hermite", "--g", "2"])), 2);
    assert_eq!(code(&run(&["compute", "--family", "jacobi", "--g", "2"])), 2);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "equivalence", "--max-m", "2", "--max-d", "2", "--max-n", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["suite"], "equivalence");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["cases"][0]["key"].as_str().unwrap().starts_with("L g=7/3"));

    let out = run(&["verify", "--suite", "identities"]);
    assert_eq!(code(&out), 0);

    let out = run(&["verify", "--suite", "parity", "--family", "laguerre"]);
    assert_eq!(code(&out), 2);

    let out = run(&["verify", "--suite", "parity", "--family", "jacobi", "--max-m", "2", "--max-d", "2", "--max-n", "1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_numeric_failure_exits_one() {
    let out = run(&["verify", "--suite", "xwronskian", "--family", "laguerre", "--max-m", "1", "--max-d", "1", "--xw-tol", "1e-300"]);
    assert_eq!(code(&out), 1);
    let out = run(&["verify", "--suite", "xwronskian", "--family", "laguerre", "--max-m", "1", "--max-d", "1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "--suite", "orthogonality", "--family", "jacobi", "--max-n", "3"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "--suite", "equivalence", "--max-m", "2", "--max-d", "1", "--max-n", "1"];
    let single = Command::new(env!("CARGO_BIN_EXE_miortho")).args(args).env("MIORTHO_THREADS", "1").output().unwrap();
    assert_eq!(single.stdout, run(&args).stdout);
}

#[test]
fn table_examples() {
    let base = ["table", "--family", "laguerre", "--g", "5/2"];
    let out = run(&[&base[..], &["--index", "I:1", "--grid", "0:2:3", "--quantity", "xi"]].concat());
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    assert_eq!(rows, vec![(0.0, 3.0), (1.0, 4.0), (2.0, 5.0)]);

    let out = run(&[&base[..], &["--grid", "1:1:1", "--quantity", "potential"]].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    let v: f64 = text.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((v + 1.25).abs() < 1e-14);

    let out = run(&[&base[..], &["--grid", "0:1:0", "--quantity", "wavefunction"]].concat());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "x,value\n");

    let out = run(&[&base[..], &["--grid", "-1:1:3", "--quantity", "potential"]].concat());
    assert_eq!(code(&out), 2);
    let out = run(&[&base[..], &["--grid", "1:2", "--quantity", "potential"]].concat());
    assert_eq!(code(&out), 2);
}
