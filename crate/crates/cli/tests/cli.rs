use std::process::{Command, Output};

fn fedosov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fedosov")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = fedosov(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim_end().to_string()
}

#[test]
fn star_on_flat_data() {
    let flat = data("flat.json");
    assert_eq!(ok(&["star", "--data", &flat, "x1", "x2"]), "x1*x2 + 1/2 hbar");
    assert_eq!(ok(&["star", "--data", &flat, "x2", "x1"]), "x1*x2 - 1/2 hbar");
    assert_eq!(ok(&["star", "--data", &flat, "1", "x1"]), "x1");
    assert_eq!(ok(&["star", "--data", &flat, "x1^2", "x2^2"]), "x1^2*x2^2 + 2 hbar*x1*x2 + 1/2 hbar^2");
}

#[test]
fn star_truncates_at_order() {
    let flat = data("flat.json");
    assert_eq!(ok(&["star", "--data", &flat, "--order", "2", "x1^2", "x2^2"]), "x1^2*x2^2 + 2 hbar*x1*x2");
}

#[test]
fn star_json_output() {
    let out = ok(&["--json", "star", "--data", &data("flat.json"), "x1", "x2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["text"], "x1*x2 + 1/2 hbar");
    assert_eq!(v["value"]["terms"].as_array().unwrap().len(), 2);
    assert_eq!(v["value"]["terms"][1]["coeff"], "1/2");
}

#[test]
fn tau_of_coordinate() {
    assert_eq!(ok(&["tau", "--data", &data("flat.json"), "--order", "3", "x1"]), "x1 + y1");
}

#[test]
fn solve_r_flat_and_with_omega() {
    assert_eq!(ok(&["solve-r", "--data", &data("flat.json")]), "r = 0\nresidual = 0");
    let out = ok(&["solve-r", "--data", &data("flat_omega.json")]);
    let (r, residual) = out.split_once('\n').unwrap();
    assert_ne!(r, "r = 0");
    assert_eq!(residual, "residual = 0");
    let curved = ok(&["solve-r", "--data", &data("curved.json")]);
    assert!(curved.ends_with("residual = 0"), "{curved}");
}

#[test]
fn fedosov_class_with_omega() {
    assert_eq!(ok(&["fedosov-class", "--data", &data("flat_omega.json")]), "2 hbar^-1*dx1*dx2 + dx1*dx2");
}

#[test]
fn gauge_equivalent_product() {
    let (flat, g) = (data("flat.json"), data("gauge.json"));
    // Q = id + hbar d1 on functions of x1 alone, where the Moyal product is commutative
    assert_eq!(ok(&["gauge", "--data", &flat, "--gauge", &g, "x1^2", "x1"]), "x1^3 + 2 hbar^2*x1 - 2 hbar^3");
    assert_eq!(ok(&["gauge", "--data", &flat, "--gauge", &g, "x1", "x2"]), "x1*x2 + 1/2 hbar");
}

#[test]
fn verify_suites_pass() {
    for suite in ["hodge", "chi", "barkoszul", "equivariance"] {
        let out = ok(&["verify", suite, "--dim", "2", "--order", "6", "--seed", "1"]);
        assert!(!out.contains("FAIL"), "{out}");
    }
    ok(&["verify", "assoc", "--data", &data("curved.json"), "--seed", "1"]);
}

#[test]
fn verify_report_json() {
    let out = ok(&["--json", "verify", "hodge", "--seed", "1"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "hodge");
    assert_eq!(v["config"]["seed"], 1);
    assert_eq!(v["config"]["order"], 6);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
    }
}

#[test]
fn output_is_reproducible() {
    let args = ["--json", "verify", "chi", "--seed", "3"];
    assert_eq!(ok(&args), ok(&args));
    let star = ["star", "--data", &data("curved.json"), "x1^2", "x2"];
    assert_eq!(ok(&star), ok(&star));
}

#[test]
fn input_errors_exit_2() {
    let cases: Vec<Vec<String>> = vec![
        vec!["star".into(), "--data".into(), data("malformed.json"), "x1".into(), "x2".into()],
        vec!["verify".into(), "assoc".into(), "--data".into(), data("bad_gamma.json")],
        vec!["verify".into(), "nope".into()],
        vec!["star".into(), "--data".into(), data("flat.json"), "x3".into(), "x1".into()],
        vec!["star".into(), "--data".into(), data("missing.json"), "x1".into(), "x1".into()],
        vec!["verify".into(), "hodge".into(), "--dim".into(), "3".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = fedosov(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "), "{args:?}");
    }
}

#[test]
fn non_symplectic_connection_is_reported() {
    let o = fedosov(&["solve-r", "--data", &data("bad_gamma.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not symplectic"));
}
