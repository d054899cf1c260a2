use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracbessel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<f64>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn eval_grid_shape() {
    let o = run(&[
        "eval", "--alpha", "0.5", "--nu", "0", "--fn", "bump", "--from", "0.2", "--to", "1.0",
        "--points", "5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("x,value,err_est"));
    let r = rows(&o);
    assert_eq!(r.len(), 5);
    assert_eq!(r[0][0], 0.2);
    assert_eq!(r[4][0], 1.0);
    // left of the support the order-1 Liouville integral is the total mass
    for row in &r {
        assert!((row[1] - r[0][1]).abs() < 1e-12);
    }
}

#[test]
fn eval_gaussian_inverse_value() {
    // IB^1 applied to B_3 of exp(−x²) recovers it, so IB^1 exp(−x²) at 1
    // is the value G with B_3 G = exp(−x²) decaying at infinity: e^{−1}/4.
    let o = run(&[
        "eval", "--alpha", "1", "--nu", "3", "--fn", "gaussian", "--at", "1.0",
    ]);
    assert!(o.status.success());
    let v = rows(&o)[0][1];
    assert!((v - (-1f64).exp() / 4.0).abs() < 1e-10, "{v}");
}

#[test]
fn beyond_support_is_zero() {
    let o = run(&[
        "eval", "--alpha", "0.7", "--nu", "1.5", "--fn", "bump", "--at", "2.5", "--at", "4",
    ]);
    assert!(o.status.success());
    for row in rows(&o) {
        assert_eq!(row[1], 0.0);
    }
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = [
        "eval", "--alpha", "0.3", "--nu", "2", "--fn", "ramp", "--from", "0.1", "--to", "2",
        "--points", "7",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines().skip(1) {
        for field in line.split(',') {
            let v: f64 = field.parse().unwrap();
            assert_eq!(format!("{v:.16e}"), field);
        }
    }
}

#[test]
fn derivative_and_json() {
    let o = run(&[
        "eval",
        "--alpha",
        "0.5",
        "--nu",
        "1",
        "--fn",
        "bump",
        "--at",
        "1.5",
        "--derivative",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["x"], 1.5);
    assert!(v[0]["value"].as_f64().unwrap().is_finite());
}

#[test]
fn representations_agree() {
    let base = [
        "eval", "--alpha", "0.4", "--nu", "2.5", "--fn", "gaussian", "--at", "0.8", "--repr",
    ];
    let h = rows(&run(&[&base[..], &["hyp"]].concat()))[0][1];
    let l = rows(&run(&[&base[..], &["legendre"]].concat()))[0][1];
    assert!((h - l).abs() <= 1e-9 * h.abs());
}

#[test]
fn table_long_format() {
    let o = run(&[
        "table", "--alpha", "0.5,1", "--nu", "1", "--fn", "ramp", "--at", "0.5", "--at", "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("alpha,nu,x,value,err_est"));
    let r = rows(&o);
    assert_eq!(r.len(), 4);
    assert_eq!((r[0][0], r[3][0]), (0.5, 1.0));
}

#[test]
fn mellin_matches_prediction() {
    let o = run(&[
        "mellin", "--alpha", "0.5", "--nu", "0.5", "--fn", "bump", "--s", "1", "--s", "2",
    ]);
    assert!(o.status.success());
    for r in rows(&o) {
        assert!((r[1] - r[3]).abs() <= 1e-8 * r[3].abs(), "{r:?}");
    }
}

#[test]
fn closed_form_valid() {
    let o = run(&["closed-form", "--m", "-3", "--alpha", "0.25", "--nu", "0.5"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exponent"], -2.5);
    assert!((v["coefficient"].as_f64().unwrap() - 0.697_366_413_368_735_3).abs() < 1e-14);
}

#[test]
fn closed_form_invalid_region() {
    let o = run(&["closed-form", "--m", "-1", "--alpha", "0.5", "--nu", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m+2α+ν<1"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["eval", "--alpha", "0.5", "--fn", "nope", "--at", "1"][..],
        &["eval", "--alpha", "-1", "--fn", "bump", "--at", "1"],
        &["eval", "--alpha", "0.5", "--fn", "bump", "--at", "-1"],
        &[
            "eval", "--alpha", "0.5", "--fn", "bump", "--from", "0.1", "--to", "1", "--points", "0",
        ],
        &["eval", "--alpha", "0.5", "--fn", "bump"],
        &["verify", "--suite", "nope"],
        &["mellin", "--alpha", "0.5", "--fn", "gaussian", "--s", "1"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_property4_report() {
    let o = run(&["verify", "--suite", "property4"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suite"], "property4");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    for c in checks {
        assert_eq!(c["pass"], true);
        if c["name"].as_str().unwrap().starts_with("property4/m=") {
            assert!(c["error"].as_f64().unwrap() <= 1e-6);
        }
    }
}

#[test]
fn verify_semigroup_symbol() {
    let o = run(&["verify", "--suite", "semigroup"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let symbol = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "semigroup/symbol")
        .unwrap();
    assert!(symbol["error"].as_f64().unwrap() <= 1e-11);
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "all");
}
