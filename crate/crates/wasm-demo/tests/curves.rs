use fracbessel_wasm_demo::{corpus_names, kernel_curve, operator_curve, symbol_curve};

#[test]
fn operator_curve_interleaves() {
    let v = operator_curve("bump", 0.5, 0.0, false, 0.5, 2.5, 5).unwrap();
    assert_eq!(v.len(), 10);
    // f vanishes at 0.5 and at 2.5; IB f is the bump mass at 0.5 and 0 at 2.5
    assert_eq!(v[0], 0.0);
    assert!(v[1] > 0.0);
    assert_eq!(v[9], 0.0);
}

#[test]
fn derivative_curve_is_finite() {
    let v = operator_curve("gaussian", 0.5, 1.0, true, 0.5, 1.5, 3).unwrap();
    assert!(v.iter().all(|x| x.is_finite()));
}

#[test]
fn kernel_curve_at_alpha1() {
    // K(1, 2) = 3 for α = 1, ν = 3
    let v = kernel_curve(1.0, 1.0, 3.0, 2.0, 4).unwrap();
    assert_eq!(v.len(), 4);
    assert!((v[3] - 3.0).abs() < 1e-12);
    assert!(v.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn symbol_curve_poles_are_nan() {
    // α = ½, ν = 0: the symbol is 1/s
    let v = symbol_curve(0.5, 0.0, false, -0.5, 0.5, 3).unwrap();
    assert!((v[0] + 2.0).abs() < 1e-14);
    assert!(v[1].is_nan());
    assert!((v[2] - 2.0).abs() < 1e-14);
}

#[test]
fn bad_input_is_an_error() {
    assert!(operator_curve("nope", 0.5, 0.0, false, 0.5, 2.5, 5).is_err());
    assert!(operator_curve("bump", -0.5, 0.0, false, 0.5, 2.5, 5).is_err());
    assert!(symbol_curve(0.5, 0.0, false, 1.0, 1.0, 5).is_err());
    assert_eq!(corpus_names(), ["bump", "ramp", "gaussian", "indicator"]);
}
