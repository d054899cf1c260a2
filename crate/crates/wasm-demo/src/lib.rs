//! Browser bindings for the demo page in `www/`. Every function returns a
//! flat `Float64Array` (or throws a string) so the page needs no glue beyond
//! what `wasm-bindgen` generates.

use fracbessel::corpus;
use fracbessel::kernels::{BesselKernel, KernelRepr, OperatorParams};
use fracbessel::mellin::MellinSymbol;
use fracbessel::operators::{frac_bessel_derivative, FracBesselIntegral};
use fracbessel::QuadSpec;
use wasm_bindgen::prelude::*;

fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 || from >= to || !from.is_finite() || !to.is_finite() {
        return Err(format!("bad grid [{from}, {to}] with {points} points"));
    }
    let h = (to - from) / (points - 1) as f64;
    Ok((0..points).map(|i| from + h * i as f64).collect())
}

fn params(alpha: f64, nu: f64) -> Result<OperatorParams, String> {
    OperatorParams::new(alpha, nu).map_err(|e| e.to_string())
}

/// Values of f and of IB^α f (or DB^α f) on a grid of (0, ∞), interleaved
/// as [f(x₀), g(x₀), f(x₁), g(x₁), ...]. Failed points come back as NaN.
pub fn operator_curve(
    name: &str,
    alpha: f64,
    nu: f64,
    derivative: bool,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let f = &corpus::by_name(name).map_err(|e| e.to_string())?.function;
    let p = params(alpha, nu)?;
    let spec = QuadSpec::new(1e-8, 1e-12).map_err(|e| e.to_string())?;
    let op = FracBesselIntegral::new(p).map_err(|e| e.to_string())?;
    let xs = grid(from.max(1e-6), to, points)?;
    let mut out = Vec::with_capacity(2 * xs.len());
    for x in xs {
        let g = if derivative {
            frac_bessel_derivative(f, x, &p, &spec)
        } else {
            op.apply(f, x, &spec)
        };
        out.push(f.eval(x));
        out.push(g.map_or(f64::NAN, |e| e.value));
    }
    Ok(out)
}

/// y ↦ K(x, y) for y on (x, to].
pub fn kernel_curve(
    x: f64,
    alpha: f64,
    nu: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let k = BesselKernel::new(params(alpha, nu)?, KernelRepr::Hypergeometric)
        .map_err(|e| e.to_string())?;
    let ys = grid(x, to, points + 1)?;
    Ok(ys[1..]
        .iter()
        .map(|&y| k.value(x, y).unwrap_or(f64::NAN))
        .collect())
}

/// The multiplier of IB^α (or DB^α) on Mellin transforms, continued past its
/// poles. Poles come back as NaN.
pub fn symbol_curve(
    alpha: f64,
    nu: f64,
    derivative: bool,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let p = params(alpha, nu)?;
    let symbol = if derivative {
        MellinSymbol::derivative(p)
    } else {
        MellinSymbol::integral(p)
    };
    Ok(grid(from, to, points)?
        .into_iter()
        .map(|s| symbol.eval_continued(s).unwrap_or(f64::NAN))
        .collect())
}

#[wasm_bindgen(js_name = operatorCurve)]
pub fn operator_curve_js(
    name: &str,
    alpha: f64,
    nu: f64,
    derivative: bool,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    operator_curve(name, alpha, nu, derivative, from, to, points).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = kernelCurve)]
pub fn kernel_curve_js(
    x: f64,
    alpha: f64,
    nu: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    kernel_curve(x, alpha, nu, to, points).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = symbolCurve)]
pub fn symbol_curve_js(
    alpha: f64,
    nu: f64,
    derivative: bool,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    symbol_curve(alpha, nu, derivative, from, to, points).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = corpusNames)]
pub fn corpus_names() -> Vec<String> {
    corpus::names()
        .into_iter()
        .filter(|n| *n != "power")
        .map(String::from)
        .collect()
}
