use super::{Estimate, QuadSpec};
use crate::error::{Error, Result};

// 15-point Kronrod extension of the 7-point Gauss rule, positive abscissae.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<F>(g: &F, lo: f64, hi: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = g(center)?;
    let mut res_g = f_center * WG[3];
    let mut res_k = f_center * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = g(center - dx)?;
        let f2 = g(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    if !value.is_finite() {
        return Err(Error::domain(format!(
            "integrand is not finite on [{lo}, {hi}]"
        )));
    }
    let err = rescale_error(
        (res_k - res_g) * half,
        res_abs * half.abs(),
        res_asc * half.abs(),
    );
    Ok(Panel { lo, hi, value, err })
}

/// Globally adaptive Gauss–Kronrod over consecutive subintervals of `points`
/// (which must be strictly increasing). The worst panel is bisected until the
/// total error estimate meets the tolerance or the panel budget runs out.
pub(crate) fn adaptive<F>(g: &F, points: &[f64], spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if points.len() < 2 {
        return Ok(Estimate::ZERO);
    }
    if points.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain(format!(
            "integration points must be strictly increasing, got {points:?}"
        )));
    }
    let mut panels = Vec::with_capacity(points.len() * 4);
    for w in points.windows(2) {
        panels.push(gk15(g, w[0], w[1])?);
    }
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= spec.tolerance_for(value) {
            return Ok(Estimate::new(value, err));
        }
        if panels.len() >= spec.max_panels {
            return Err(Error::Accuracy {
                message: format!("panel budget of {} exhausted", spec.max_panels),
                value,
                err_est: err,
            });
        }
        let (worst, _) =
            panels
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |(bi, be), (i, p)| {
                    if p.err > be {
                        (i, p.err)
                    } else {
                        (bi, be)
                    }
                });
        let Panel { lo, hi, .. } = panels[worst];
        let mid = 0.5 * (lo + hi);
        if !(lo < mid && mid < hi) {
            // Cannot bisect further in floating point.
            return Err(Error::Accuracy {
                message: format!("panel [{lo}, {hi}] cannot be subdivided further"),
                value,
                err_est: err,
            });
        }
        panels[worst] = gk15(g, lo, mid)?;
        panels.push(gk15(g, mid, hi)?);
    }
}

/// ∫_lo^hi g with the adaptive 15-point rule.
pub fn integrate_finite<F>(g: F, lo: f64, hi: f64, spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::domain(format!(
            "integration bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    adaptive(&|t| Ok(g(t)), &[lo, hi], spec)
}

/// ∫ g over [points[0], points[last]], with the listed interior points used as
/// initial panel boundaries (kinks, support edges, ramps).
pub fn integrate_finite_points<F>(g: F, points: &[f64], spec: &QuadSpec) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    adaptive(&|t| Ok(g(t)), points, spec)
}

/// Sorted, deduplicated initial panel boundaries for [lo, hi] with the
/// breakpoints that fall strictly inside.
pub(crate) fn panel_points(lo: f64, hi: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo];
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > lo && b < hi)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    pts.extend(inner);
    pts.push(hi);
    pts
}
