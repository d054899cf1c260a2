//! ∫ K(x, y) f(y) dy over y > x for kernels with an algebraic factor
//! (y² − x²)^e at the diagonal.
//!
//! With u = y² − x² the panel touching y = x becomes ∫ u^e R f / (2y) du,
//! which the double-exponential rule integrates with the u^e weight built in.
//! Other panels near the diagonal use v = u^(e+1), which turns the factor into
//! a constant; panels beyond y = 2x are plain Gauss–Kronrod in y.

use super::gk::{adaptive, panel_points};
use super::tanh_sinh::UnitRule;
use super::{Estimate, QuadSpec};
use crate::error::{Error, Result};
use crate::function::{Support, TestFunction};

/// Number of doubling segments allowed when the support is unbounded.
const MAX_TAIL_SEGMENTS: usize = 64;

/// A kernel of the form K(x, y) = (y² − x²)^e · R(x, y) for y > x.
pub trait SingularKernel {
    /// The exponent e; must exceed −1.
    fn exponent(&self) -> f64;

    /// The factor R(x, y), smooth up to y = x.
    fn regular(&self, x: f64, y: f64) -> Result<f64>;

    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let u = (y - x) * (y + x);
        Ok(u.powf(self.exponent()) * self.regular(x, y)?)
    }
}

/// ∫_{max(x, a)}^{b} K(x, y) f(y) dy for f supported on [a, b] (b may be ∞
/// for decaying f, in which case the range is doubled until it stops growing).
pub fn integrate_kernel_against<K>(
    f: &TestFunction,
    x: f64,
    kernel: &K,
    spec: &QuadSpec,
) -> Result<Estimate>
where
    K: SingularKernel + ?Sized,
{
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!(
            "kernel integration needs x > 0, got {x}"
        )));
    }
    let e = kernel.exponent();
    if !(e > -1.0) {
        return Err(Error::domain(format!(
            "kernel exponent {e} is not integrable at y = x"
        )));
    }
    let support = f.support();
    let start = support.lo().max(x);
    let hi = support.hi();
    if start >= hi {
        return Ok(Estimate::ZERO);
    }
    let breaks = f.breakpoints();

    let finite_end = match support {
        Support::Compact { hi, .. } => hi,
        Support::Unbounded { .. } => (2.0 * start).max(start + 1.0),
    };
    let mut total = integrate_range(f, x, kernel, start, finite_end, &breaks, spec)?;
    if support.is_compact() {
        return Ok(total);
    }

    let mut y = finite_end;
    let mut quiet = 0;
    for _ in 0..MAX_TAIL_SEGMENTS {
        let inc = integrate_range(f, x, kernel, y, 2.0 * y, &breaks, spec)?;
        total = total + inc;
        y *= 2.0;
        if inc.value.abs() <= spec.tolerance_for(total.value) {
            quiet += 1;
            if quiet == 2 {
                total.err_est += inc.value.abs();
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Accuracy {
        message: format!(
            "tail beyond y = {y} still contributing after {MAX_TAIL_SEGMENTS} doublings"
        ),
        value: total.value,
        err_est: total.err_est,
    })
}

fn integrate_range<K>(
    f: &TestFunction,
    x: f64,
    kernel: &K,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<Estimate>
where
    K: SingularKernel + ?Sized,
{
    let near_end = hi.min(2.0 * x);
    let mut total = Estimate::ZERO;

    if lo < near_end {
        let pts = panel_points(lo, near_end, breaks);
        for (i, w) in pts.windows(2).enumerate() {
            let piece = if i == 0 && w[0] == x {
                touching_panel(f, x, kernel, w[1], spec)?
            } else {
                substituted_panel(f, x, kernel, w[0], w[1], spec)?
            };
            total = total + piece;
        }
    }

    let far_lo = lo.max(near_end);
    if far_lo < hi {
        let pts = panel_points(far_lo, hi, breaks);
        let g = |y: f64| Ok(kernel.eval(x, y)? * f.eval(y));
        total = total + adaptive(&g, &pts, spec)?;
    }
    Ok(total)
}

/// ∫_x^{y1} via u = y² − x² on [0, u1] with the u^e weight.
fn touching_panel<K>(
    f: &TestFunction,
    x: f64,
    kernel: &K,
    y1: f64,
    spec: &QuadSpec,
) -> Result<Estimate>
where
    K: SingularKernel + ?Sized,
{
    let e = kernel.exponent();
    let u1 = (y1 - x) * (y1 + x);
    let rule = UnitRule::new(e, 0.0)?;
    let x2 = x * x;
    let est = rule.try_integrate(
        |t, _| {
            let u = u1 * t;
            let y = (x2 + u).sqrt();
            Ok(kernel.regular(x, y)? * f.eval(y) / (2.0 * y))
        },
        spec,
    )?;
    Ok(est.scale(u1.powf(e + 1.0)))
}

/// ∫_{y0}^{y1} (y0 > x) via v = (y² − x²)^(e+1).
fn substituted_panel<K>(
    f: &TestFunction,
    x: f64,
    kernel: &K,
    y0: f64,
    y1: f64,
    spec: &QuadSpec,
) -> Result<Estimate>
where
    K: SingularKernel + ?Sized,
{
    let k = kernel.exponent() + 1.0;
    let x2 = x * x;
    let to_v = |y: f64| ((y - x) * (y + x)).powf(k);
    let (v0, v1) = (to_v(y0), to_v(y1));
    if !(v0 < v1) {
        return Ok(Estimate::ZERO);
    }
    let g = |v: f64| {
        let y = (x2 + v.powf(1.0 / k)).sqrt();
        Ok(kernel.regular(x, y)? * f.eval(y) / (2.0 * k * y))
    };
    adaptive(&g, &[v0, v1], spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Decay, Support};

    struct Prefactor(f64);

    impl SingularKernel for Prefactor {
        fn exponent(&self) -> f64 {
            self.0
        }
        fn regular(&self, _x: f64, y: f64) -> Result<f64> {
            Ok(2.0 * y)
        }
    }

    fn one_on(lo: f64, hi: f64) -> TestFunction {
        TestFunction::new("one", Support::Compact { lo, hi }, |_| 1.0)
    }

    #[test]
    fn substitution_is_exact_for_pure_prefactor() {
        // ∫_x^Y (y² − x²)^e 2y dy = (Y² − x²)^{e+1} / (e + 1)
        let spec = QuadSpec::default();
        for &(x, big_y, e) in &[
            (1.0, 1.7, -0.5),
            (0.4, 3.0, -0.8),
            (2.0, 9.0, 1.4),
            (1.0, 5.0, 0.0),
        ] {
            let f = one_on(0.1, big_y);
            let got = integrate_kernel_against(&f, x, &Prefactor(e), &spec).unwrap();
            let want = ((big_y - x) * (big_y + x)).powf(e + 1.0) / (e + 1.0);
            assert!(
                ((got.value - want) / want).abs() < 1e-12,
                "{x} {big_y} {e}: {got:?} vs {want}"
            );
        }
    }

    #[test]
    fn empty_intersection_is_zero() {
        let f = one_on(1.0, 2.0);
        let got = integrate_kernel_against(&f, 2.5, &Prefactor(0.3), &QuadSpec::default()).unwrap();
        assert_eq!(got, Estimate::ZERO);
    }

    #[test]
    fn support_starting_above_x() {
        // ∫_a^b (y²−x²)^e 2y dy with a > x
        let (x, a, b, e) = (1.0, 1.001, 2.0, -0.6);
        let got = integrate_kernel_against(&one_on(a, b), x, &Prefactor(e), &QuadSpec::default())
            .unwrap();
        let anti = |y: f64| ((y - x) * (y + x)).powf(e + 1.0) / (e + 1.0);
        let want = anti(b) - anti(a);
        assert!(
            ((got.value - want) / want).abs() < 1e-11,
            "{got:?} vs {want}"
        );
    }

    #[test]
    fn unbounded_support_by_doubling() {
        // ∫_x^∞ 2y e^{−y²} dy = e^{−x²} (e = 0)
        let f = TestFunction::new(
            "gauss",
            Support::Unbounded {
                lo: 0.0,
                decay: Decay::Gaussian { rate: 1.0 },
            },
            |y| (-y * y).exp(),
        );
        let x = 0.7;
        let got = integrate_kernel_against(&f, x, &Prefactor(0.0), &QuadSpec::default()).unwrap();
        assert!((got.value - (-x * x).exp()).abs() < 1e-12, "{got:?}");
    }

    #[test]
    fn rejects_bad_arguments() {
        let f = one_on(1.0, 2.0);
        assert!(integrate_kernel_against(&f, 0.0, &Prefactor(0.0), &QuadSpec::default()).is_err());
        assert!(integrate_kernel_against(&f, 1.0, &Prefactor(-1.0), &QuadSpec::default()).is_err());
    }
}
