//! Mellin transforms and the gamma-ratio symbols of IB^α and DB^α:
//! (IB^α f)*(s) = m_I(s) f*(s + 2α) and (DB^α f)*(s) = m_D(s) f*(s − 2α).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{Support, TestFunction};
use crate::kernels::OperatorParams;
use crate::operators::FracBesselIntegral;
use crate::quad::{integrate_finite_points, Estimate, QuadSpec, UnitRule};
use crate::specfun::{is_gamma_pole, GammaRatio};

const MAX_TAIL_SEGMENTS: usize = 64;

/// ∫₀^∞ x^{s−1} f(x) dx.
pub fn mellin_transform(f: &TestFunction, s: f64, spec: &QuadSpec) -> Result<Estimate> {
    if !s.is_finite() {
        return Err(Error::domain(format!(
            "Mellin variable must be finite, got {s}"
        )));
    }
    let g = |x: f64| x.powf(s - 1.0) * f.eval(x);
    let breaks = f.breakpoints();
    match f.support() {
        Support::Compact { lo, hi } if lo > 0.0 => {
            integrate_finite_points(g, &with_inner(lo, hi, &breaks), spec)
        }
        support => {
            let lo = support.lo();
            let head_end = if lo > 0.0 { 2.0 * lo } else { 1.0 };
            let head = if lo > 0.0 {
                integrate_finite_points(g, &with_inner(lo, head_end, &breaks), spec)?
            } else {
                // x^{s−1} at the origin
                if !(s > 0.0) {
                    return Err(Error::domain(format!(
                        "Mellin transform of a function not vanishing at 0 needs s > 0, got {s}"
                    )));
                }
                UnitRule::new(s - 1.0, 0.0)?
                    .integrate(|t, _| f.eval(t * head_end), spec)?
                    .scale(head_end.powf(s))
            };
            let hi = support.hi();
            if hi <= head_end {
                return Ok(head);
            }
            tail_from(head, head_end, hi, &g, &breaks, spec)
        }
    }
}

fn with_inner(lo: f64, hi: f64, breaks: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo];
    pts.extend(breaks.iter().copied().filter(|&b| b > lo && b < hi));
    pts.push(hi);
    pts
}

/// Add ∫_{start}^{hi} g to `acc`, doubling the range when hi is infinite.
fn tail_from<G>(
    mut acc: Estimate,
    start: f64,
    hi: f64,
    g: &G,
    breaks: &[f64],
    spec: &QuadSpec,
) -> Result<Estimate>
where
    G: Fn(f64) -> f64,
{
    if hi.is_finite() {
        return Ok(acc + integrate_finite_points(g, &with_inner(start, hi, breaks), spec)?);
    }
    let mut y = start;
    let mut quiet = 0;
    for _ in 0..MAX_TAIL_SEGMENTS {
        let inc = integrate_finite_points(g, &with_inner(y, 2.0 * y, breaks), spec)?;
        acc = acc + inc;
        y *= 2.0;
        if inc.value.abs() <= spec.tolerance_for(acc.value) {
            quiet += 1;
            if quiet == 2 {
                acc.err_est += inc.value.abs();
                return Ok(acc);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Accuracy {
        message: format!("Mellin tail beyond {y} still contributing"),
        value: acc.value,
        err_est: acc.err_est,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Integral,
    Derivative,
}

/// The multiplier of IB^α (Integral) or DB^α (Derivative) under the Mellin transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MellinSymbol {
    pub params: OperatorParams,
    pub direction: Direction,
}

impl MellinSymbol {
    pub fn integral(params: OperatorParams) -> Self {
        Self {
            params,
            direction: Direction::Integral,
        }
    }

    pub fn derivative(params: OperatorParams) -> Self {
        Self {
            params,
            direction: Direction::Derivative,
        }
    }

    /// (T f)*(s) = m(s) f*(s + shift).
    pub fn shift(&self) -> f64 {
        match self.direction {
            Direction::Integral => 2.0 * self.params.alpha(),
            Direction::Derivative => -2.0 * self.params.alpha(),
        }
    }

    /// Open lower bound on s accepted by [`MellinSymbol::eval`]:
    /// max(ν − 1, 0) for the integral, none for the derivative.
    pub fn lower_bound(&self) -> Option<f64> {
        match self.direction {
            Direction::Integral => Some((self.params.nu() - 1.0).max(0.0)),
            Direction::Derivative => None,
        }
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        if let Some(lb) = self.lower_bound() {
            if !(s > lb) {
                return Err(Error::domain(format!(
                    "integral symbol needs s > max(nu-1, 0) = {lb}, got s = {s}; \
                     use eval_continued for s in (nu-1, 0) away from the poles of Gamma(s/2)"
                )));
            }
        }
        self.bracket(s)
    }

    /// The integral symbol on the whole range s > ν − 1, poles of Γ(s/2) excluded.
    pub fn eval_continued(&self, s: f64) -> Result<f64> {
        match self.direction {
            Direction::Integral => {
                let nu = self.params.nu();
                if !(s > nu - 1.0) {
                    return Err(Error::domain(format!(
                        "integral symbol needs s > nu-1 = {}, got s = {s}",
                        nu - 1.0
                    )));
                }
                self.bracket(s)
            }
            Direction::Derivative => self.eval(s),
        }
    }

    /// 2^{∓2α} Γ(h)/Γ(h ± α) · Γ(h − k)/Γ(h − k ± α) with h = s/2, k = (ν−1)/2.
    fn bracket(&self, s: f64) -> Result<f64> {
        let (alpha, nu) = (self.params.alpha(), self.params.nu());
        let h = 0.5 * s;
        let k = 0.5 * (nu - 1.0);
        let (shift, scale) = match self.direction {
            Direction::Integral => (alpha, -2.0 * alpha),
            Direction::Derivative => (-alpha, 2.0 * alpha),
        };
        let (l1, s1) = ln_shift_ratio(h, shift)?;
        let (l2, s2) = ln_shift_ratio(h - k, shift)?;
        Ok(s1 * s2 * (l1 + l2 + scale * std::f64::consts::LN_2).exp())
    }
}

/// ln|Γ(u)/Γ(u + d)| and its sign. Integer d gives a finite product, which
/// keeps matched poles (Γ(0)/Γ(−1) and the like) finite.
fn ln_shift_ratio(u: f64, d: f64) -> Result<(f64, f64)> {
    let pole = |arg: f64| Error::Pole {
        arg,
        context: "Mellin symbol numerator",
    };
    if d == d.round() && d.abs() <= 64.0 {
        let n = d.abs() as usize;
        // Γ(u)/Γ(u − n) = Π_{j=1..n} (u − j);  Γ(u)/Γ(u + n) = 1 / Π_{j=0..n−1} (u + j)
        let factors: Vec<f64> = if d < 0.0 {
            (1..=n).map(|j| u - j as f64).collect()
        } else {
            (0..n).map(|j| u + j as f64).collect()
        };
        let (mut ln, mut sign) = (0.0, 1.0);
        for f in factors {
            if f == 0.0 {
                if d < 0.0 {
                    return Ok((f64::NEG_INFINITY, 1.0));
                }
                return Err(pole(u));
            }
            ln += f.abs().ln();
            sign *= f.signum();
        }
        return Ok(if d < 0.0 { (ln, sign) } else { (-ln, sign) });
    }
    if is_gamma_pole(u) {
        return Err(pole(u));
    }
    if is_gamma_pole(u + d) {
        return Ok((f64::NEG_INFINITY, 1.0));
    }
    Ok(GammaRatio::new(vec![u], vec![u + d])?.ln_abs_signed())
}

/// m_I(s) = 2^{−2α} Γ(s/2) Γ(s/2 − (ν−1)/2) / (Γ(α + s/2 − (ν−1)/2) Γ(α + s/2)), s > max(ν − 1, 0).
pub fn mellin_symbol_ib(s: f64, p: &OperatorParams) -> Result<f64> {
    MellinSymbol::integral(*p).eval(s)
}

/// m_D(s) = 2^{2α} Γ(s/2) Γ(s/2 − (ν−1)/2) / (Γ(s/2 − α − (ν−1)/2) Γ(s/2 − α)).
pub fn mellin_symbol_db(s: f64, p: &OperatorParams) -> Result<f64> {
    MellinSymbol::derivative(*p).eval(s)
}

/// m_I(s; α) m_I(s + 2α; β) / m_I(s; α + β), which the index law makes 1.
pub fn symbol_semigroup_check(s: f64, alpha: f64, beta: f64, nu: f64) -> Result<f64> {
    let pa = OperatorParams::new(alpha, nu)?;
    let pb = OperatorParams::new(beta, nu)?;
    let pab = OperatorParams::new(alpha + beta, nu)?;
    // Ratio in log space so large s does not overflow.
    let ln = |p: &OperatorParams, s: f64| -> Result<(f64, f64)> {
        let v = mellin_symbol_ib(s, p)?;
        Ok((v.abs().ln(), v.signum()))
    };
    let (la, sa) = ln(&pa, s)?;
    let (lb, sb) = ln(&pb, s + 2.0 * alpha)?;
    let (lab, sab) = ln(&pab, s)?;
    Ok(sa * sb * sab * (la + lb - lab).exp())
}

/// Where IB^α f is evaluated to integrate it against x^{s−1} near 0, and how.
fn near_zero_exponent(nu: f64) -> f64 {
    // IB f(x) ~ x^{1−ν} as x → 0 when ν > 1 (log at ν = 1), bounded otherwise.
    (1.0 - nu).min(0.0)
}

/// ∫₀^∞ x^{s−1} (IB^α f)(x) dx for compactly supported f, by quadrature of
/// the operator output. For ν < 1 and s ∈ (ν − 1, 0) the transform is the
/// analytic continuation ∫₀^a x^{s−1}(F − F(0)) + F(0) a^s / s + ∫_a^b x^{s−1} F.
pub fn mellin_of_integral(
    f: &TestFunction,
    s: f64,
    p: &OperatorParams,
    spec: &QuadSpec,
) -> Result<Estimate> {
    let Support::Compact { lo, hi } = f.support() else {
        return Err(Error::domain(
            "Mellin transform of IB f is computed for compactly supported f",
        ));
    };
    let nu = p.nu();
    if !(s > nu - 1.0) {
        return Err(Error::domain(format!(
            "needs s > nu - 1 = {}, got {s}",
            nu - 1.0
        )));
    }
    if s == 0.0 || (s < 0.0 && is_gamma_pole(0.5 * s)) {
        return Err(Error::domain(format!("s = {s} is a pole of the transform")));
    }
    let ib = FracBesselIntegral::new(*p)?;
    let a = 0.5 * lo;
    let value_at = |x: f64| -> Result<f64> { Ok(ib.apply(f, x, spec)?.value) };

    let regularize = s < 0.0;
    let f0 = if regularize {
        let k = ib.kernel();
        let g = |y: f64| k.at_origin(y).map(|v| v * f.eval(y)).unwrap_or(f64::NAN);
        integrate_finite_points(g, &with_inner(lo, hi, &f.breakpoints()), spec)?.value
    } else {
        0.0
    };

    // Head [0, a] with the x^{s−1+e0} behavior folded into the rule.
    let e0 = if regularize {
        1.0 - nu
    } else {
        near_zero_exponent(nu)
    };
    let p_exp = s - 1.0 + e0;
    // F − F(0) cancels to roundoff near 0, which x^{s−1} amplifies, so the
    // continued transform is only good to about 1e-7 there.
    let (floor, head_spec) = if regularize {
        (
            1e-24,
            QuadSpec {
                rel_tol: spec.rel_tol.max(1e-7),
                ..*spec
            },
        )
    } else {
        (1e-30, *spec)
    };
    let head = UnitRule::new(p_exp, 0.0)?
        .try_integrate(
            |t, _| {
                if regularize && t < floor {
                    return Ok(0.0);
                }
                // The rescaled integrand has settled by here; deeper nodes only strain the kernel.
                let t = t.max(floor);
                let x = a * t;
                Ok((value_at(x)? - f0) * t.powf(-e0))
            },
            &head_spec,
        )?
        .scale(a.powf(s));
    let head = if regularize {
        head + Estimate::new(f0 * a.powf(s) / s, 0.0)
    } else {
        head
    };

    // Body [a, hi]: IB f is smooth on (0, hi).
    let body = crate::quad::adaptive(
        &|x: f64| Ok(x.powf(s - 1.0) * value_at(x)?),
        &with_inner(a, hi, &f.breakpoints()),
        spec,
    )?;
    Ok(head + body)
}
