//! Tanh-sinh rule on (0, 1) for integrands t^p (1−t)^q g(t).
//!
//! The map t = 1 / (1 + exp(−π sinh u)) sends the real line onto (0, 1) and
//! makes algebraic endpoint factors decay double-exponentially in u. Nodes keep
//! both t and 1 − t in full precision so callers never form 1 − t themselves.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::{Estimate, QuadSpec};
use crate::error::{Error, Result};

const H0: f64 = 0.5;
const U_MAX: f64 = 6.0;
const MAX_LEVEL: usize = 9;
const MIN_LEVEL: usize = 3;

#[derive(Debug, Clone, Copy)]
struct Abscissa {
    t: f64,
    omt: f64,
    ln_t: f64,
    ln_omt: f64,
    ln_jac: f64,
}

fn abscissa(u: f64) -> Abscissa {
    let s = 0.5 * PI * u.sinh();
    let e = (-2.0 * s.abs()).exp();
    let l1p = e.ln_1p();
    let (near, far) = (e / (1.0 + e), 1.0 / (1.0 + e));
    let (ln_near, ln_far) = (-2.0 * s.abs() - l1p, -l1p);
    let ln_jac = (PI * u.cosh()).ln();
    if u >= 0.0 {
        Abscissa {
            t: far,
            omt: near,
            ln_t: ln_far,
            ln_omt: ln_near,
            ln_jac,
        }
    } else {
        Abscissa {
            t: near,
            omt: far,
            ln_t: ln_near,
            ln_omt: ln_far,
            ln_jac,
        }
    }
}

fn level_abscissae(level: usize) -> &'static [Abscissa] {
    static LEVELS: [OnceLock<Vec<Abscissa>>; MAX_LEVEL + 1] =
        [const { OnceLock::new() }; MAX_LEVEL + 1];
    LEVELS[level].get_or_init(|| {
        let mut out = Vec::new();
        if level == 0 {
            let k_max = (U_MAX / H0).floor() as i64;
            for k in -k_max..=k_max {
                out.push(abscissa(k as f64 * H0));
            }
        } else {
            let h = H0 / (1u64 << level) as f64;
            let j_max = ((U_MAX / h - 1.0) / 2.0).floor() as i64;
            for j in 0..=j_max {
                let u = (2 * j + 1) as f64 * h;
                out.push(abscissa(-u));
                out.push(abscissa(u));
            }
        }
        out
    })
}

#[derive(Debug, Clone, Copy)]
struct Node {
    t: f64,
    omt: f64,
    w: f64,
}

/// Tanh-sinh nodes and weights for fixed endpoint exponents, built lazily
/// level by level and reusable across integrands.
#[derive(Debug)]
pub struct UnitRule {
    p_exp: f64,
    q_exp: f64,
    levels: [OnceLock<Vec<Node>>; MAX_LEVEL + 1],
}

impl UnitRule {
    pub fn new(p_exp: f64, q_exp: f64) -> Result<Self> {
        if !(p_exp > -1.0 && q_exp > -1.0) {
            return Err(Error::domain(format!(
                "endpoint exponents must exceed -1, got p = {p_exp}, q = {q_exp}"
            )));
        }
        Ok(Self {
            p_exp,
            q_exp,
            levels: [const { OnceLock::new() }; MAX_LEVEL + 1],
        })
    }

    pub fn exponents(&self) -> (f64, f64) {
        (self.p_exp, self.q_exp)
    }

    fn nodes(&self, level: usize) -> &[Node] {
        self.levels[level].get_or_init(|| {
            level_abscissae(level)
                .iter()
                .filter_map(|a| {
                    let ln_w =
                        a.ln_jac + (self.p_exp + 1.0) * a.ln_t + (self.q_exp + 1.0) * a.ln_omt;
                    let w = ln_w.exp();
                    (w > 1e-300).then_some(Node {
                        t: a.t,
                        omt: a.omt,
                        w,
                    })
                })
                .collect()
        })
    }

    /// ∫₀¹ t^p (1−t)^q g(t) dt; `g` receives (t, 1 − t).
    pub fn integrate<G>(&self, g: G, spec: &QuadSpec) -> Result<Estimate>
    where
        G: Fn(f64, f64) -> f64,
    {
        self.try_integrate(|t, omt| Ok(g(t, omt)), spec)
    }

    pub(crate) fn try_integrate<G>(&self, g: G, spec: &QuadSpec) -> Result<Estimate>
    where
        G: Fn(f64, f64) -> Result<f64>,
    {
        let level_sum = |level: usize| -> Result<f64> {
            let mut s = 0.0;
            for n in self.nodes(level) {
                s += n.w * g(n.t, n.omt)?;
            }
            Ok(s)
        };
        let mut h = H0;
        let mut estimate = h * level_sum(0)?;
        let mut diff = f64::INFINITY;
        for level in 1..=MAX_LEVEL {
            h *= 0.5;
            let next = 0.5 * estimate + h * level_sum(level)?;
            diff = (next - estimate).abs();
            estimate = next;
            if !estimate.is_finite() {
                return Err(Error::domain("tanh-sinh integrand is not finite"));
            }
            if level >= MIN_LEVEL && diff <= spec.tolerance_for(estimate) {
                return Ok(Estimate::new(estimate, diff));
            }
        }
        Err(Error::Accuracy {
            message: format!("tanh-sinh did not converge in {MAX_LEVEL} levels"),
            value: estimate,
            err_est: diff,
        })
    }
}

/// ∫₀¹ t^p_exp (1−t)^q_exp g(t) dt by the double-exponential rule.
///
/// `g` receives both t and 1 − t. Accuracy degrades when an exponent comes
/// within about 0.06 of −1, because the truncated tails are no longer negligible.
pub fn integrate_unit_singular<G>(g: G, p_exp: f64, q_exp: f64, spec: &QuadSpec) -> Result<Estimate>
where
    G: Fn(f64, f64) -> f64,
{
    UnitRule::new(p_exp, q_exp)?.integrate(g, spec)
}
