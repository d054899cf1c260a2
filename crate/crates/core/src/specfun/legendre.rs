//! Associated Legendre function of the first kind P^μ_λ(x) for x ≥ 1.

use super::gamma::{is_gamma_pole, ln_gamma_signed};
use super::hyp2f1::hyp2f1_nonpos;
use crate::error::{Error, Result};

/// P^mu_lam(x) for x ≥ 1 (x = 1 only when mu ≤ 0).
pub fn legendre_p(mu: f64, lam: f64, x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::domain(format!(
            "legendre_p is defined here for x >= 1, got {x}"
        )));
    }
    legendre_p_excess(mu, lam, x - 1.0)
}

/// P^mu_lam(1 + xm1), taking the excess over 1 directly so callers can
/// supply it without cancellation.
pub fn legendre_p_excess(mu: f64, lam: f64, xm1: f64) -> Result<f64> {
    if !(xm1 >= 0.0) || !xm1.is_finite() {
        return Err(Error::domain(format!(
            "legendre_p needs x - 1 >= 0 and finite, got {xm1}"
        )));
    }
    if xm1 == 0.0 && mu > 0.0 {
        return Err(Error::domain(format!(
            "legendre_p at x = 1 is singular for order mu = {mu} > 0"
        )));
    }
    if is_gamma_pole(1.0 - mu) {
        return Err(Error::Pole {
            arg: 1.0 - mu,
            context: "legendre_p: Gamma(1 - mu)",
        });
    }
    let (lg, sg) = ln_gamma_signed(1.0 - mu)?;
    let power = if mu == 0.0 {
        1.0
    } else if xm1 == 0.0 {
        0.0
    } else {
        (0.5 * mu * ((2.0 + xm1) / xm1).ln()).exp()
    };
    let f = hyp2f1_nonpos(-lam, lam + 1.0, 1.0 - mu, -0.5 * xm1)?;
    Ok(sg * (-lg).exp() * power * f)
}
