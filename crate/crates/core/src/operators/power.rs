use serde::Serialize;

use super::FracBesselIntegral;
use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::kernels::OperatorParams;
use crate::quad::{Estimate, QuadSpec};
use crate::specfun::GammaRatio;

/// IB^α x^m = coefficient · x^{2α+m}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerCoefficient {
    pub m: f64,
    pub params: OperatorParams,
    /// Set only when `valid`.
    pub coefficient: Option<f64>,
    /// The stated hypothesis m + 2α + ν < 1.
    pub hypothesis: bool,
    /// Whether the defining integral converges: m + 2α + max(ν, 1) < 1.
    pub valid: bool,
}

impl PowerCoefficient {
    pub fn exponent(&self) -> f64 {
        2.0 * self.params.alpha() + self.m
    }

    /// Why the closed form does not apply, if it does not.
    pub fn invalid_reason(&self) -> Option<String> {
        let (alpha, nu) = (self.params.alpha(), self.params.nu());
        if !self.hypothesis {
            Some(format!(
                "m+2α+ν<1 fails: m+2α+ν = {}",
                self.m + 2.0 * alpha + nu
            ))
        } else if !self.valid {
            Some(format!(
                "m+2α<0 fails (integral diverges at infinity): m+2α = {}",
                self.m + 2.0 * alpha
            ))
        } else {
            None
        }
    }
}

/// The coefficient 2^{−2α} Γ[−α−m/2, (1−ν)/2−α−m/2 / (1−ν−m)/2, −m/2].
pub fn power_closed_form(m: f64, p: &OperatorParams) -> Result<PowerCoefficient> {
    if !m.is_finite() {
        return Err(Error::domain(format!(
            "power exponent must be finite, got {m}"
        )));
    }
    let (alpha, nu) = (p.alpha(), p.nu());
    let hypothesis = m + 2.0 * alpha + nu < 1.0;
    let valid = hypothesis && m + 2.0 * alpha < 0.0;
    let coefficient = if valid {
        let ratio = GammaRatio::new(
            vec![-alpha - 0.5 * m, 0.5 * (1.0 - nu) - alpha - 0.5 * m],
            vec![0.5 * (1.0 - nu - m), -0.5 * m],
        )?;
        Some((-2.0 * alpha).exp2() * ratio.eval())
    } else {
        None
    };
    Ok(PowerCoefficient {
        m,
        params: *p,
        coefficient,
        hypothesis,
        valid,
    })
}

/// (IB^α y^m)(x) by direct quadrature over (x, ∞).
pub fn frac_bessel_integral_power(
    m: f64,
    p: &OperatorParams,
    x: f64,
    spec: &QuadSpec,
) -> Result<Estimate> {
    let pc = power_closed_form(m, p)?;
    if let Some(reason) = pc.invalid_reason() {
        return Err(Error::domain(reason));
    }
    FracBesselIntegral::new(*p)?.apply(&TestFunction::power(m), x, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma;

    fn p(alpha: f64, nu: f64) -> OperatorParams {
        OperatorParams::new(alpha, nu).unwrap()
    }

    #[test]
    fn quoted_coefficient() {
        let c = power_closed_form(-3.0, &p(0.25, 0.5)).unwrap();
        let want = 0.5f64.sqrt() * gamma(1.25).unwrap() / gamma(1.75).unwrap();
        assert!((c.coefficient.unwrap() - want).abs() < 1e-15);
        // mpmath quadrature of the kernel against y^{-3}
        assert!((c.coefficient.unwrap() - 0.697_366_413_368_734_4).abs() < 1e-15);
        assert_eq!(c.exponent(), -2.5);
    }

    #[test]
    fn liouville_reduction() {
        for &(m, a) in &[(-3.0, 0.25), (-2.5, 0.4), (-7.3, 1.6)] {
            let c = power_closed_form(m, &p(a, 0.0))
                .unwrap()
                .coefficient
                .unwrap();
            let want = gamma(-m - 2.0 * a).unwrap() / gamma(-m).unwrap();
            assert!(((c - want) / want).abs() < 1e-12, "{m} {a}");
        }
    }

    #[test]
    fn validity_flags() {
        let c = power_closed_form(-1.0, &p(0.5, 1.0)).unwrap();
        assert!(!c.hypothesis && !c.valid && c.coefficient.is_none());
        // Inside m + 2α + ν < 1 but the integral diverges at infinity.
        let c = power_closed_form(-0.5, &p(0.25, 0.0)).unwrap();
        assert!(c.hypothesis && !c.valid);
        assert!(c.invalid_reason().unwrap().contains("m+2α<0"));
        assert!(
            frac_bessel_integral_power(-0.5, &p(0.25, 0.0), 1.0, &QuadSpec::default()).is_err()
        );
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let pp = p(0.25, 0.5);
        let c = power_closed_form(-3.0, &pp).unwrap().coefficient.unwrap();
        let x: f64 = 1.3;
        let got = frac_bessel_integral_power(-3.0, &pp, x, &QuadSpec::default())
            .unwrap()
            .value;
        let want = c * x.powf(-2.5);
        assert!(((got - want) / want).abs() < 1e-8, "{got} vs {want}");
    }
}
