//! Log-gamma with sign tracking, and signed products/quotients of gamma values.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// True if `x` is 0, -1, -2, ...
pub fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) with the argument reduced first, so integers give exact zeros and
/// large |x| keeps its accuracy.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round(); // r in [-1, 1]
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

fn ln_gamma_lanczos(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

/// ln|Γ(x)| together with the sign of Γ(x).
///
/// Arguments below 1/2 go through the reflection Γ(x)Γ(1−x) = π / sin(πx).
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::domain(format!("gamma of non-finite argument {x}")));
    }
    if is_gamma_pole(x) {
        return Err(Error::Pole {
            arg: x,
            context: "ln_gamma_signed",
        });
    }
    if x >= 0.5 {
        return Ok((ln_gamma_lanczos(x), 1.0));
    }
    let s = sin_pi(x);
    let ln_mag = PI.ln() - s.abs().ln() - ln_gamma_lanczos(1.0 - x);
    Ok((ln_mag, s.signum()))
}

/// Γ(x) as a plain value. Overflows to ±∞ for large arguments.
pub fn gamma(x: f64) -> Result<f64> {
    let (l, s) = ln_gamma_signed(x)?;
    Ok(s * l.exp())
}

/// A product of gamma values divided by another product, Γ[num / den].
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRatio {
    numerator_args: Vec<f64>,
    denominator_args: Vec<f64>,
}

impl GammaRatio {
    pub fn new(numerator_args: Vec<f64>, denominator_args: Vec<f64>) -> Result<Self> {
        for &arg in numerator_args.iter().chain(denominator_args.iter()) {
            if !arg.is_finite() {
                return Err(Error::domain(format!("non-finite gamma argument {arg}")));
            }
            if is_gamma_pole(arg) {
                return Err(Error::Pole {
                    arg,
                    context: "GammaRatio",
                });
            }
        }
        Ok(Self {
            numerator_args,
            denominator_args,
        })
    }

    pub fn numerator_args(&self) -> &[f64] {
        &self.numerator_args
    }

    pub fn denominator_args(&self) -> &[f64] {
        &self.denominator_args
    }

    /// (ln|ratio|, sign).
    pub fn ln_abs_signed(&self) -> (f64, f64) {
        let mut ln = 0.0;
        let mut sign = 1.0;
        for &a in &self.numerator_args {
            let (l, s) = ln_gamma_signed(a).expect("validated at construction");
            ln += l;
            sign *= s;
        }
        for &a in &self.denominator_args {
            let (l, s) = ln_gamma_signed(a).expect("validated at construction");
            ln -= l;
            sign *= s;
        }
        (ln, sign)
    }

    pub fn eval(&self) -> f64 {
        let (ln, sign) = self.ln_abs_signed();
        sign * ln.exp()
    }
}

/// Γ[num / den] evaluated in log space.
pub fn gamma_ratio_eval(r: &GammaRatio) -> f64 {
    r.eval()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn identity_and_half_integer_cases() {
        let (l, s) = ln_gamma_signed(1.0).unwrap();
        assert!(l.abs() < 1e-15 && s == 1.0);

        let (l, s) = ln_gamma_signed(0.5).unwrap();
        assert!((l - PI.sqrt().ln()).abs() < 1e-15);
        assert_eq!(s, 1.0);

        let (l, s) = ln_gamma_signed(-0.5).unwrap();
        assert!((l - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        assert_eq!(s, -1.0);
    }

    #[test]
    fn poles_are_rejected() {
        for x in [0.0, -1.0, -7.0] {
            match ln_gamma_signed(x) {
                Err(Error::Pole { arg, .. }) => assert_eq!(arg, x),
                other => panic!("expected pole error, got {other:?}"),
            }
        }
        assert!(GammaRatio::new(vec![1.5], vec![-2.0]).is_err());
        assert!(ln_gamma_signed(f64::NAN).is_err());
    }

    #[test]
    fn factorials() {
        let mut fact = 1.0;
        for n in 1..20 {
            assert!(rel(gamma(n as f64).unwrap(), fact) < 1e-14, "n = {n}");
            fact *= n as f64;
        }
    }

    #[test]
    fn ratio_examples() {
        let r = GammaRatio::new(vec![2.0, 3.0], vec![4.0]).unwrap();
        assert!(rel(gamma_ratio_eval(&r), 1.0 / 3.0) < 1e-14);

        let r = GammaRatio::new(vec![-2.7], vec![-2.7]).unwrap();
        assert!((r.eval() - 1.0).abs() < 1e-15);

        // mpmath, 40 digits: Γ(5/4)/Γ(7/4) = 0.98622503972954629743694045...
        let r = GammaRatio::new(vec![1.25], vec![1.75]).unwrap();
        assert!(rel(r.eval(), 0.986_225_039_729_546_3) < 1e-14);
    }

    #[test]
    fn signs_alternate_between_poles() {
        for k in 1..6 {
            let x = -(k as f64) + 0.5;
            let (_, s) = ln_gamma_signed(x).unwrap();
            assert_eq!(s, if k % 2 == 1 { -1.0 } else { 1.0 }, "x = {x}");
        }
    }

    #[test]
    fn large_arguments_stay_finite_in_log_space() {
        // ln Γ(171.5) ≈ 709.6, just past f64 overflow of Γ itself.
        let (l, _) = ln_gamma_signed(200.0).unwrap();
        assert!(rel(l, 857.933_669_825_857_5) < 1e-13);
    }

    #[test]
    fn sin_pi_exact_zeros() {
        for k in -5..=5 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-2.5) + 1.0).abs() < 1e-16);
        assert!((sin_pi(1e6 + 0.25) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
}
