use super::{bessel_apply_n, FracBesselIntegral};
use crate::error::{Error, Result};
use crate::function::TestFunction;
use crate::jet::{bessel_on_jet, Jet};
use crate::kernels::OperatorParams;
use crate::quad::{Estimate, QuadSpec};

/// Finite-difference weights (Fornberg): `w[k][j]` multiplies g(nodes[j]) in
/// the approximation of g^(k)(x0), for k = 0..=max_order.
pub fn fd_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] *= c4 / c3;
        }
        c1 = c2;
    }
    c
}

/// Central-stencil accuracy order for the k-th derivative on 2r+1 points.
fn stencil_order(r: usize, k: usize) -> i32 {
    (2 * r - 2 * ((k - 1) / 2)) as i32
}

/// DB^α_{ν,−} = B_ν^n IB^{n−α}_{ν,−} with n = ⌈α⌉.
///
/// For integer α the inner operator is the identity, and functions carrying
/// analytic derivatives get B_ν^n exactly. Otherwise the derivatives of
/// h = IB^{n−α} f come from central differences (7 points for n = 1, 9 for
/// n = 2) with one Richardson step.
#[derive(Debug)]
pub struct FracBesselDerivative {
    params: OperatorParams,
    n: usize,
    inner: Option<FracBesselIntegral>,
    radius: usize,
    unit_weights: Vec<Vec<f64>>,
}

impl FracBesselDerivative {
    pub fn new(params: OperatorParams) -> Result<Self> {
        let alpha = params.alpha();
        let n = alpha.ceil() as usize;
        if n > 2 {
            return Err(Error::Capability(format!(
                "fractional derivative implemented for alpha <= 2, got {alpha}"
            )));
        }
        let inner = if (n as f64 - alpha) > 0.0 {
            Some(FracBesselIntegral::new(
                params.with_alpha(n as f64 - alpha)?,
            )?)
        } else {
            None
        };
        let radius = n + 2;
        let offsets: Vec<f64> = (-(radius as i64)..=radius as i64)
            .map(|j| j as f64)
            .collect();
        Ok(Self {
            params,
            n,
            inner,
            radius,
            unit_weights: fd_weights(0.0, &offsets, 2 * n),
        })
    }

    pub fn params(&self) -> OperatorParams {
        self.params
    }

    /// The integer n = ⌈α⌉.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Finite-difference step at x.
    pub fn step(&self, x: f64) -> f64 {
        match self.n {
            1 => (1e-3 * x).max(1e-4),
            _ => (1e-2 * x).max(1e-3),
        }
    }

    pub fn apply(&self, f: &TestFunction, x: f64, spec: &QuadSpec) -> Result<Estimate> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("DB is evaluated at x > 0, got {x}")));
        }
        let nu = self.params.nu();
        if self.inner.is_none() && f.derivative_order() >= 2 * self.n {
            return Ok(Estimate::new(bessel_apply_n(f, x, nu, self.n)?, 0.0));
        }

        let delta = self.step(x);
        let r = self.radius as i64;
        if x - 2.0 * r as f64 * delta <= 0.0 {
            return Err(Error::domain(format!(
                "x = {x} is too close to 0 for the difference step {delta}"
            )));
        }
        let tight = QuadSpec {
            rel_tol: spec.rel_tol.min(1e-13),
            abs_tol: spec.abs_tol.min(1e-16),
            ..*spec
        };
        // Points x + jδ for |j| ≤ r and even |j| ≤ 2r.
        let offsets: Vec<i64> = (-2 * r..=2 * r)
            .filter(|j| j.abs() <= r || j % 2 == 0)
            .collect();
        let points: Vec<f64> = offsets.iter().map(|&j| x + j as f64 * delta).collect();
        let values: Vec<f64> = crate::par::map(&points, |&t| self.inner_value(f, t, &tight))
            .into_iter()
            .collect::<Result<_>>()?;
        let value_at = |j: i64| values[offsets.iter().position(|&o| o == j).unwrap()];

        let deriv = |k: usize, scale: i64| -> f64 {
            let s: f64 = (-r..=r)
                .map(|j| self.unit_weights[k][(j + r) as usize] * value_at(j * scale))
                .sum();
            s / (scale as f64 * delta).powi(k as i32)
        };
        let h0 = value_at(0);
        let mut fine = vec![h0];
        let mut extrapolated = vec![h0];
        for k in 1..=2 * self.n {
            let d1 = deriv(k, 1);
            let d2 = deriv(k, 2);
            let q = 2f64.powi(stencil_order(self.radius, k));
            fine.push(d1);
            extrapolated.push((q * d1 - d2) / (q - 1.0));
        }
        let apply_b = |derivs: &[f64]| -> f64 {
            let mut jet = Jet::from_derivatives(derivs);
            for _ in 0..self.n {
                jet = bessel_on_jet(&jet, x, nu).expect("jet order covers every application");
            }
            jet.value()
        };
        let value = apply_b(&extrapolated);
        Ok(Estimate::new(value, (value - apply_b(&fine)).abs()))
    }

    fn inner_value(&self, f: &TestFunction, x: f64, spec: &QuadSpec) -> Result<f64> {
        match &self.inner {
            Some(ib) => Ok(ib.apply(f, x, spec)?.value),
            None => Ok(f.eval(x)),
        }
    }
}

/// (DB^α_{ν,−} f)(x).
pub fn frac_bessel_derivative(
    f: &TestFunction,
    x: f64,
    p: &OperatorParams,
    spec: &QuadSpec,
) -> Result<Estimate> {
    FracBesselDerivative::new(*p)?.apply(f, x, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Decay, Support};

    #[test]
    fn fornberg_three_point() {
        let w = fd_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(w[1], vec![-0.5, 0.0, 0.5]);
        assert_eq!(w[2], vec![1.0, -2.0, 1.0]);
    }

    #[test]
    fn fornberg_exact_on_polynomials() {
        let nodes: Vec<f64> = (-4..=4).map(|j| j as f64).collect();
        let w = fd_weights(0.0, &nodes, 4);
        // d⁴/dx⁴ x⁶ at 0 is 0, of x⁴ is 24, d³ of x³ is 6
        let apply =
            |k: usize, p: i32| -> f64 { nodes.iter().zip(&w[k]).map(|(x, c)| c * x.powi(p)).sum() };
        assert!((apply(4, 4) - 24.0).abs() < 1e-10);
        assert!((apply(3, 3) - 6.0).abs() < 1e-10);
        assert!(apply(4, 6).abs() < 1e-9);
    }

    fn gaussian_no_jet() -> TestFunction {
        TestFunction::new(
            "gaussian",
            Support::Unbounded {
                lo: 0.0,
                decay: Decay::Gaussian { rate: 1.0 },
            },
            |x| (-x * x).exp(),
        )
    }

    #[test]
    fn integer_order_by_differences() {
        // No analytic derivatives: DB¹ falls back to differences of f itself.
        let p = OperatorParams::new(1.0, 1.5).unwrap();
        let x = 0.9;
        let got = frac_bessel_derivative(&gaussian_no_jet(), x, &p, &QuadSpec::default()).unwrap();
        let want = (4.0 * x * x - 2.0 - 2.0 * 1.5) * (-x * x).exp();
        assert!((got.value - want).abs() < 1e-8, "{got:?} vs {want}");

        let p = OperatorParams::new(2.0, 0.5).unwrap();
        let got = frac_bessel_derivative(&gaussian_no_jet(), x, &p, &QuadSpec::default()).unwrap();
        let with_jet = gaussian_no_jet().with_jet(4, |x, order| {
            let v = Jet::variable(x, order);
            (-(&v * &v)).exp()
        });
        let want = bessel_apply_n(&with_jet, x, 0.5, 2).unwrap();
        assert!((got.value - want).abs() < 1e-5, "{got:?} vs {want}");
    }

    #[test]
    fn too_close_to_origin() {
        let p = OperatorParams::new(0.5, 1.0).unwrap();
        assert!(
            frac_bessel_derivative(&gaussian_no_jet(), 5e-4, &p, &QuadSpec::default()).is_err()
        );
        assert!(FracBesselDerivative::new(OperatorParams::new(2.5, 1.0).unwrap()).is_err());
    }
}
