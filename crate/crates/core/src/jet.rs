//! Truncated Taylor expansions ("jets") for exact derivatives of the corpus
//! functions, and for applying B_ν to a derivative-carrying representation.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Taylor coefficients c_k = f^(k)(x₀) / k! for k = 0..=order.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { coeffs }
    }

    /// The identity function expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut j = Self::constant(x0, order);
        if order >= 1 {
            j.coeffs[1] = 1.0;
        }
        j
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(0.0, order)
    }

    /// Build from plain derivatives [f, f', f'', ...].
    pub fn from_derivatives(derivs: &[f64]) -> Self {
        assert!(!derivs.is_empty(), "a jet needs at least the value");
        let mut fact = 1.0;
        let coeffs = derivs
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if k > 0 {
                    fact *= k as f64;
                }
                d / fact
            })
            .collect();
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the value");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// f^(k)(x₀), or None past the jet's order.
    pub fn derivative(&self, k: usize) -> Option<f64> {
        let c = *self.coeffs.get(k)?;
        Some(c * (1..=k).map(|i| i as f64).product::<f64>())
    }

    pub fn derivatives(&self) -> Vec<f64> {
        (0..=self.order())
            .map(|k| self.derivative(k).unwrap())
            .collect()
    }

    /// Jet of f' (one order lower).
    pub fn differentiate(&self) -> Jet {
        if self.coeffs.len() == 1 {
            return Jet::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Jet { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = (order + 1).min(self.coeffs.len());
        Jet {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn recip(&self) -> Jet {
        let f = &self.coeffs;
        let n = f.len();
        let mut g = vec![0.0; n];
        g[0] = 1.0 / f[0];
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| f[j] * g[k - j]).sum();
            g[k] = -s * g[0];
        }
        Jet { coeffs: g }
    }

    pub fn exp(&self) -> Jet {
        let f = &self.coeffs;
        let n = f.len();
        let mut h = vec![0.0; n];
        h[0] = f[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * f[j] * h[k - j]).sum();
            h[k] = s / k as f64;
        }
        Jet { coeffs: h }
    }

    /// f^m for f(x₀) > 0.
    pub fn powf(&self, m: f64) -> Jet {
        let f = &self.coeffs;
        let n = f.len();
        let mut h = vec![0.0; n];
        h[0] = f[0].powf(m);
        for k in 1..n {
            let s: f64 = (1..=k)
                .map(|j| (m * j as f64 - (k - j) as f64) * f[j] * h[k - j])
                .sum();
            h[k] = s / (k as f64 * f[0]);
        }
        Jet { coeffs: h }
    }

    fn zip_with(&self, rhs: &Jet, op: impl Fn(f64, f64) -> f64) -> Jet {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Jet {
            coeffs: (0..n).map(|k| op(self.coeffs[k], rhs.coeffs[k])).collect(),
        }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        Jet { coeffs }
    }
}

impl Div for &Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Jet) -> Jet {
        self * &rhs.recip()
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet { (&self).$m(&rhs) }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

/// B_ν applied to a jet of g at x₀: g'' + (ν/x) g', two orders lower.
pub fn bessel_on_jet(g: &Jet, x0: f64, nu: f64) -> Option<Jet> {
    if g.order() < 2 {
        return None;
    }
    let d1 = g.differentiate();
    let d2 = d1.differentiate();
    let order = d2.order();
    let inv_x = Jet::variable(x0, order).recip();
    Some(&d2 + &(&inv_x * &d1.truncate(order)).scale(nu))
}
