//! Test functions on the semiaxis: pointwise values, support information and
//! optional analytic derivatives carried as Taylor jets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;

/// How a function with unbounded support falls off as y → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// |f(y)| ≲ exp(−rate·y²) or faster.
    Gaussian { rate: f64 },
    /// |f(y)| ≲ y^exponent.
    Power { exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// f vanishes outside [lo, hi].
    Compact { lo: f64, hi: f64 },
    /// f vanishes below lo and decays at infinity.
    Unbounded { lo: f64, decay: Decay },
}

impl Support {
    pub fn lo(&self) -> f64 {
        match *self {
            Support::Compact { lo, .. } | Support::Unbounded { lo, .. } => lo,
        }
    }

    /// Upper end, +∞ for unbounded support.
    pub fn hi(&self) -> f64 {
        match *self {
            Support::Compact { hi, .. } => hi,
            Support::Unbounded { .. } => f64::INFINITY,
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, Support::Compact { .. })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo() && x <= self.hi()
    }
}

type EvalFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type JetFn = Arc<dyn Fn(f64, usize) -> Jet + Send + Sync>;

/// A real function on (0, ∞) with declared support.
#[derive(Clone)]
pub struct TestFunction {
    label: String,
    support: Support,
    breakpoints: Vec<f64>,
    eval: EvalFn,
    jet: Option<(usize, JetFn)>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("support", &self.support)
            .field("breakpoints", &self.breakpoints)
            .field("derivative_order", &self.derivative_order())
            .finish()
    }
}

impl TestFunction {
    pub fn new<F>(label: impl Into<String>, support: Support, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            support,
            breakpoints: Vec::new(),
            eval: Arc::new(eval),
            jet: None,
        }
    }

    /// Attach analytic derivatives: `jet(x, order)` must return the Taylor
    /// jet at x for any order up to `max_order`.
    pub fn with_jet<J>(mut self, max_order: usize, jet: J) -> Self
    where
        J: Fn(f64, usize) -> Jet + Send + Sync + 'static,
    {
        self.jet = Some((max_order, Arc::new(jet)));
        self
    }

    /// Points where the function changes character (support edges, ramps).
    pub fn with_breakpoints(mut self, mut points: Vec<f64>) -> Self {
        points.sort_by(f64::total_cmp);
        points.dedup();
        self.breakpoints = points;
        self
    }

    /// y ↦ y^m on (0, ∞), with derivatives to order 4.
    pub fn power(m: f64) -> Self {
        TestFunction::new(
            format!("power({m})"),
            Support::Unbounded {
                lo: 0.0,
                decay: Decay::Power { exponent: m },
            },
            move |y| y.powf(m),
        )
        .with_jet(4, move |y, order| Jet::variable(y, order).powf(m))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// Breakpoints including the support edges.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = self.breakpoints.clone();
        pts.push(self.support.lo());
        if let Support::Compact { hi, .. } = self.support {
            pts.push(hi);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.support.contains(x) {
            (self.eval)(x)
        } else {
            0.0
        }
    }

    /// Highest available analytic derivative (0 when none).
    pub fn derivative_order(&self) -> usize {
        self.jet.as_ref().map_or(0, |(n, _)| *n)
    }

    pub fn jet(&self, x: f64, order: usize) -> Result<Jet> {
        let Some((max, jet)) = &self.jet else {
            return Err(Error::Capability(format!(
                "'{}' carries no analytic derivatives",
                self.label
            )));
        };
        if order > *max {
            return Err(Error::Capability(format!(
                "'{}' has derivatives up to order {max}, {order} requested",
                self.label
            )));
        }
        if !self.support.contains(x) {
            return Ok(Jet::zero(order));
        }
        Ok(jet(x, order))
    }

    /// [f(x), f'(x), ..., f^(order)(x)].
    pub fn derivatives(&self, x: f64, order: usize) -> Result<Vec<f64>> {
        Ok(self.jet(x, order)?.derivatives())
    }

    /// x ↦ f(λx).
    pub fn dilate(&self, lambda: f64) -> Result<TestFunction> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "dilation factor must be positive, got {lambda}"
            )));
        }
        let support = match self.support {
            Support::Compact { lo, hi } => Support::Compact {
                lo: lo / lambda,
                hi: hi / lambda,
            },
            Support::Unbounded { lo, decay } => Support::Unbounded {
                lo: lo / lambda,
                decay,
            },
        };
        let inner = self.eval.clone();
        let mut out = TestFunction::new(format!("{}(x*{lambda})", self.label), support, move |x| {
            inner(lambda * x)
        })
        .with_breakpoints(self.breakpoints.iter().map(|b| b / lambda).collect());
        if let Some((max, jet)) = &self.jet {
            let jet = jet.clone();
            out = out.with_jet(*max, move |x, order| {
                let j = jet(lambda * x, order);
                let mut s = 1.0;
                let coeffs: Vec<f64> = j
                    .coeffs()
                    .iter()
                    .map(|c| {
                        let v = c * s;
                        s *= lambda;
                        v
                    })
                    .collect();
                Jet::from_coeffs(coeffs)
            });
        }
        Ok(out)
    }

    /// Largest relative mismatch between each analytic derivative and a
    /// central difference of its predecessor, over `samples` interior points.
    pub fn derivative_consistency(&self, samples: usize) -> Result<f64> {
        let order = self.derivative_order();
        if order == 0 {
            return Err(Error::Capability(format!(
                "'{}' carries no analytic derivatives",
                self.label
            )));
        }
        let (lo, hi) = match self.support {
            Support::Compact { lo, hi } => (lo, hi),
            Support::Unbounded { lo, .. } => (lo.max(0.1), lo.max(0.1) + 3.0),
        };
        let mut worst: f64 = 0.0;
        for i in 0..samples {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / samples as f64;
            let h = 1e-4 * (hi - lo);
            let at = |t: f64| self.derivatives(t, order);
            let (dm2, dm1, d0, dp1, dp2) = (
                at(x - 2.0 * h)?,
                at(x - h)?,
                at(x)?,
                at(x + h)?,
                at(x + 2.0 * h)?,
            );
            let scale = d0.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
            for k in 1..=order {
                let fd =
                    (dm2[k - 1] - 8.0 * dm1[k - 1] + 8.0 * dp1[k - 1] - dp2[k - 1]) / (12.0 * h);
                let err = (fd - d0[k]).abs() / d0[k].abs().max(1e-3 * scale);
                worst = worst.max(err);
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> TestFunction {
        TestFunction::new("square", Support::Compact { lo: 1.0, hi: 2.0 }, |x| x * x).with_jet(
            4,
            |x, order| {
                let v = Jet::variable(x, order);
                &v * &v
            },
        )
    }

    #[test]
    fn zero_outside_support() {
        let f = square();
        assert_eq!(f.eval(0.5), 0.0);
        assert_eq!(f.eval(2.5), 0.0);
        assert_eq!(f.eval(1.5), 2.25);
        assert_eq!(f.jet(3.0, 2).unwrap().value(), 0.0);
    }

    #[test]
    fn capability_errors() {
        let f = TestFunction::new("id", Support::Compact { lo: 1.0, hi: 2.0 }, |x| x);
        assert!(matches!(f.jet(1.5, 1), Err(Error::Capability(_))));
        assert!(matches!(square().jet(1.5, 5), Err(Error::Capability(_))));
    }

    #[test]
    fn dilation_scales_support_and_derivatives() {
        let g = square().dilate(2.0).unwrap();
        assert_eq!(g.support(), Support::Compact { lo: 0.5, hi: 1.0 });
        assert_eq!(g.eval(0.75), 2.25);
        // d/dx (2x)² = 8x
        assert!((g.derivatives(0.75, 1).unwrap()[1] - 6.0).abs() < 1e-14);
    }

    #[test]
    fn finite_difference_consistency() {
        assert!(square().derivative_consistency(10).unwrap() < 1e-6);
    }
}
