//! Adaptive piecewise Chebyshev interpolation of a pointwise-computed
//! function, so one operator can be applied to the output of another.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::function::{Support, TestFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    /// Polynomial degree per panel.
    pub degree: usize,
    /// Accept a panel when its last two coefficients are below this
    /// fraction of the largest sampled magnitude.
    pub rel_tol: f64,
    /// Panels narrower than this are accepted as they are.
    pub min_width: f64,
    pub max_panels: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            degree: 16,
            rel_tol: 1e-12,
            min_width: 1e-7,
            max_panels: 4000,
        }
    }
}

#[derive(Debug, Clone)]
struct ChebPanel {
    lo: f64,
    hi: f64,
    coeffs: Vec<f64>,
}

impl ChebPanel {
    fn eval(&self, x: f64) -> f64 {
        let t = (2.0 * x - self.lo - self.hi) / (self.hi - self.lo);
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + t * b1 - b2
    }

    fn tail(&self) -> f64 {
        let n = self.coeffs.len();
        self.coeffs[n - 1].abs().max(self.coeffs[n - 2].abs())
    }
}

/// Chebyshev–Lobatto nodes on [lo, hi], from hi down to lo.
fn nodes(lo: f64, hi: f64, degree: usize) -> Vec<f64> {
    (0..=degree)
        .map(|j| {
            let t = (PI * j as f64 / degree as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * t
        })
        .collect()
}

fn coefficients(values: &[f64]) -> Vec<f64> {
    let n = values.len() - 1;
    (0..=n)
        .map(|k| {
            let mut s = 0.0;
            for (j, v) in values.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                s += w * v * (PI * (j * k) as f64 / n as f64).cos();
            }
            let c = 2.0 * s / n as f64;
            if k == 0 || k == n {
                0.5 * c
            } else {
                c
            }
        })
        .collect()
}

/// A function on [lo, hi] held as piecewise Chebyshev interpolants.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    panels: Vec<ChebPanel>,
    max_tail: f64,
}

impl SampledFunction {
    /// Sample `g` on [lo, hi], bisecting panels (starting from the given
    /// breakpoints) until each interpolant's coefficients have decayed.
    pub fn build<G>(g: G, lo: f64, hi: f64, breakpoints: &[f64], spec: &SampleSpec) -> Result<Self>
    where
        G: Fn(f64) -> Result<f64> + Sync + Send,
    {
        if !(lo < hi) {
            return Err(Error::domain(format!(
                "sampling interval [{lo}, {hi}] is empty"
            )));
        }
        if spec.degree < 2 {
            return Err(Error::domain("sampling degree must be at least 2"));
        }
        let mut edges = vec![lo];
        edges.extend(breakpoints.iter().copied().filter(|&b| b > lo && b < hi));
        edges.push(hi);
        edges.sort_by(f64::total_cmp);
        edges.dedup();

        let mut pending: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
        let mut done: Vec<ChebPanel> = Vec::new();
        let mut scale: f64 = 0.0;
        let mut max_tail: f64 = 0.0;
        while !pending.is_empty() {
            if done.len() + pending.len() > spec.max_panels {
                return Err(Error::Accuracy {
                    message: format!("sampling needs more than {} panels", spec.max_panels),
                    value: f64::NAN,
                    err_est: max_tail,
                });
            }
            let built: Vec<Result<ChebPanel>> = crate::par::map(&pending, |&(a, b)| {
                let values: Vec<f64> = nodes(a, b, spec.degree)
                    .into_iter()
                    .map(&g)
                    .collect::<Result<_>>()?;
                Ok(ChebPanel {
                    lo: a,
                    hi: b,
                    coeffs: coefficients(&values),
                })
            });
            let built: Vec<ChebPanel> = built.into_iter().collect::<Result<_>>()?;
            for p in &built {
                let m = p.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                scale = scale.max(m);
            }
            pending.clear();
            for p in built {
                let tail = p.tail();
                if tail <= spec.rel_tol * scale || p.hi - p.lo <= spec.min_width {
                    max_tail = max_tail.max(tail);
                    done.push(p);
                } else {
                    let mid = 0.5 * (p.lo + p.hi);
                    pending.push((p.lo, mid));
                    pending.push((mid, p.hi));
                }
            }
        }
        done.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        Ok(Self {
            panels: done,
            max_tail,
        })
    }

    pub fn lo(&self) -> f64 {
        self.panels[0].lo
    }

    pub fn hi(&self) -> f64 {
        self.panels[self.panels.len() - 1].hi
    }

    pub fn panel_count(&self) -> usize {
        self.panels.len()
    }

    /// Largest trailing coefficient among accepted panels, a proxy for the
    /// interpolation error.
    pub fn max_tail(&self) -> f64 {
        self.max_tail
    }

    pub fn edges(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.panels.iter().map(|p| p.lo).collect();
        e.push(self.hi());
        e
    }

    /// Interpolated value, 0 outside [lo, hi].
    pub fn eval(&self, x: f64) -> f64 {
        if !(x >= self.lo() && x <= self.hi()) {
            return 0.0;
        }
        let i = self
            .panels
            .partition_point(|p| p.hi < x)
            .min(self.panels.len() - 1);
        self.panels[i].eval(x)
    }

    /// Wrap as a compactly supported test function with the panel edges as
    /// breakpoints.
    pub fn into_test_function(self, label: impl Into<String>) -> TestFunction {
        let support = Support::Compact {
            lo: self.lo(),
            hi: self.hi(),
        };
        let edges = self.edges();
        TestFunction::new(label, support, move |x| self.eval(x)).with_breakpoints(edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_smooth_function() {
        let s = SampledFunction::build(
            |x: f64| Ok(x.sin() * (-x).exp()),
            0.1,
            4.0,
            &[],
            &SampleSpec::default(),
        )
        .unwrap();
        for i in 0..200 {
            let x = 0.1 + 3.9 * i as f64 / 199.0;
            assert!((s.eval(x) - x.sin() * (-x).exp()).abs() < 1e-13, "x = {x}");
        }
        assert_eq!(s.eval(5.0), 0.0);
    }

    #[test]
    fn refines_toward_a_kink() {
        let s = SampledFunction::build(
            |x: f64| Ok((x - 1.0).abs().powf(2.5)),
            0.0,
            2.0,
            &[],
            &SampleSpec::default(),
        )
        .unwrap();
        assert!(s.panel_count() > 5);
        assert!((s.eval(1.3) - 0.3f64.powf(2.5)).abs() < 1e-10);
    }

    #[test]
    fn polynomial_is_one_panel() {
        let s = SampledFunction::build(
            |x: f64| Ok(x * x * x - x),
            -1.0,
            3.0,
            &[],
            &SampleSpec::default(),
        )
        .unwrap();
        assert_eq!(s.panel_count(), 1);
        assert!((s.eval(2.0) - 6.0).abs() < 1e-13);
        let f = s.into_test_function("cubic");
        assert_eq!(f.breakpoints(), vec![-1.0, 3.0]);
    }
}
