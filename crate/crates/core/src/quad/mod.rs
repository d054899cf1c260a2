//! Deterministic quadrature: adaptive Gauss–Kronrod on finite intervals, a
//! double-exponential rule for the unit interval with algebraic endpoint
//! singularities, and kernel integration against test functions with the
//! (y² − x²)^e endpoint factor removed by a change of variable.

mod gk;
mod kernel;
mod tanh_sinh;

pub(crate) use gk::adaptive;
pub use gk::{integrate_finite, integrate_finite_points};
pub use kernel::{integrate_kernel_against, SingularKernel};
pub use tanh_sinh::{integrate_unit_singular, UnitRule};

use crate::error::{Error, Result};

/// Tolerances and budget for one quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    /// Exponent of the algebraic factor at the lower endpoint, if known.
    pub singular_exponent: Option<f64>,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_panels: 4096,
            singular_exponent: None,
        }
    }
}

impl QuadSpec {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Self> {
        Self {
            rel_tol,
            abs_tol,
            ..Self::default()
        }
        .validated()
    }

    pub fn with_max_panels(mut self, max_panels: usize) -> Result<Self> {
        self.max_panels = max_panels;
        self.validated()
    }

    pub fn with_singular_exponent(mut self, exponent: f64) -> Result<Self> {
        self.singular_exponent = Some(exponent);
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_panels == 0 {
            return Err(Error::domain("max_panels must be at least 1"));
        }
        if let Some(e) = self.singular_exponent {
            if !(e > -1.0) {
                return Err(Error::domain(format!(
                    "singular exponent {e} is not integrable (must exceed -1)"
                )));
            }
        }
        Ok(self)
    }

    pub(crate) fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// A quadrature result with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_est: f64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate {
        value: 0.0,
        err_est: 0.0,
    };

    pub fn new(value: f64, err_est: f64) -> Self {
        Self { value, err_est }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err_est: self.err_est * factor.abs(),
        }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            err_est: self.err_est + rhs.err_est,
        }
    }
}

impl std::iter::Sum for Estimate {
    fn sum<I: Iterator<Item = Estimate>>(iter: I) -> Estimate {
        iter.fold(Estimate::ZERO, |acc, e| acc + e)
    }
}
