//! Kernels K(x, y; α, ν) of the fractional Bessel integral,
//! (IB^α f)(x) = ∫_x^∞ K(x, y) f(y) dy, in hypergeometric, Legendre, α = 1 and
//! ν = 0 forms, plus the Liouville and Saigo kernels it reduces to.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::SingularKernel;
use crate::specfun::{gamma, hyp2f1_at_one, hyp2f1_nonpos, legendre_p_excess, GammaRatio, Hyp2f1};

/// Below this |ν − 1| the α = 1 kernel uses its logarithmic limit.
const ALPHA1_LOG_BAND: f64 = 1e-8;

/// The order α > 0 and singularity parameter ν ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorParams {
    alpha: f64,
    nu: f64,
    a: f64,
    b: f64,
    c: f64,
}

impl OperatorParams {
    pub fn new(alpha: f64, nu: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::domain(format!(
                "nu must be nonnegative and finite, got {nu}"
            )));
        }
        Ok(Self {
            alpha,
            nu,
            a: alpha + 0.5 * (nu - 1.0),
            b: alpha,
            c: 2.0 * alpha,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// (a, b, c) of the kernel's ₂F₁: (α + (ν−1)/2, α, 2α).
    pub fn hyp_params(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// Same ν, different order.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(alpha, self.nu)
    }
}

/// Which closed form evaluates the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum KernelRepr {
    #[default]
    Hypergeometric,
    Legendre,
}

fn check_pair(x: f64, y: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain(format!("kernel needs x > 0, got {x}")));
    }
    if !(y > x && y.is_finite()) {
        return Err(Error::domain(format!(
            "kernel needs y > x, got x = {x}, y = {y}"
        )));
    }
    Ok(())
}

/// The IB^α kernel in a chosen representation, with its ₂F₁ prepared once.
#[derive(Debug)]
pub struct BesselKernel {
    params: OperatorParams,
    repr: KernelRepr,
    hyp: Hyp2f1,
    inv_gamma_2a: f64,
}

impl BesselKernel {
    pub fn new(params: OperatorParams, repr: KernelRepr) -> Result<Self> {
        let (a, b, c) = params.hyp_params();
        Ok(Self {
            params,
            repr,
            hyp: Hyp2f1::new(a, b, c)?,
            inv_gamma_2a: 1.0 / gamma(c)?,
        })
    }

    pub fn params(&self) -> OperatorParams {
        self.params
    }

    pub fn repr(&self) -> KernelRepr {
        self.repr
    }

    /// K(x, y) for 0 < x < y.
    pub fn value(&self, x: f64, y: f64) -> Result<f64> {
        check_pair(x, y)?;
        match self.repr {
            KernelRepr::Hypergeometric => {
                let u = (y - x) * (y + x);
                let f = self.hyp_factor(x, y)?;
                Ok((u / (2.0 * y)).powf(self.params.c - 1.0) * f * self.inv_gamma_2a)
            }
            KernelRepr::Legendre => self.legendre_value(x, y),
        }
    }

    fn hyp_factor(&self, x: f64, y: f64) -> Result<f64> {
        let r = x / y;
        let z = (y - x) * (y + x) / (y * y);
        self.hyp.eval_split(z, r * r)
    }

    fn legendre_value(&self, x: f64, y: f64) -> Result<f64> {
        let OperatorParams { alpha, nu, .. } = self.params;
        let u = (y - x) * (y + x);
        let xm1 = (y - x) * (y - x) / (2.0 * x * y);
        let p = legendre_p_excess(0.5 - alpha, 0.5 * nu - 1.0, xm1)?;
        let c = GammaRatio::new(vec![alpha + 0.5], vec![2.0 * alpha])?.eval();
        Ok(c * u.powf(alpha - 0.5) * (y / x).powf(0.5 * nu) * p)
    }

    /// lim_{x→0⁺} K(x, y); finite only for ν < 1.
    pub fn at_origin(&self, y: f64) -> Result<f64> {
        let (a, b, c) = self.params.hyp_params();
        if !(y > 0.0) {
            return Err(Error::domain(format!(
                "kernel at the origin needs y > 0, got {y}"
            )));
        }
        let f1 = hyp2f1_at_one(a, b, c)?;
        Ok((0.5 * y).powf(c - 1.0) * f1 * self.inv_gamma_2a)
    }
}

impl SingularKernel for BesselKernel {
    fn exponent(&self) -> f64 {
        self.params.c - 1.0
    }

    fn regular(&self, x: f64, y: f64) -> Result<f64> {
        let e = self.params.c - 1.0;
        match self.repr {
            KernelRepr::Hypergeometric => {
                Ok((2.0 * y).powf(-e) * self.hyp_factor(x, y)? * self.inv_gamma_2a)
            }
            KernelRepr::Legendre => {
                // The Legendre form with ((X+1)/(X−1))^{μ/2} combined into the
                // algebraic prefactor, leaving the ₂F₁ inside P.
                let OperatorParams { alpha, nu, .. } = self.params;
                let lam = 0.5 * nu - 1.0;
                let w = -(y - x) * (y - x) / (4.0 * x * y);
                let f = hyp2f1_nonpos(-lam, lam + 1.0, 0.5 + alpha, w)?;
                Ok((y + x).powf(-e) * (y / x).powf(0.5 * nu) * f * self.inv_gamma_2a)
            }
        }
    }

    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        self.value(x, y)
    }
}

/// (1/Γ(2α))·((y²−x²)/(2y))^{2α−1}·₂F₁(α+(ν−1)/2, α; 2α; 1−x²/y²).
pub fn kernel_hyp(x: f64, y: f64, p: &OperatorParams) -> Result<f64> {
    BesselKernel::new(*p, KernelRepr::Hypergeometric)?.value(x, y)
}

/// (Γ(α+½)/Γ(2α))·(y²−x²)^{α−½}·(y/x)^{ν/2}·P^{½−α}_{ν/2−1}((x/y + y/x)/2).
pub fn kernel_legendre(x: f64, y: f64, p: &OperatorParams) -> Result<f64> {
    BesselKernel::new(*p, KernelRepr::Legendre)?.value(x, y)
}

/// The α = 1 kernel y((x/y)^{1−ν} − 1)/(ν − 1), with limit y ln(y/x) at ν = 1.
pub fn kernel_alpha1(x: f64, y: f64, nu: f64) -> Result<f64> {
    check_pair(x, y)?;
    if !(nu >= 0.0) {
        return Err(Error::domain(format!("nu must be nonnegative, got {nu}")));
    }
    let d = nu - 1.0;
    let ln_ratio = (y / x).ln();
    if d.abs() < ALPHA1_LOG_BAND {
        return Ok(y * ln_ratio);
    }
    // (x/y)^{−d} − 1 = expm1(d ln(y/x)), free of cancellation for small d.
    Ok(y * (d * ln_ratio).exp_m1() / d)
}

/// The ν = 0 kernel (y − x)^{2α−1}/Γ(2α).
pub fn kernel_nu0(x: f64, y: f64, alpha: f64) -> Result<f64> {
    check_pair(x, y)?;
    if !(alpha > 0.0) {
        return Err(Error::domain(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    Ok((y - x).powf(2.0 * alpha - 1.0) / gamma(2.0 * alpha)?)
}

/// Liouville kernel (y − x)^{μ−1}/Γ(μ), written as (y²−x²)^{μ−1}(y+x)^{1−μ}/Γ(μ).
#[derive(Debug, Clone, Copy)]
pub struct LiouvilleKernel {
    mu: f64,
    inv_gamma: f64,
}

impl LiouvilleKernel {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!(
                "Liouville order must be positive, got {mu}"
            )));
        }
        Ok(Self {
            mu,
            inv_gamma: 1.0 / gamma(mu)?,
        })
    }
}

impl SingularKernel for LiouvilleKernel {
    fn exponent(&self) -> f64 {
        self.mu - 1.0
    }

    fn regular(&self, x: f64, y: f64) -> Result<f64> {
        Ok((y + x).powf(1.0 - self.mu) * self.inv_gamma)
    }

    fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok((y - x).powf(self.mu - 1.0) * self.inv_gamma)
    }
}

/// Saigo kernel (t−X)^{γ−1} t^{−γ−β} ₂F₁(γ+β, −η; γ; 1−X/t)/Γ(γ), expressed in
/// s = √t and x = √X together with the Jacobian dt = 2s ds:
/// (s²−x²)^{γ−1} · 2 s^{1−2γ−2β} ₂F₁(…; 1−x²/s²)/Γ(γ).
#[derive(Debug)]
pub struct SaigoKernel {
    gamma_: f64,
    beta: f64,
    hyp: Hyp2f1,
    inv_gamma: f64,
}

impl SaigoKernel {
    pub fn new(gamma_: f64, beta: f64, eta: f64) -> Result<Self> {
        if !(gamma_ > 0.0 && gamma_.is_finite()) {
            return Err(Error::domain(format!(
                "Saigo order gamma must be positive, got {gamma_}"
            )));
        }
        if !(beta.is_finite() && eta.is_finite()) {
            return Err(Error::domain("Saigo parameters must be finite"));
        }
        Ok(Self {
            gamma_,
            beta,
            hyp: Hyp2f1::new(gamma_ + beta, -eta, gamma_)?,
            inv_gamma: 1.0 / gamma(gamma_)?,
        })
    }
}

impl SingularKernel for SaigoKernel {
    fn exponent(&self) -> f64 {
        self.gamma_ - 1.0
    }

    fn regular(&self, x: f64, s: f64) -> Result<f64> {
        let r = x / s;
        let z = (s - x) * (s + x) / (s * s);
        let f = self.hyp.eval_split(z, r * r)?;
        Ok(2.0 * s.powf(1.0 - 2.0 * (self.gamma_ + self.beta)) * f * self.inv_gamma)
    }
}
