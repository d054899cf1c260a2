//! The fractional Bessel integral and derivative, the Liouville and Saigo
//! operators they reduce to, B_ν itself and the power-function closed form.

mod derivative;
mod power;
mod sampled;

pub use derivative::{fd_weights, frac_bessel_derivative, FracBesselDerivative};
pub use power::{frac_bessel_integral_power, power_closed_form, PowerCoefficient};
pub use sampled::{SampleSpec, SampledFunction};

pub use crate::function::{Decay, Support, TestFunction};

use crate::error::{Error, Result};
use crate::jet::bessel_on_jet;
use crate::kernels::{BesselKernel, KernelRepr, LiouvilleKernel, OperatorParams, SaigoKernel};
use crate::quad::{integrate_kernel_against, Estimate, QuadSpec};

/// IB^α_{ν,−} with its kernel prepared once, for evaluation at many points.
#[derive(Debug)]
pub struct FracBesselIntegral {
    kernel: BesselKernel,
}

impl FracBesselIntegral {
    pub fn new(params: OperatorParams) -> Result<Self> {
        Self::with_repr(params, KernelRepr::Hypergeometric)
    }

    pub fn with_repr(params: OperatorParams, repr: KernelRepr) -> Result<Self> {
        Ok(Self {
            kernel: BesselKernel::new(params, repr)?,
        })
    }

    pub fn params(&self) -> OperatorParams {
        self.kernel.params()
    }

    pub fn kernel(&self) -> &BesselKernel {
        &self.kernel
    }

    pub fn apply(&self, f: &TestFunction, x: f64, spec: &QuadSpec) -> Result<Estimate> {
        integrate_kernel_against(f, x, &self.kernel, spec)
    }

    /// Values at each point of `xs`, in order.
    pub fn apply_many(
        &self,
        f: &TestFunction,
        xs: &[f64],
        spec: &QuadSpec,
    ) -> Result<Vec<Estimate>> {
        crate::par::map(xs, |&x| self.apply(f, x, spec))
            .into_iter()
            .collect()
    }
}

/// (IB^α_{ν,−} f)(x) with the hypergeometric kernel.
pub fn frac_bessel_integral(
    f: &TestFunction,
    x: f64,
    p: &OperatorParams,
    spec: &QuadSpec,
) -> Result<Estimate> {
    FracBesselIntegral::new(*p)?.apply(f, x, spec)
}

/// (IB^α_{ν,−} f)(x) with a chosen kernel representation.
pub fn frac_bessel_integral_repr(
    f: &TestFunction,
    x: f64,
    p: &OperatorParams,
    repr: KernelRepr,
    spec: &QuadSpec,
) -> Result<Estimate> {
    FracBesselIntegral::with_repr(*p, repr)?.apply(f, x, spec)
}

/// (1/Γ(μ)) ∫_x^∞ (y − x)^{μ−1} f(y) dy.
pub fn liouville_integral(f: &TestFunction, x: f64, mu: f64, spec: &QuadSpec) -> Result<Estimate> {
    integrate_kernel_against(f, x, &LiouvilleKernel::new(mu)?, spec)
}

/// Saigo operator (1/Γ(γ)) ∫_x^∞ (t−x)^{γ−1} t^{−γ−β} ₂F₁(γ+β, −η; γ; 1−x/t) f(t) dt.
///
/// `f` is a function of t. The integral is evaluated in s = √t, where the
/// (t − x)^{γ−1} factor becomes (s² − x)^{γ−1}.
pub fn saigo_integral(
    f: &TestFunction,
    x: f64,
    gamma_: f64,
    beta: f64,
    eta: f64,
    spec: &QuadSpec,
) -> Result<Estimate> {
    if !(x > 0.0) {
        return Err(Error::domain(format!(
            "Saigo integral needs x > 0, got {x}"
        )));
    }
    let kernel = SaigoKernel::new(gamma_, beta, eta)?;
    let g = f.clone();
    let in_s = TestFunction::new(
        format!("{}(s^2)", f.label()),
        sqrt_support(f.support()),
        move |s| g.eval(s * s),
    )
    .with_breakpoints(f.breakpoints().iter().map(|b| b.sqrt()).collect());
    integrate_kernel_against(&in_s, x.sqrt(), &kernel, spec)
}

fn sqrt_support(s: Support) -> Support {
    match s {
        Support::Compact { lo, hi } => Support::Compact {
            lo: lo.sqrt(),
            hi: hi.sqrt(),
        },
        Support::Unbounded { lo, decay } => Support::Unbounded {
            lo: lo.sqrt(),
            decay,
        },
    }
}

/// 2^{−2α} J^{2α, (ν−1)/2−α, −α} applied to t ↦ t^{(ν−1)/2} f(√t), at x².
pub fn saigo_reduction(
    f: &TestFunction,
    x: f64,
    p: &OperatorParams,
    spec: &QuadSpec,
) -> Result<Estimate> {
    let (alpha, nu) = (p.alpha(), p.nu());
    let g = f.clone();
    let weighted = TestFunction::new(
        format!("t^((nu-1)/2) {}(sqrt t)", f.label()),
        square_support(f.support()),
        move |t| t.powf(0.5 * (nu - 1.0)) * g.eval(t.sqrt()),
    )
    .with_breakpoints(f.breakpoints().iter().map(|b| b * b).collect());
    let est = saigo_integral(
        &weighted,
        x * x,
        2.0 * alpha,
        0.5 * (nu - 1.0) - alpha,
        -alpha,
        spec,
    )?;
    Ok(est.scale((-2.0 * alpha).exp2()))
}

fn square_support(s: Support) -> Support {
    match s {
        Support::Compact { lo, hi } => Support::Compact {
            lo: lo * lo,
            hi: hi * hi,
        },
        Support::Unbounded { lo, decay } => Support::Unbounded { lo: lo * lo, decay },
    }
}

/// (B_ν g)(x) = g''(x) + (ν/x) g'(x) from the analytic derivatives of g.
pub fn bessel_apply(g: &TestFunction, x: f64, nu: f64) -> Result<f64> {
    bessel_apply_n(g, x, nu, 1)
}

/// (B_ν^n g)(x), applying B_ν to the Taylor jet of g n times.
pub fn bessel_apply_n(g: &TestFunction, x: f64, nu: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("bessel_apply_n needs n >= 1"));
    }
    if !(x > 0.0) {
        return Err(Error::domain(format!("B_nu is applied at x > 0, got {x}")));
    }
    let mut jet = g.jet(x, 2 * n)?;
    for _ in 0..n {
        jet = bessel_on_jet(&jet, x, nu).expect("jet order covers every application");
    }
    Ok(jet.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    fn gaussian() -> TestFunction {
        TestFunction::new(
            "gaussian",
            Support::Unbounded {
                lo: 0.0,
                decay: Decay::Gaussian { rate: 1.0 },
            },
            |x| (-x * x).exp(),
        )
        .with_jet(4, |x, order| {
            let v = Jet::variable(x, order);
            (-(&v * &v)).exp()
        })
    }

    fn indicator(lo: f64, hi: f64) -> TestFunction {
        TestFunction::new("indicator", Support::Compact { lo, hi }, |_| 1.0)
    }

    #[test]
    fn bessel_of_gaussian() {
        let g = gaussian();
        for &(x, nu) in &[(0.3f64, 0.0f64), (1.0, 1.0), (1.7, 2.5)] {
            let want = (4.0 * x * x - 2.0 - 2.0 * nu) * (-x * x).exp();
            assert!((bessel_apply(&g, x, nu).unwrap() - want).abs() < 1e-15);
        }
        assert!(bessel_apply(&g, 1.0, 1.0).unwrap().abs() < 1e-15);
        assert!(bessel_apply(&indicator(1.0, 2.0), 1.5, 1.0).is_err());
    }

    #[test]
    fn liouville_of_indicator() {
        let spec = QuadSpec::default();
        let f = indicator(2.0, 3.0);
        assert!((liouville_integral(&f, 1.0, 1.0, &spec).unwrap().value - 1.0).abs() < 1e-13);
        let (x, mu) = (0.5f64, 0.7f64);
        let want =
            ((3.0 - x).powf(mu) - (2.0 - x).powf(mu)) / crate::specfun::gamma(mu + 1.0).unwrap();
        let got = liouville_integral(&f, x, mu, &spec).unwrap().value;
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
    }

    #[test]
    fn beyond_support_is_zero() {
        let p = OperatorParams::new(0.7, 1.3).unwrap();
        let est =
            frac_bessel_integral(&indicator(1.0, 2.0), 2.5, &p, &QuadSpec::default()).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn saigo_with_terminating_top_parameter_is_liouville() {
        let spec = QuadSpec::default();
        let f = indicator(2.0, 3.0);
        let (x, g) = (1.2, 0.8);
        let s = saigo_integral(&f, x, g, -g, 0.3, &spec).unwrap().value;
        let l = liouville_integral(&f, x, g, &spec).unwrap().value;
        assert!((s - l).abs() < 1e-11 * l.abs(), "{s} vs {l}");
    }
}
