//! Gauss hypergeometric function ₂F₁(a, b; c; z) for real parameters and
//! z < 1.
//!
//! On [0, 1) the Gauss series is used up to z = 1/2 and the Euler integral
//! above it. Past z = 0.9 the z → 1 − z connection formula takes over unless
//! c − a − b is close to an integer. On (−∞, 0] a Pfaff transformation maps
//! the argument into [0, 1) first.

use std::sync::OnceLock;

use super::gamma::{is_gamma_pole, GammaRatio};
use crate::error::{Error, Result};
use crate::quad::{QuadSpec, UnitRule};

/// Gauss series stops once a term drops below this fraction of the partial sum.
pub const SERIES_REL_STOP: f64 = 1e-17;
pub const SERIES_MAX_TERMS: usize = 5000;
/// Series below, Euler integral above.
pub const EULER_CROSSOVER: f64 = 0.5;
/// Above this z the connection formula replaces the Euler integral.
pub const CONNECTION_START: f64 = 0.9;
/// The connection formula is used only when c − a − b is at least this far
/// from an integer; closer, its two terms cancel.
const CONNECTION_GAP: f64 = 0.05;
/// Beyond this transformed argument the Pfaff variant is chosen by tail decay.
const PFAFF_SWITCH: f64 = 0.9;

fn euler_spec() -> QuadSpec {
    QuadSpec {
        rel_tol: 1e-14,
        abs_tol: 1e-300,
        ..QuadSpec::default()
    }
}

fn terminates(a: f64, b: f64) -> bool {
    is_gamma_pole(a) || is_gamma_pole(b)
}

/// Σ (a)_n (b)_n / ((c)_n n!) zⁿ with the term-ratio stopping rule.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_gamma_pole(c) {
        return Err(Error::domain(format!(
            "2F1 lower parameter c = {c} is a nonpositive integer"
        )));
    }
    if !(z.abs() < 1.0) && !terminates(a, b) {
        return Err(Error::domain(format!(
            "Gauss series needs |z| < 1, got z = {z}"
        )));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small_run = 0;
    for n in 0..SERIES_MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= SERIES_REL_STOP * sum.abs() {
            small_run += 1;
            if small_run == 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Accuracy {
        message: format!(
            "2F1({a}, {b}; {c}; {z}) series did not converge in {SERIES_MAX_TERMS} terms"
        ),
        value: sum,
        err_est: term.abs(),
    })
}

struct EulerPlan {
    /// Exponent in (1 − z t)^(−power).
    power: f64,
    prefactor: f64,
    rule: UnitRule,
}

impl EulerPlan {
    fn new(a: f64, b: f64, c: f64) -> Option<Self> {
        // Either upper parameter can sit in t^(e−1)(1−t)^(c−e−1).
        let (e, power) = if c > b && b > 0.0 {
            (b, a)
        } else if c > a && a > 0.0 {
            (a, b)
        } else {
            return None;
        };
        let prefactor = GammaRatio::new(vec![c], vec![e, c - e]).ok()?.eval();
        let rule = UnitRule::new(e - 1.0, c - e - 1.0).ok()?;
        Some(Self {
            power,
            prefactor,
            rule,
        })
    }

    fn eval(&self, z: f64, omz: f64) -> Result<f64> {
        let p = self.power;
        let est = self
            .rule
            .integrate(|_, omt| (omz + z * omt).powf(-p), &euler_spec())?;
        Ok(self.prefactor * est.value)
    }
}

/// ₂F₁ with fixed parameters, reusable across many arguments.
///
/// The Euler quadrature rule for the given (a, b, c) is built on first use
/// above the crossover and cached.
pub struct Hyp2f1 {
    a: f64,
    b: f64,
    c: f64,
    euler: OnceLock<Option<EulerPlan>>,
}

impl std::fmt::Debug for Hyp2f1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hyp2f1")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("c", &self.c)
            .finish()
    }
}

impl Hyp2f1 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::domain("2F1 parameters must be finite"));
        }
        if !(c > 0.0) {
            return Err(Error::domain(format!("2F1 requires c > 0, got c = {c}")));
        }
        Ok(Self {
            a,
            b,
            c,
            euler: OnceLock::new(),
        })
    }

    pub fn params(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        self.eval_split(z, 1.0 - z)
    }

    /// Like [`Hyp2f1::eval`] with 1 − z supplied by the caller, which keeps
    /// full relative accuracy when z is close to 1.
    pub fn eval_split(&self, z: f64, omz: f64) -> Result<f64> {
        let (a, b, c) = (self.a, self.b, self.c);
        if z.is_nan() {
            return Err(Error::domain("2F1 argument is NaN"));
        }
        if z > 1.0 || !(omz > 0.0) {
            return Err(Error::domain(format!("2F1 argument must be < 1, got {z}")));
        }
        if z < 0.0 {
            return hyp2f1_nonpos(a, b, c, z);
        }
        if z <= EULER_CROSSOVER || terminates(a, b) {
            return hyp2f1_series(a, b, c, z);
        }
        let d = c - a - b;
        if z > CONNECTION_START && (d - d.round()).abs() >= CONNECTION_GAP {
            return connection(a, b, c, omz);
        }
        self.euler_split(z, omz)
    }

    /// The Euler-integral route alone, for any z < 1.
    pub fn eval_euler(&self, z: f64) -> Result<f64> {
        if !(z < 1.0 && z.is_finite()) {
            return Err(Error::domain(format!(
                "Euler representation evaluated for finite z < 1, got {z}"
            )));
        }
        self.euler_split(z, 1.0 - z)
    }

    fn euler_split(&self, z: f64, omz: f64) -> Result<f64> {
        let plan = self
            .euler
            .get_or_init(|| EulerPlan::new(self.a, self.b, self.c));
        match plan {
            Some(p) => p.eval(z, omz),
            None => Err(Error::domain(format!(
                "Euler representation needs c > b > 0 or c > a > 0; got a = {}, b = {}, c = {}",
                self.a, self.b, self.c
            ))),
        }
    }
}

/// ₂F₁(a, b; c; z) for z in [0, 1) (negative z is routed to [`hyp2f1_nonpos`]).
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    Hyp2f1::new(a, b, c)?.eval(z)
}

/// Γ[num / den], zero when a denominator argument is a pole.
fn bracket(num: [f64; 2], den: [f64; 2]) -> Result<f64> {
    if den.iter().any(|&x| is_gamma_pole(x)) {
        return Ok(0.0);
    }
    Ok(GammaRatio::new(num.to_vec(), den.to_vec())?.eval())
}

/// ₂F₁ from series in 1 − z (DLMF 15.8.4); c − a − b must not be an integer.
fn connection(a: f64, b: f64, c: f64, omz: f64) -> Result<f64> {
    let d = c - a - b;
    let first = bracket([c, d], [c - a, c - b])?;
    let second = bracket([c, -d], [a, b])?;
    let mut sum = 0.0;
    if first != 0.0 {
        sum += first * hyp2f1_series(a, b, 1.0 - d, omz)?;
    }
    if second != 0.0 {
        sum += second * omz.powf(d) * hyp2f1_series(c - a, c - b, 1.0 + d, omz)?;
    }
    Ok(sum)
}

/// Euler-integral route only; requires c > b > 0 (or c > a > 0).
pub fn hyp2f1_euler(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    Hyp2f1::new(a, b, c)?.eval_euler(z)
}

/// ₂F₁(a, b; c; z) for z ≤ 0 via a Pfaff transformation onto w = z/(z−1) ∈ [0, 1).
pub fn hyp2f1_nonpos(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("2F1 requires c > 0, got c = {c}")));
    }
    if !(z <= 0.0) {
        return Err(Error::domain(format!(
            "hyp2f1_nonpos needs z <= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let w = -z / (1.0 - z);
    let ln_omz = (-z).ln_1p();
    // A: (1−z)^(−a) F(a, c−b; c; w),  B: (1−z)^(−b) F(c−a, b; c; w)
    let use_a = if terminates(a, c - b) {
        true
    } else if terminates(c - a, b) {
        false
    } else if w > PFAFF_SWITCH {
        // Tail terms behave like n^(a−b−1) for A and n^(b−a−1) for B.
        a <= b
    } else {
        true
    };
    if use_a {
        Ok((-a * ln_omz).exp() * hyp2f1_series(a, c - b, c, w)?)
    } else {
        Ok((-b * ln_omz).exp() * hyp2f1_series(c - a, b, c, w)?)
    }
}

/// Gauss's sum ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)), for c − a − b > 0.
pub fn hyp2f1_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(c - a - b > 0.0) {
        return Err(Error::domain(format!(
            "2F1 at z = 1 diverges unless c - a - b > 0 (got {})",
            c - a - b
        )));
    }
    if is_gamma_pole(c - a) || is_gamma_pole(c - b) {
        return Ok(0.0);
    }
    Ok(GammaRatio::new(vec![c, c - a - b], vec![c - a, c - b])?.eval())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(hyp2f1(0.3, -1.7, 2.2, 0.0).unwrap(), 1.0);
        assert_eq!(hyp2f1_nonpos(0.3, -1.7, 2.2, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn closed_form_examples() {
        // (2y/(x+y))^{2α−1} with α = 1, x = 1, y = 2
        assert!(rel(hyp2f1(0.5, 1.0, 2.0, 0.75).unwrap(), 4.0 / 3.0) < 1e-13);
        // F(a, b; b; z) = (1−z)^{−a}
        assert!(rel(hyp2f1(2.0, 1.0, 2.0, 0.75).unwrap(), 4.0) < 1e-13);
        assert!(rel(hyp2f1_nonpos(1.0, 1.0, 2.0, -1.0).unwrap(), 2f64.ln()) < 1e-14);
        assert!(rel(hyp2f1_nonpos(-0.5, 1.5, 1.5, -3.0).unwrap(), 2.0) < 1e-14);
    }

    #[test]
    fn log_contiguity_spot_check() {
        for z in [-0.9f64, -0.5, 0.3, 0.7] {
            let want = -(-z).ln_1p() / z;
            let got = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
            assert!((got - want).abs() < 1e-11, "z = {z}: {got} vs {want}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(hyp2f1(1.0, 1.0, 0.0, 0.2).is_err());
        assert!(hyp2f1(1.0, 1.0, -0.5, 0.2).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.0).is_err());
        assert!(hyp2f1(1.0, 1.0, 2.0, 1.5).is_err());
        // Euler route unavailable: neither a nor b lies in (0, c).
        assert!(hyp2f1(-0.5, 3.0, 2.0, 0.8).is_err());
        assert!(hyp2f1_nonpos(1.0, 1.0, 2.0, 0.1).is_err());
    }

    #[test]
    fn connection_near_one() {
        // mpmath at 30 digits
        let cases = [
            ((0.55, 0.3, 0.6), 1e-7, 62.674450125815217),
            ((0.55, 0.3, 0.6), 1e-12, 1116.6300948034868),
            ((1.7, 1.2, 2.4), 1e-7, 8341.6075566632215),
            ((1.7, 1.2, 2.4), 1e-12, 2639012.1269280717),
            ((-0.4, 0.8, 1.1), 1e-7, 0.46580149765346911),
            ((-0.4, 0.8, 1.1), 1e-12, 0.46578974209627516),
            ((2.2, 0.5, 1.0), 1e-7, 369583519351.95995),
            ((2.2, 0.5, 1.0), 1e-12, 1.1687256066367149e20),
        ];
        for ((a, b, c), omz, want) in cases {
            let got = Hyp2f1::new(a, b, c)
                .unwrap()
                .eval_split(1.0 - omz, omz)
                .unwrap();
            assert!(
                rel(got, want) < 1e-13,
                "({a}, {b}, {c}; 1 - {omz}): {got} vs {want}"
            );
        }
        // Where the Euler integral is still accurate the two routes agree.
        for &(a, b, c) in &[(0.55f64, 0.3f64, 0.6f64), (1.7, 1.2, 2.4), (-0.4, 0.8, 1.1)] {
            let f = Hyp2f1::new(a, b, c).unwrap();
            for z in [0.92, 0.99] {
                assert!(rel(f.eval(z).unwrap(), f.eval_euler(z).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn terminating_series_any_argument() {
        // F(−2, b; c; z) = 1 − 2bz/c + b(b+1)z²/(c(c+1))
        let (b, c, z) = (1.5, 0.7, 0.95);
        let want = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        assert!(rel(hyp2f1(-2.0, b, c, z).unwrap(), want) < 1e-14);
    }

    #[test]
    fn large_negative_argument_uses_faster_variant() {
        // F(a, b; b; z) = (1 − z)^{−a}, deep in the w > 0.9 region.
        let z = -40.0;
        let got = hyp2f1_nonpos(0.3, 2.5, 2.5, z).unwrap();
        assert!(rel(got, (1.0f64 - z).powf(-0.3)) < 1e-12);
        let got = hyp2f1_nonpos(2.6, 0.4, 1.1, z).unwrap();
        let other = hyp2f1_nonpos(0.4, 2.6, 1.1, z).unwrap();
        assert!(rel(got, other) < 1e-12);
    }

    #[test]
    fn gauss_sum() {
        // F(a, b; c; 1) for a = 0.5, b = 1, c = 2: Γ(2)Γ(0.5)/(Γ(1.5)Γ(1)) = 2
        assert!(rel(hyp2f1_at_one(0.5, 1.0, 2.0).unwrap(), 2.0) < 1e-14);
        assert!(hyp2f1_at_one(1.0, 1.0, 2.0).is_err());
    }
}
