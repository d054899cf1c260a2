//! Identity suites: each check compares two independent routes to the same
//! quantity and records the measured error against a fixed tolerance.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::{self, CorpusEntry};
use crate::error::{Error, Result};
use crate::function::{Support, TestFunction};
use crate::kernels::{kernel_hyp, kernel_legendre, OperatorParams};
use crate::mellin::{
    mellin_of_integral, mellin_symbol_db, mellin_symbol_ib, mellin_transform,
    symbol_semigroup_check, MellinSymbol,
};
use crate::operators::{
    bessel_apply, bessel_apply_n, frac_bessel_integral_power, liouville_integral,
    power_closed_form, saigo_reduction, FracBesselDerivative, FracBesselIntegral, SampleSpec,
    SampledFunction,
};
use crate::quad::QuadSpec;
use crate::specfun::{gamma, hyp2f1_euler, hyp2f1_nonpos, hyp2f1_series};

pub const SCHEMA: u32 = 1;
const SEED: u64 = 0x5eed_b55e;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, error: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            error,
            tol,
            pass: error <= tol,
        }
    }

    /// A check whose computation itself failed.
    fn failed(name: impl Into<String>, tol: f64) -> Self {
        Self::new(name, f64::INFINITY, tol)
    }

    fn from_result(name: impl Into<String>, error: Result<f64>, tol: f64) -> Self {
        match error {
            Ok(e) => Self::new(name, e, tol),
            Err(_) => Self::failed(name, tol),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Kernels,
    Specfun,
    Property1,
    Property2,
    Property3,
    Property4,
    Mellin,
    Semigroup,
    Derivative,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Kernels,
        Suite::Specfun,
        Suite::Property1,
        Suite::Property2,
        Suite::Property3,
        Suite::Property4,
        Suite::Mellin,
        Suite::Semigroup,
        Suite::Derivative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernels => "kernels",
            Suite::Specfun => "specfun",
            Suite::Property1 => "property1",
            Suite::Property2 => "property2",
            Suite::Property3 => "property3",
            Suite::Property4 => "property4",
            Suite::Mellin => "mellin",
            Suite::Semigroup => "semigroup",
            Suite::Derivative => "derivative",
        }
    }

    /// Run every check of the suite, sorted by name.
    pub fn run(self) -> Vec<Check> {
        let mut checks = match self {
            Suite::Kernels => kernels(),
            Suite::Specfun => specfun(),
            Suite::Property1 => property1(),
            Suite::Property2 => property2(),
            Suite::Property3 => property3(),
            Suite::Property4 => property4(),
            Suite::Mellin => mellin(),
            Suite::Semigroup => semigroup(),
            Suite::Derivative => derivative(),
        };
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        checks
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::domain(format!("unknown suite '{s}' (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The failing check with the largest error-to-tolerance ratio, or the
    /// tightest passing one.
    pub fn worst(&self) -> Option<&Check> {
        self.checks
            .iter()
            .max_by(|a, b| (a.error / a.tol).total_cmp(&(b.error / b.tol)))
    }
}

/// Run one suite, or all of them (labelled "all").
pub fn run(suite: Option<Suite>) -> Report {
    let (label, checks) = match suite {
        Some(s) => (s.name().to_string(), s.run()),
        None => {
            let mut all: Vec<Check> = Suite::ALL.into_iter().flat_map(Suite::run).collect();
            all.sort_by(|a, b| a.name.cmp(&b.name));
            ("all".to_string(), all)
        }
    };
    Report {
        schema: SCHEMA,
        suite: label,
        checks,
    }
}

fn rel(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

fn params(alpha: f64, nu: f64) -> OperatorParams {
    OperatorParams::new(alpha, nu).expect("suite parameters are valid")
}

/// Corpus entries the operators accept (the power function has its own suite).
fn operand_entries() -> Vec<&'static CorpusEntry> {
    corpus::standard_corpus()
        .iter()
        .filter(|e| e.name != "power")
        .collect()
}

fn max_of(errors: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    errors.into_iter().try_fold(0.0f64, |m, e| {
        e.map(|e| if e.is_nan() { f64::INFINITY } else { m.max(e) })
    })
}

/// Kernel representations: hypergeometric against Legendre on 200 random points.
fn kernels() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let points: Vec<(f64, f64, f64, f64)> = (0..200)
        .map(|_| {
            let x = 10f64.powf(rng.gen_range(-1.0..1.0));
            let ratio = 10f64.powf(rng.gen_range(1.01f64.log10()..2.0));
            (
                x,
                x * ratio,
                rng.gen_range(0.1..3.0),
                rng.gen_range(0.0..6.0),
            )
        })
        .collect();
    let errors = crate::par::map(&points, |&(x, y, a, nu)| {
        let p = OperatorParams::new(a, nu)?;
        Ok(rel(kernel_legendre(x, y, &p)?, kernel_hyp(x, y, &p)?))
    });
    let positive = points.iter().all(|&(x, y, a, nu)| {
        OperatorParams::new(a, nu)
            .and_then(|p| kernel_hyp(x, y, &p))
            .is_ok_and(|k| k > 0.0)
    });
    vec![
        Check::from_result("kernels/legendre_vs_hyp", max_of(errors), 1e-9),
        Check::new("kernels/positive", if positive { 0.0 } else { 1.0 }, 0.0),
    ]
}

/// ₂F₁ by series and transformations against the Euler integral, and gamma identities.
fn specfun() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    // z in the band where both routes converge comfortably, then z < 0 where
    // the Pfaff-transformed series meets the integral.
    let mut draw = |z_lo: f64, z_hi: f64| -> Vec<(f64, f64, f64, f64)> {
        (0..500)
            .map(|_| {
                let b = rng.gen_range(0.1..3.0);
                let c = b + rng.gen_range(0.1..3.0);
                (rng.gen_range(-3.0..3.0), b, c, rng.gen_range(z_lo..z_hi))
            })
            .collect()
    };
    let band = draw(0.35, 0.65);
    let negative = draw(-10.0, 0.0);
    let agreement = |samples: &[(f64, f64, f64, f64)]| {
        max_of(crate::par::map(samples, |&(a, b, c, z)| {
            let direct = if z < 0.0 {
                hyp2f1_nonpos(a, b, c, z)?
            } else {
                hyp2f1_series(a, b, c, z)?
            };
            let euler = hyp2f1_euler(a, b, c, z)?;
            // Scale by the larger magnitude: F can pass through zero for a < 0.
            Ok((direct - euler).abs() / direct.abs().max(euler.abs()).max(1e-300))
        }))
    };
    let dual = agreement(&band);
    let dual_negative = agreement(&negative);

    let mut reflection = Vec::new();
    let mut duplication = Vec::new();
    for _ in 0..500 {
        let x: f64 = rng.gen_range(-5.0..5.0);
        if (x - x.round()).abs() > 1e-3 {
            let lhs = gamma(x).and_then(|g| Ok(g * gamma(1.0 - x)?));
            reflection.push(lhs.map(|l| rel(l, std::f64::consts::PI / crate::specfun::sin_pi(x))));
        }
        let z: f64 = rng.gen_range(0.05..10.0);
        let rhs = gamma(z)
            .and_then(|g| Ok(g * gamma(z + 0.5)?))
            .map(|g| g * (2.0 * z - 1.0).exp2() / std::f64::consts::PI.sqrt());
        duplication.push(rhs.and_then(|r| Ok(rel(gamma(2.0 * z)?, r))));
    }
    vec![
        Check::from_result("specfun/hyp2f1_dual_path", dual, 1e-10),
        Check::from_result("specfun/hyp2f1_dual_path_negative", dual_negative, 1e-10),
        Check::from_result("specfun/gamma_reflection", max_of(reflection), 1e-12),
        Check::from_result("specfun/gamma_duplication", max_of(duplication), 1e-12),
    ]
}

const P1_X: [f64; 4] = [0.25, 0.5, 1.0, 1.5];
const P1_ALPHA: [f64; 4] = [0.25, 0.5, 1.0, 1.7];

/// ν = 0 is the Liouville integral of order 2α.
fn property1() -> Vec<Check> {
    let spec = QuadSpec::default();
    let mut cases = Vec::new();
    for e in operand_entries() {
        for a in P1_ALPHA {
            cases.push((e, a));
        }
    }
    crate::par::map(&cases, |&(e, a)| {
        let ib = FracBesselIntegral::new(params(a, 0.0)).expect("valid");
        let err = max_of(P1_X.iter().map(|&x| {
            let l = liouville_integral(&e.function, x, 2.0 * a, &spec)?.value;
            let b = ib.apply(&e.function, x, &spec)?.value;
            Ok((b - l).abs() / (1.0 + l.abs()))
        }));
        Check::from_result(format!("property1/{}/alpha={a}", e.name), err, 1e-8)
    })
}

const P2_NU: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 3.5];

/// IB agrees with its Saigo-operator form.
fn property2() -> Vec<Check> {
    let spec = QuadSpec::default();
    let mut cases = Vec::new();
    for e in operand_entries() {
        for nu in P2_NU {
            for a in P1_ALPHA {
                cases.push((e, nu, a));
            }
        }
    }
    crate::par::map(&cases, |&(e, nu, a)| {
        let p = params(a, nu);
        let ib = FracBesselIntegral::new(p).expect("valid");
        let err = max_of(P1_X.iter().map(|&x| {
            let direct = ib.apply(&e.function, x, &spec)?.value;
            let saigo = saigo_reduction(&e.function, x, &p, &spec)?.value;
            Ok(rel(saigo, direct))
        }));
        Check::from_result(format!("property2/{}/nu={nu}/alpha={a}", e.name), err, 1e-8)
    })
}

/// IB¹ inverts B_ν on e^{−x²}.
fn property3() -> Vec<Check> {
    let spec = QuadSpec::default();
    let g = corpus::gaussian();
    let xs: Vec<f64> = (0..10).map(|i| 0.2 + 0.2 * i as f64).collect();
    crate::par::map(&[0.0, 0.5, 1.0, 2.0, 3.0], |&nu| {
        let gg = g.clone();
        let bg = TestFunction::new(format!("B_{nu} gaussian"), g.support(), move |x| {
            bessel_apply(&gg, x, nu).unwrap_or(f64::NAN)
        });
        let ib = FracBesselIntegral::new(params(1.0, nu)).expect("valid");
        let err = max_of(
            xs.iter()
                .map(|&x| Ok((ib.apply(&bg, x, &spec)?.value - g.eval(x)).abs())),
        );
        Check::from_result(format!("property3/nu={nu}"), err, 1e-6)
    })
}

/// Valid (m, α, ν) triples; the tails decay at least like y^{−1.2}.
pub const POWER_TRIPLES: [(f64, f64, f64); 10] = [
    (-3.0, 0.25, 0.5),
    (-2.0, 0.3, 0.0),
    (-2.5, 0.5, 0.7),
    (-2.5, 0.2, 0.4),
    (-4.0, 1.0, 1.5),
    (-3.0, 0.75, 1.2),
    (-2.0, 0.25, 0.9),
    (-5.0, 1.5, 0.3),
    (-1.8, 0.3, 0.0),
    (-3.5, 0.4, 2.5),
];

/// The power-function coefficient against quadrature, and its ν = 0 form.
fn property4() -> Vec<Check> {
    let spec = QuadSpec::new(1e-10, 1e-15).expect("valid");
    let mut checks = crate::par::map(&POWER_TRIPLES, |&(m, a, nu)| {
        let p = params(a, nu);
        let err = power_closed_form(m, &p).and_then(|pc| {
            let c = pc
                .coefficient
                .ok_or_else(|| Error::domain(pc.invalid_reason().unwrap_or_default()))?;
            max_of([0.5, 1.0, 2.0].iter().map(|&x| {
                let q = frac_bessel_integral_power(m, &p, x, &spec)?.value;
                Ok(rel(q, c * x.powf(pc.exponent())))
            }))
        });
        Check::from_result(format!("property4/m={m}/alpha={a}/nu={nu}"), err, 1e-6)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let liouville = max_of((0..200).map(|_| {
        let a: f64 = rng.gen_range(0.05..2.0);
        let m = -2.0 * a - rng.gen_range(0.05..4.0);
        let c = power_closed_form(m, &params(a, 0.0))?
            .coefficient
            .ok_or_else(|| Error::domain("invalid"))?;
        Ok(rel(c, gamma(-m - 2.0 * a)? / gamma(-m)?))
    }));
    checks.push(Check::from_result(
        "property4/nu=0_liouville_factor",
        liouville,
        1e-12,
    ));
    checks
}

const MELLIN_PARAMS: [(f64, f64); 4] = [(0.5, 0.0), (0.3, 0.5), (1.2, 1.5), (0.75, 3.0)];

/// m_D(s) m_I(s − 2α) = 1 on 500 random (s, α, ν).
pub fn symbol_reciprocity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let err = max_of((0..500).map(|_| {
        let a: f64 = rng.gen_range(0.05..3.0);
        let nu: f64 = rng.gen_range(0.0..6.0);
        let s = 2.0 * a + (nu - 1.0).max(0.0) + rng.gen_range(0.01..8.0);
        let p = OperatorParams::new(a, nu)?;
        Ok((mellin_symbol_db(s, &p)? * mellin_symbol_ib(s - 2.0 * a, &p)? - 1.0).abs())
    }));
    Check::from_result("mellin/symbol_reciprocity", err, 1e-12)
}

/// At ν = 0 the symbols are the Liouville factors Γ(s)/Γ(s ± 2α).
fn symbol_liouville() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let err = max_of((0..500).map(|_| {
        let a: f64 = rng.gen_range(0.05..3.0);
        let s: f64 = 2.0 * a + rng.gen_range(0.01..8.0);
        let p = OperatorParams::new(a, 0.0)?;
        let ib = rel(mellin_symbol_ib(s, &p)?, gamma(s)? / gamma(s + 2.0 * a)?);
        let db = rel(mellin_symbol_db(s, &p)?, gamma(s)? / gamma(s - 2.0 * a)?);
        Ok(ib.max(db))
    }));
    Check::from_result("mellin/symbol_nu0_liouville", err, 1e-12)
}

/// Theorem-1 transform identity, the DB¹ symbol, reciprocity and ν = 0 forms.
fn mellin() -> Vec<Check> {
    let spec = QuadSpec::new(1e-10, 1e-14).expect("valid");
    // B f reaches 1e6 inside the indicator's ramps and its transform can vanish.
    let db_spec = QuadSpec::new(1e-9, 1e-8).expect("valid");
    let compact: Vec<&CorpusEntry> = corpus::compact_entries().collect();
    let mut cases = Vec::new();
    for &e in &compact {
        for &(a, nu) in &MELLIN_PARAMS {
            let mut ss: Vec<f64> = [1.0, 2.0, 4.0]
                .into_iter()
                .filter(|&s| s > nu - 1.0)
                .collect();
            if nu < 1.0 {
                // Probes inside (ν − 1, 0) and (0, 1).
                ss.push(0.5 * (nu - 1.0));
                ss.push(0.5);
            }
            for s in ss {
                cases.push((e, a, nu, s));
            }
        }
    }
    let mut checks = crate::par::map(&cases, |&(e, a, nu, s)| {
        let p = params(a, nu);
        let err = (|| {
            let lhs = mellin_of_integral(&e.function, s, &p, &spec)?.value;
            let rhs = MellinSymbol::integral(p).eval_continued(s)?
                * mellin_transform(&e.function, s + 2.0 * a, &spec)?.value;
            Ok(rel(lhs, rhs))
        })();
        Check::from_result(
            format!("mellin/ib/{}/alpha={a}/nu={nu}/s={s}", e.name),
            err,
            1e-5,
        )
    });

    let mut db_cases = Vec::new();
    for &e in &compact {
        for nu in [0.0, 0.5, 1.5, 3.0] {
            db_cases.push((e, nu));
        }
    }
    checks.extend(crate::par::map(&db_cases, |&(e, nu)| {
        let f = e.function.clone();
        let bf = TestFunction::new("B f", f.support(), move |x| {
            bessel_apply(&f, x, nu).unwrap_or(f64::NAN)
        })
        .with_breakpoints(e.function.breakpoints());
        let p = params(1.0, nu);
        let err = max_of([1.0, 2.0, 4.0].iter().map(|&s| {
            let lhs = mellin_transform(&bf, s, &db_spec)?.value;
            let shifted = mellin_transform(&e.function, s - 2.0, &spec)?.value;
            let rhs = mellin_symbol_db(s, &p)? * shifted;
            // The symbol vanishes at some s; measure against f*(s − 2) there.
            Ok((lhs - rhs).abs() / rhs.abs().max(shifted.abs()))
        }));
        Check::from_result(format!("mellin/db1/{}/nu={nu}", e.name), err, 1e-5)
    }));

    checks.push(symbol_reciprocity());
    checks.push(symbol_liouville());
    checks
}

pub const SEMIGROUP_PAIRS: [(f64, f64); 3] = [(0.3, 0.4), (0.5, 0.5), (1.0, 0.25)];
const SEMIGROUP_NU: [f64; 3] = [0.0, 1.0, 2.5];

/// Sample x ↦ value(x) on [lo, f's upper support edge] as a compact test function.
fn sampled_output<G>(
    f: &TestFunction,
    lo: f64,
    label: &str,
    value: G,
    spec: &SampleSpec,
) -> Result<TestFunction>
where
    G: Fn(f64) -> Result<f64> + Sync + Send,
{
    let hi = match f.support() {
        Support::Compact { hi, .. } => hi,
        Support::Unbounded { .. } => return Err(Error::domain("sampling needs a compact support")),
    };
    let mut breaks = f.breakpoints();
    breaks.push(f.support().lo());
    Ok(SampledFunction::build(value, lo, hi, &breaks, spec)?.into_test_function(label))
}

/// Points where the composed operators are compared: below and inside the support.
fn probe_points(f: &TestFunction) -> [f64; 2] {
    let s = f.support();
    [0.5 * s.lo(), 0.5 * (s.lo() + s.hi())]
}

/// The symbol index law on 1000 random (s, α, β, ν).
pub fn symbol_index_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let err = max_of((0..1000).map(|_| {
        let nu: f64 = rng.gen_range(0.0..6.0);
        let s = (nu - 1.0).max(0.0) + rng.gen_range(0.01..10.0);
        let a = rng.gen_range(0.05..3.0);
        let b = rng.gen_range(0.05..3.0);
        Ok((symbol_semigroup_check(s, a, b, nu)? - 1.0).abs())
    }));
    Check::from_result("semigroup/symbol", err, 1e-11)
}

/// The index law for the symbols and for the operators themselves.
fn semigroup() -> Vec<Check> {
    let mut checks = vec![symbol_index_law()];

    let inner_spec = QuadSpec::new(1e-12, 1e-15).expect("valid");
    let spec = QuadSpec::new(1e-11, 1e-15).expect("valid");
    let sample = SampleSpec {
        rel_tol: 1e-10,
        ..SampleSpec::default()
    };
    let mut cases = Vec::new();
    for e in corpus::compact_entries() {
        for &(a, b) in &SEMIGROUP_PAIRS {
            for nu in SEMIGROUP_NU {
                cases.push((e, a, b, nu));
            }
        }
    }
    // Cases run one after another; sampling parallelizes inside each.
    checks.extend(cases.iter().map(|&(e, a, b, nu)| {
        let f = &e.function;
        let points = probe_points(f);
        let err = (|| {
            let inner = FracBesselIntegral::new(params(b, nu))?;
            let h = sampled_output(
                f,
                points[0],
                "IB f",
                |x| Ok(inner.apply(f, x, &inner_spec)?.value),
                &sample,
            )?;
            let outer = FracBesselIntegral::new(params(a, nu))?;
            let whole = FracBesselIntegral::new(params(a + b, nu))?;
            max_of(points.iter().map(|&x| {
                Ok(rel(
                    outer.apply(&h, x, &spec)?.value,
                    whole.apply(f, x, &spec)?.value,
                ))
            }))
        })();
        Check::from_result(
            format!("semigroup/{}/alpha={a}/beta={b}/nu={nu}", e.name),
            err,
            1e-5,
        )
    }));
    checks
}

const DERIVATIVE_NU: [f64; 2] = [0.5, 2.0];

/// Interior points of each operand, away from ramps and support edges.
fn interior_points(name: &str) -> &'static [f64] {
    match name {
        "bump" => &[1.3, 1.5, 1.7],
        "ramp" => &[1.5, 2.0],
        "indicator" => &[2.5],
        _ => &[0.5, 1.0],
    }
}

/// DB¹ = B_ν, DB^α left-inverts IB^α, and DB^{1/2} DB^{1/2} = B_ν.
fn derivative() -> Vec<Check> {
    let spec = QuadSpec::new(1e-12, 1e-15).expect("valid");
    let mut checks = Vec::new();
    let entries = operand_entries();

    let mut cases = Vec::new();
    for &e in &entries {
        for nu in DERIVATIVE_NU {
            cases.push((e, nu));
        }
    }
    checks.extend(crate::par::map(&cases, |&(e, nu)| {
        let err = (|| {
            let db = FracBesselDerivative::new(params(1.0, nu))?;
            max_of(interior_points(e.name).iter().map(|&x| {
                Ok(
                    (db.apply(&e.function, x, &spec)?.value - bessel_apply(&e.function, x, nu)?)
                        .abs(),
                )
            }))
        })();
        Check::from_result(format!("derivative/db1/{}/nu={nu}", e.name), err, 1e-8)
    }));
    // The same through differences, with the analytic derivatives hidden.
    checks.extend(crate::par::map(&cases, |&(e, nu)| {
        let err = (|| {
            let db = FracBesselDerivative::new(params(1.0, nu))?;
            let g = e.function.clone();
            let plain = TestFunction::new(e.name, g.support(), move |x| g.eval(x))
                .with_breakpoints(e.function.breakpoints());
            max_of(interior_points(e.name).iter().map(|&x| {
                Ok((db.apply(&plain, x, &spec)?.value - bessel_apply(&e.function, x, nu)?).abs())
            }))
        })();
        Check::from_result(
            format!("derivative/db1_differences/{}/nu={nu}", e.name),
            err,
            1e-8,
        )
    }));

    // Left inverse DB^α IB^α f = f through a sampled IB^α f.
    let sample = SampleSpec {
        rel_tol: 1e-11,
        ..SampleSpec::default()
    };
    let mut cases = Vec::new();
    for &e in &entries {
        for a in [0.5, 1.0, 1.5] {
            for nu in DERIVATIVE_NU {
                cases.push((e, a, nu));
            }
        }
    }
    checks.extend(cases.iter().map(|&(e, a, nu)| {
        let pts = interior_points(e.name);
        let err = (|| {
            let f = bounded(&e.function);
            let ib = FracBesselIntegral::new(params(a, nu))?;
            let lo = 0.5 * pts[0];
            let g = sampled_output(
                &f,
                lo,
                "IB f",
                |x| Ok(ib.apply(&f, x, &spec)?.value),
                &sample,
            )?;
            let db = FracBesselDerivative::new(params(a, nu))?;
            max_of(
                pts.iter()
                    .map(|&x| Ok((db.apply(&g, x, &spec)?.value - f.eval(x)).abs())),
            )
        })();
        Check::from_result(
            format!("derivative/left_inverse/{}/alpha={a}/nu={nu}", e.name),
            err,
            1e-4,
        )
    }));

    // DB^{1/2} of a sampled DB^{1/2} f against B_ν f.
    let noisy = SampleSpec {
        rel_tol: 1e-7,
        min_width: 1e-4,
        ..SampleSpec::default()
    };
    // The indicator's ramps are narrower than the difference step, so its
    // sampled DB^{1/2} is wrong there; it is covered by the checks above.
    let mut cases = Vec::new();
    for &e in entries.iter().filter(|e| e.name != "indicator") {
        for nu in DERIVATIVE_NU {
            cases.push((e, nu));
        }
    }
    checks.extend(cases.iter().map(|&(e, nu)| {
        let pts = interior_points(e.name);
        let err = (|| {
            let f = bounded(&e.function);
            let half = FracBesselDerivative::new(params(0.5, nu))?;
            let lo = 0.5 * pts[0];
            let h = sampled_output(
                &f,
                lo,
                "DB f",
                |x| Ok(half.apply(&f, x, &spec)?.value),
                &noisy,
            )?;
            max_of(pts.iter().map(|&x| {
                let want = bessel_apply_n(&e.function, x, nu, 1)?;
                Ok((half.apply(&h, x, &spec)?.value - want).abs())
            }))
        })();
        Check::from_result(
            format!("derivative/half_twice/{}/nu={nu}", e.name),
            err,
            1e-3,
        )
    }));
    checks
}

/// Compact operands as they are; the gaussian cut where it drops below 1e-300.
fn bounded(f: &TestFunction) -> TestFunction {
    match f.support() {
        Support::Compact { .. } => f.clone(),
        Support::Unbounded { lo, .. } => {
            let g = f.clone();
            TestFunction::new(
                f.label().to_string(),
                Support::Compact { lo, hi: 26.3 },
                move |x| g.eval(x),
            )
            .with_breakpoints(vec![4.0, 8.0])
        }
    }
}
