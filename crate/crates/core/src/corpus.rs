//! Named test functions with analytic derivatives and known integrals,
//! shared by the verification suites and the CLI.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{Decay, Support, TestFunction};
use crate::jet::Jet;
use crate::mellin::mellin_transform;
use crate::quad::QuadSpec;

/// Ramp width of the indicator surrogate.
pub const RAMP_WIDTH: f64 = 1e-3;
/// Facts are checked against quadrature to this relative accuracy.
pub const FACT_TOL: f64 = 1e-10;
const JET_ORDER: usize = 4;
/// exp(−1/s) underflows below this s.
const FLAT_CUTOFF: f64 = 1.0 / 740.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Fact {
    /// ∫₀^∞ x^{s−1} f(x) dx.
    Mellin { s: f64, value: f64 },
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub function: TestFunction,
    pub facts: Vec<Fact>,
}

impl CorpusEntry {
    pub fn is_compact(&self) -> bool {
        self.function.support().is_compact()
    }

    /// Largest relative deviation of the declared facts from quadrature.
    pub fn fact_error(&self) -> Result<f64> {
        let spec = QuadSpec::new(1e-13, 1e-300)?;
        let mut worst: f64 = 0.0;
        for fact in &self.facts {
            let Fact::Mellin { s, value } = *fact;
            let got = mellin_transform(&self.function, s, &spec)?.value;
            worst = worst.max((got - value).abs() / value.abs());
        }
        Ok(worst)
    }
}

/// exp(−1/s) on a jet, zero where it underflows.
fn flat_exp(s: &Jet) -> Jet {
    if s.value() <= FLAT_CUTOFF {
        Jet::zero(s.order())
    } else {
        (-s.recip()).exp()
    }
}

/// ψ(s) = φ(s)/(φ(s) + φ(1−s)), φ(s) = exp(−1/s): 0 for s ≤ 0, 1 for s ≥ 1.
fn smooth_step(s: &Jet) -> Jet {
    let v = s.value();
    if v <= FLAT_CUTOFF {
        return Jet::zero(s.order());
    }
    if v >= 1.0 - FLAT_CUTOFF {
        return Jet::constant(1.0, s.order());
    }
    let a = flat_exp(s);
    let b = flat_exp(&(-s.clone() + 1.0));
    &a / &(&a + &b)
}

fn smooth_step_value(s: f64) -> f64 {
    smooth_step(&Jet::constant(s, 0)).value()
}

/// exp(−1/(1−t²)) with t = 2y − 3, supported on [1, 2].
pub fn bump() -> TestFunction {
    let jet = |y: f64, order: usize| {
        let t = Jet::variable(y, order) * 2.0 - 3.0;
        flat_exp(&(-(&t * &t) + 1.0))
    };
    TestFunction::new("bump", Support::Compact { lo: 1.0, hi: 2.0 }, move |y| {
        jet(y, 0).value()
    })
    .with_jet(JET_ORDER, jet)
}

/// x² switched on over [0.5, 1] and off over [2.5, 3] by smooth steps.
pub fn ramp() -> TestFunction {
    let jet = |x: f64, order: usize| {
        let v = Jet::variable(x, order);
        let up = smooth_step(&((v.clone() - 0.5) * 2.0));
        let down = smooth_step(&((-v.clone() + 3.0) * 2.0));
        &(&v * &v) * &(&up * &down)
    };
    TestFunction::new("ramp", Support::Compact { lo: 0.5, hi: 3.0 }, move |x| {
        x * x * smooth_step_value(2.0 * (x - 0.5)) * smooth_step_value(2.0 * (3.0 - x))
    })
    .with_jet(JET_ORDER, jet)
    .with_breakpoints(vec![1.0, 2.5])
}

/// e^{−x²} on (0, ∞).
pub fn gaussian() -> TestFunction {
    TestFunction::new(
        "gaussian",
        Support::Unbounded {
            lo: 0.0,
            decay: Decay::Gaussian { rate: 1.0 },
        },
        |x| (-x * x).exp(),
    )
    .with_jet(JET_ORDER, |x, order| {
        let v = Jet::variable(x, order);
        (-(&v * &v)).exp()
    })
}

/// Smooth surrogate of the indicator of [2, 3] with ramps of width [`RAMP_WIDTH`].
pub fn indicator() -> TestFunction {
    let w = RAMP_WIDTH;
    let jet = move |x: f64, order: usize| {
        let v = Jet::variable(x, order);
        let up = smooth_step(&((v.clone() - 2.0) * (1.0 / w)));
        let down = smooth_step(&((-v + 3.0) * (1.0 / w)));
        &up * &down
    };
    TestFunction::new(
        "indicator",
        Support::Compact { lo: 2.0, hi: 3.0 },
        move |x| smooth_step_value((x - 2.0) / w) * smooth_step_value((3.0 - x) / w),
    )
    .with_jet(JET_ORDER, jet)
    .with_breakpoints(vec![2.0 + w, 3.0 - w])
}

/// The exact indicator of [lo, hi], without derivatives.
pub fn exact_indicator(lo: f64, hi: f64) -> TestFunction {
    TestFunction::new(format!("1[{lo},{hi}]"), Support::Compact { lo, hi }, |_| {
        1.0
    })
}

/// The full corpus, built and fact-checked once.
pub fn standard_corpus() -> &'static [CorpusEntry] {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let bump_mass = 0.221_996_908_084_039_72;
        let entries = vec![
            CorpusEntry {
                name: "bump",
                function: bump(),
                facts: vec![
                    Fact::Mellin {
                        s: 1.0,
                        value: bump_mass,
                    },
                    // symmetric about 1.5
                    Fact::Mellin {
                        s: 2.0,
                        value: 1.5 * bump_mass,
                    },
                ],
            },
            CorpusEntry {
                name: "ramp",
                function: ramp(),
                facts: vec![
                    Fact::Mellin {
                        s: 1.0,
                        value: 6.805_126_021_752_207_8,
                    },
                    Fact::Mellin {
                        s: 3.0,
                        value: 31.682_242_954_495_937,
                    },
                ],
            },
            CorpusEntry {
                name: "gaussian",
                function: gaussian(),
                facts: vec![
                    Fact::Mellin {
                        s: 1.0,
                        value: 0.5 * std::f64::consts::PI.sqrt(),
                    },
                    // Γ(3/2)/2
                    Fact::Mellin {
                        s: 3.0,
                        value: 0.25 * std::f64::consts::PI.sqrt(),
                    },
                ],
            },
            CorpusEntry {
                name: "indicator",
                function: indicator(),
                facts: vec![
                    // ψ(s) + ψ(1−s) = 1 makes each ramp lose half its width
                    Fact::Mellin {
                        s: 1.0,
                        value: 1.0 - RAMP_WIDTH,
                    },
                ],
            },
            CorpusEntry {
                name: "power",
                function: TestFunction::power(-3.0),
                facts: vec![],
            },
        ];
        for e in &entries {
            let err = e.fact_error().expect("corpus facts are computable");
            assert!(
                err <= FACT_TOL,
                "corpus entry '{}' fact error {err:e}",
                e.name
            );
        }
        entries
    })
}

/// Look up a corpus entry by name.
pub fn by_name(name: &str) -> Result<&'static CorpusEntry> {
    standard_corpus()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| {
            Error::domain(format!(
                "unknown corpus function '{name}' (known: {})",
                names().join(", ")
            ))
        })
}

pub fn names() -> Vec<&'static str> {
    vec!["bump", "ramp", "gaussian", "indicator", "power"]
}

/// The compactly supported entries.
pub fn compact_entries() -> impl Iterator<Item = &'static CorpusEntry> {
    standard_corpus().iter().filter(|e| e.is_compact())
}
