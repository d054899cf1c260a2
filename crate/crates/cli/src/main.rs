use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fracbessel::corpus;
use fracbessel::kernels::{KernelRepr, OperatorParams};
use fracbessel::mellin::{mellin_of_integral, mellin_transform, MellinSymbol};
use fracbessel::operators::{frac_bessel_derivative, power_closed_form, FracBesselIntegral};
use fracbessel::verify::{self, Suite};
use fracbessel::{Error, Estimate, QuadSpec, TestFunction};

/// Fractional Bessel integrals and derivatives on the half-line.
#[derive(Parser)]
#[command(name = "fracbessel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate IB^α f (or DB^α f) at points or on a uniform grid.
    Eval(EvalArgs),
    /// Tabulate IB^α f for several orders α on one grid.
    Table(TableArgs),
    /// Mellin transform of IB^α f next to the symbol prediction.
    Mellin(MellinArgs),
    /// Closed-form coefficient of IB^α x^m.
    ClosedForm(ClosedFormArgs),
    /// Run verification suites and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Order {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    nu: f64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Operand {
    /// Corpus function.
    #[arg(long = "fn", value_parser = corpus_name)]
    function: Option<String>,
    /// Power function x^m.
    #[arg(long, allow_negative_numbers = true)]
    power: Option<f64>,
}

#[derive(Args)]
struct Grid {
    /// Explicit evaluation point (repeatable).
    #[arg(long, conflicts_with_all = ["from", "to", "points"])]
    at: Vec<f64>,
    #[arg(long, requires_all = ["to", "points"])]
    from: Option<f64>,
    #[arg(long, requires_all = ["from", "points"])]
    to: Option<f64>,
    #[arg(long, requires_all = ["from", "to"])]
    points: Option<usize>,
}

#[derive(Args)]
struct Tolerance {
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    #[arg(long, default_value_t = 1e-14)]
    abs_tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Repr {
    Hyp,
    Legendre,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    order: Order,
    #[command(flatten)]
    operand: Operand,
    #[command(flatten)]
    grid: Grid,
    /// Apply DB^α instead of IB^α.
    #[arg(long)]
    derivative: bool,
    #[arg(long, value_enum, default_value = "hyp")]
    repr: Repr,
    #[command(flatten)]
    tol: Tolerance,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Orders to tabulate (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[command(flatten)]
    operand: Operand,
    #[command(flatten)]
    grid: Grid,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Args)]
struct MellinArgs {
    #[command(flatten)]
    order: Order,
    #[arg(long = "fn", value_parser = corpus_name)]
    function: String,
    /// Transform variable (repeatable).
    #[arg(long, required = true, allow_negative_numbers = true)]
    s: Vec<f64>,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Args)]
struct ClosedFormArgs {
    #[command(flatten)]
    order: Order,
    /// Exponent m of x^m.
    #[arg(long, allow_negative_numbers = true)]
    m: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run one suite instead of all of them.
    #[arg(long, value_parser = suite_name)]
    suite: Option<Suite>,
}

fn corpus_name(s: &str) -> Result<String, String> {
    corpus::by_name(s)
        .map(|e| e.name.to_string())
        .map_err(|e| e.to_string())
}

fn suite_name(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit status: 2 for usage and domain errors, 1 otherwise.
struct Failure {
    status: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            status: if e.is_usage() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            status: 1,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        status: 2,
        message: message.into(),
    }
}

type Outcome = Result<ExitCode, Failure>;

/// 17 significant digits, enough to round-trip any f64.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

impl Operand {
    fn function(&self) -> Result<TestFunction, Failure> {
        match (&self.function, self.power) {
            (Some(name), _) => Ok(corpus::by_name(name)?.function.clone()),
            (None, Some(m)) if m.is_finite() => Ok(TestFunction::power(m)),
            (None, Some(m)) => Err(usage(format!("power exponent must be finite, got {m}"))),
            (None, None) => Err(usage("one of --fn or --power is required")),
        }
    }
}

impl Grid {
    fn points(&self) -> Result<Vec<f64>, Failure> {
        let xs = match (self.from, self.to, self.points) {
            (Some(a), Some(b), Some(n)) => {
                if n == 0 {
                    return Err(usage("--points must be at least 1"));
                }
                if !(a > 0.0 && b >= a && b.is_finite()) {
                    return Err(usage(format!(
                        "grid needs 0 < from <= to < inf, got [{a}, {b}]"
                    )));
                }
                if n == 1 {
                    vec![a]
                } else {
                    let h = (b - a) / (n - 1) as f64;
                    (0..n)
                        .map(|i| if i + 1 == n { b } else { a + h * i as f64 })
                        .collect()
                }
            }
            _ if !self.at.is_empty() => self.at.clone(),
            _ => return Err(usage("give --at or all of --from, --to, --points")),
        };
        if let Some(x) = xs.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(usage(format!(
                "evaluation points must lie in (0, inf), got {x}"
            )));
        }
        Ok(xs)
    }
}

impl Tolerance {
    fn spec(&self) -> Result<QuadSpec, Failure> {
        Ok(QuadSpec::new(self.rel_tol, self.abs_tol)?)
    }
}

#[derive(Serialize)]
struct Row {
    x: f64,
    value: f64,
    err_est: f64,
}

fn cmd_eval(a: &EvalArgs, out: &mut impl Write) -> Outcome {
    let p = OperatorParams::new(a.order.alpha, a.order.nu)?;
    let f = a.operand.function()?;
    let xs = a.grid.points()?;
    let spec = a.tol.spec()?;
    let values: Vec<Estimate> = if a.derivative {
        xs.iter()
            .map(|&x| frac_bessel_derivative(&f, x, &p, &spec))
            .collect::<Result<_, _>>()?
    } else {
        let repr = match a.repr {
            Repr::Hyp => KernelRepr::Hypergeometric,
            Repr::Legendre => KernelRepr::Legendre,
        };
        FracBesselIntegral::with_repr(p, repr)?.apply_many(&f, &xs, &spec)?
    };
    match a.format {
        Format::Csv => {
            writeln!(out, "x,value,err_est")?;
            for (x, e) in xs.iter().zip(&values) {
                writeln!(out, "{},{},{}", num(*x), num(e.value), num(e.err_est))?;
            }
        }
        Format::Json => {
            let rows: Vec<Row> = xs
                .iter()
                .zip(&values)
                .map(|(&x, e)| Row {
                    x,
                    value: e.value,
                    err_est: e.err_est,
                })
                .collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&rows).expect("rows serialize")
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(a: &TableArgs, out: &mut impl Write) -> Outcome {
    let f = a.operand.function()?;
    let xs = a.grid.points()?;
    let spec = a.tol.spec()?;
    writeln!(out, "alpha,nu,x,value,err_est")?;
    for &alpha in &a.alpha {
        let op = FracBesselIntegral::new(OperatorParams::new(alpha, a.nu)?)?;
        for (x, e) in xs.iter().zip(op.apply_many(&f, &xs, &spec)?) {
            writeln!(
                out,
                "{},{},{},{},{}",
                num(alpha),
                num(a.nu),
                num(*x),
                num(e.value),
                num(e.err_est)
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `direct` is the transform of IB^α f by quadrature, `predicted` the symbol
/// times the transform of f at the shifted point.
fn cmd_mellin(a: &MellinArgs, out: &mut impl Write) -> Outcome {
    let p = OperatorParams::new(a.order.alpha, a.order.nu)?;
    let f = &corpus::by_name(&a.function)?.function;
    let spec = a.tol.spec()?;
    let symbol = MellinSymbol::integral(p);
    writeln!(out, "s,direct,err_est,predicted")?;
    for &s in &a.s {
        let direct = mellin_of_integral(f, s, &p, &spec)?;
        let predicted =
            symbol.eval_continued(s)? * mellin_transform(f, s + 2.0 * p.alpha(), &spec)?.value;
        writeln!(
            out,
            "{},{},{},{}",
            num(s),
            num(direct.value),
            num(direct.err_est),
            num(predicted)
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClosedForm {
    m: f64,
    alpha: f64,
    nu: f64,
    coefficient: f64,
    exponent: f64,
    valid: bool,
}

fn cmd_closed_form(a: &ClosedFormArgs, out: &mut impl Write) -> Outcome {
    let p = OperatorParams::new(a.order.alpha, a.order.nu)?;
    let pc = power_closed_form(a.m, &p)?;
    match (pc.coefficient, pc.invalid_reason()) {
        (Some(coefficient), None) => {
            let report = ClosedForm {
                m: a.m,
                alpha: p.alpha(),
                nu: p.nu(),
                coefficient,
                exponent: pc.exponent(),
                valid: true,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )?;
            Ok(ExitCode::SUCCESS)
        }
        (_, reason) => Err(usage(format!(
            "closed form needs m+2α+ν<1 and m+2α<0: {}",
            reason.unwrap_or_default()
        ))),
    }
}

fn cmd_verify(a: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let report = verify::run(a.suite);
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    )?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        if let Some(w) = report.worst() {
            eprintln!(
                "fracbessel: {} failed: error {:e} > tol {:e}",
                w.name, w.error, w.tol
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::BufWriter::new(io::stdout().lock());
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &mut out),
        Command::Table(a) => cmd_table(a, &mut out),
        Command::Mellin(a) => cmd_mellin(a, &mut out),
        Command::ClosedForm(a) => cmd_closed_form(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
    };
    let flushed = out.flush();
    match result.and_then(|code| flushed.map(|_| code).map_err(Failure::from)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("fracbessel: {}", f.message);
            ExitCode::from(f.status)
        }
    }
}
