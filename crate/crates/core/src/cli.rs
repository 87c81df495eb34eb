//! Command-line front end. Exit codes: 0 when every check passes, 1 when a
//! numerical check fails, 2 for usage, input or configuration errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::growth::{coeff_type_estimate, growth_type_estimate, validity_radius};
use crate::operators::{coefficients_from_operator, representation_identity_check, AbstractOperator};
use crate::proximate::ProximateOrder;
use crate::report::num;
use crate::series::SliceSeries;
use crate::suites::{run_suite, SuiteConfig, SUITES};
use crate::superosc::{build_fn, build_fn_boundary, convergence_measure, convergence_report, evolve, plot_data, rows_to_csv, XGrid};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sliceforge", version, about = "Growth, order and operator checks for slice monogenic series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and write a JSON report.
    Verify(VerifyArgs),
    /// Estimate the type of a series stored as JSON.
    Estimate(EstimateArgs),
    /// Reconstruct operator coefficients from a built-in operator.
    Extract(ExtractArgs),
    /// Superoscillation convergence table and plot data.
    Superosc(SuperoscArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Constant,
    LogShift,
}

/// Proximate order ϱ: constant ρ or ρ + b/ln r, normalized at `normalize_at`.
#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    #[arg(long, value_enum, default_value = "constant")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// Shift b of the log-shift family.
    #[arg(long, default_value_t = 0.5)]
    pub b: f64,
    /// Radius above which the log-shift formula applies.
    #[arg(long, default_value_t = std::f64::consts::E * std::f64::consts::E)]
    pub r0: f64,
    /// Normalization radius (log-shift default: r0).
    #[arg(long)]
    pub normalize_at: Option<f64>,
}

impl OrderArgs {
    pub fn build(&self) -> Result<ProximateOrder, Error> {
        match self.family {
            FamilyArg::Constant => ProximateOrder::constant(self.rho),
            FamilyArg::LogShift => {
                ProximateOrder::log_shift(self.rho, self.b, self.r0)?.normalize(self.normalize_at.unwrap_or(self.r0))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[command(flatten)]
    pub order: OrderArgs,
    /// Clifford dimension (suite default when omitted).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Radii of the norm scan.
    #[arg(long)]
    pub radii: Option<usize>,
    /// Angles of the norm scan.
    #[arg(long)]
    pub angles: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub order: OrderArgs,
    #[arg(long, default_value_t = 400)]
    pub radii: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Identity,
    Translate,
    Derivative,
    /// Derivative followed by translation.
    Compose,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    #[arg(long, value_enum)]
    pub op: OpArg,
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long = "L", default_value_t = 10)]
    pub l: usize,
    /// Degree of the random test polynomials in the identity check.
    #[arg(long = "M")]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Operator JSON destination; the check report then goes to stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuperoscArgs {
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    #[arg(long = "n", value_delimiter = ',', default_value = "5,10,20,40,80")]
    pub ns: Vec<usize>,
    #[arg(long = "B", value_delimiter = ',', default_value = "1")]
    pub bs: Vec<f64>,
    /// Permit a = 1, where F_n is a single plane wave.
    #[arg(long)]
    pub allow_boundary: bool,
    /// Real grid step on [-5, 5].
    #[arg(long, default_value_t = crate::config::SUPEROSC_STEP)]
    pub step: f64,
    /// Skip the complex strip and measure on the real axis only.
    #[arg(long)]
    pub real_only: bool,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Plot data for the largest n.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

/// A failure mapped to its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::usage(e)
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error for us
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(CliError::usage(format!("unknown suite '{}' (expected one of {})", args.suite, SUITES.join(", "))));
    }
    let mut cfg = SuiteConfig { n: args.n, trials: args.trials, seed: args.seed, order: args.order.build()?, ..Default::default() };
    if let Some(r) = args.radii {
        cfg.norm_grid.radii = r.max(4);
    }
    if let Some(a) = args.angles {
        cfg.norm_grid.angles = a.max(2);
    }
    if let Some(n) = cfg.n {
        if !(1..=crate::clifford::MAX_DIM).contains(&n) {
            return Err(CliError::usage(format!("n must be in 1..={}", crate::clifford::MAX_DIM)));
        }
    }
    let report = run_suite(&args.suite, &cfg)?;
    write_or_print(args.output.as_deref(), &pretty(&report))?;
    if args.output.is_some() {
        for r in report.reports.iter().filter(|r| !r.pass) {
            eprintln!("FAIL {}", r.lemma);
        }
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

/// Order read off the coefficients: max over the tail window of ℓ ln ℓ / ln(1/|a_ℓ|).
fn classical_order(f: &SliceSeries) -> f64 {
    let n = f.degree();
    let lo = n.div_ceil(2).max(2);
    f.log_evaluator()
        .log_abs()
        .filter(|&(l, la)| l >= lo && la < 0.0)
        .map(|(l, la)| l as f64 * (l as f64).ln() / -la)
        .fold(0.0, f64::max)
}

pub fn cmd_estimate(args: &EstimateArgs) -> Result<i32, CliError> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.input.display())))?;
    let f: SliceSeries =
        serde_json::from_str(&text).map_err(|e| CliError::usage(format!("cannot parse {}: {e}", args.input.display())))?;
    let po = args.order.build()?;
    let coeff = coeff_type_estimate(&f, &po)?;
    let growth = growth_type_estimate(&f, &po, args.radii)?;
    let agreement = if coeff.implied_type == 0.0 && growth.value == 0.0 {
        1.0
    } else {
        coeff.implied_type / growth.value
    };
    let out = json!({
        "order_consistency": {
            "rho": po.rho(),
            "classical_order": classical_order(&f),
            "finite_type": coeff.implied_type.is_finite(),
        },
        "implied_type": num(coeff.implied_type),
        "alternative_type": num(coeff.alternative_type),
        "coefficient_limsup": num(coeff.coefficient_limsup),
        "tail_window": [coeff.tail_window.0, coeff.tail_window.1],
        "growth_type": num(growth.value),
        "growth_window": [num(growth.window.0), num(growth.window.1)],
        "validity_radius": num(validity_radius(&f)),
        "agreement_ratio": num(agreement),
    });
    write_or_print(args.output.as_deref(), &pretty(&out))?;
    Ok(EXIT_PASS)
}

pub fn cmd_extract(args: &ExtractArgs) -> Result<i32, CliError> {
    if !(1..=crate::clifford::MAX_DIM).contains(&args.n) {
        return Err(CliError::usage(format!("n must be in 1..={}", crate::clifford::MAX_DIM)));
    }
    if !args.a.is_finite() {
        return Err(CliError::usage("a must be finite"));
    }
    let (n, l) = (args.n, args.l);
    let t = match args.op {
        OpArg::Identity => AbstractOperator::identity(n, l),
        OpArg::Translate => AbstractOperator::translation(n, args.a, l),
        OpArg::Derivative => AbstractOperator::derivative(n, l),
        OpArg::Compose => {
            AbstractOperator::compose(AbstractOperator::derivative(n, l), AbstractOperator::translation(n, args.a, l))?
        }
    };
    let m = args.m.unwrap_or(l.min(12));
    if m > l {
        return Err(CliError::usage(format!("M = {m} exceeds L = {l}")));
    }
    let p = coefficients_from_operator(&t, l)?;
    let check = representation_identity_check(&t, l, m, args.trials, args.seed)?;
    let pass = check.pass;
    match &args.output {
        Some(path) => {
            write_or_print(Some(path), &pretty(&p))?;
            write_or_print(None, &pretty(&check))?;
        }
        None => write_or_print(None, &pretty(&json!({ "operator": p, "identity_check": check })))?,
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_superosc(args: &SuperoscArgs) -> Result<i32, CliError> {
    let a = args.a;
    let probe_n = args.ns.iter().copied().max().ok_or_else(|| CliError::usage("--n needs at least one value"))?;
    if args.ns.contains(&0) {
        return Err(CliError::usage("n must be at least 1"));
    }
    // parameter validation happens in the builders
    if args.allow_boundary {
        build_fn_boundary(probe_n, a)?;
    } else {
        build_fn(probe_n, a)?;
    }
    if !(args.step > 0.0) {
        return Err(CliError::usage("step must be positive"));
    }
    let grid = if args.real_only {
        XGrid::real_only(crate::config::SUPEROSC_WINDOW, args.step)
    } else {
        XGrid { step: args.step, ..XGrid::default() }
    };
    let rows = convergence_measure(&args.ns, a, args.t, &args.bs, &grid)?;
    write_or_print(args.csv.as_deref(), rows_to_csv(&rows).trim_end())?;
    if let Some(path) = &args.plot {
        let w = evolve(&build_fn_boundary(probe_n, a)?, args.t);
        let data = plot_data(&w, crate::config::SUPEROSC_WINDOW, args.step)?;
        write_or_print(Some(path), &serde_json::to_string(&data).expect("plot data serializes"))?;
    }
    let report = convergence_report(&rows, a);
    if !report.pass {
        eprintln!("d_n is not strictly decreasing in n");
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

/// Caps the worker pool from SLICEFORGE_THREADS.
fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SLICEFORGE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::usage(format!("SLICEFORGE_THREADS must be a positive integer, got '{raw}'")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot configure thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

pub fn run(cli: &Cli) -> i32 {
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Extract(a) => cmd_extract(a),
        Command::Superosc(a) => cmd_superosc(a),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

/// Parses the process arguments and runs; clap usage errors exit with 2.
pub fn main_exit() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            code
        }
    }
}

/// JSON value of a report file, for tests and tooling.
pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
}
