//! The `varicheck` command line.
//!
//! ```text
//! varicheck analyze FILE [--classical] [--theorem ID]... [--mode strong|weak]
//!                        [--eta X...] [--lambda L] [--theta T --side +|-|0 | --interval A B] [--json]
//! varicheck scan    FILE (--theta T --side +|-|0 | --interval A B) [--delta D] [--grid G] [--json]
//! varicheck oracle  FILE --prop 2.1|2.2|2.3 --theta T --side +|- --xi X... [--lambda L] [--json]
//! ```
//!
//! Exit codes: 0 nothing failed, 2 a condition was violated (or an oracle fit
//! disagreed, or the path is not an extremal), 3 every requested theorem was
//! not applicable, 1 usage or input error.

use crate::engine::{
    check, scan_degenerations, DegenerationQuery, Mode, ScanConfig, Target, TheoremRef, Tolerances, DEFAULT_GRID_T,
};
use crate::error::{Error, Result};
use crate::oracle::{default_ladder, verify_proposition, LambdaMode, OracleTolerances, Proposition, VariationParams};
use crate::problem::{load_problem_file, Side, SidedPoint};
use crate::report::{classical_report, render_report, Document, Format, ReportItem, ScanReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;

/// Default quadrature tolerance for functional values.
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;
/// Mesh points per segment for the Euler residual.
pub const CLASSICAL_POINTS: usize = 100;

#[derive(Parser, Debug)]
#[command(name = "varicheck", version, about = "Degenerate-case necessary conditions for extremals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical checks and theorem verdicts.
    Analyze(AnalyzeArgs),
    /// Search for directions where the Weierstrass/Legendre conditions degenerate.
    Scan(ScanArgs),
    /// Fit brute-force increments and compare with the expansion formulas.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file (TOML).
    file: String,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Zero threshold for directly evaluated quantities [default: 1e-9]
    #[arg(long, value_parser = positive)]
    zero_tol: Option<f64>,
    /// Zero threshold for quantities with time derivatives [default: 1e-6]
    #[arg(long = "deriv-tol", value_parser = positive)]
    derivative_tol: Option<f64>,
    /// Absolute finite-difference step.
    #[arg(long, value_parser = positive)]
    fd_step: Option<f64>,
    /// Quadrature tolerance
    #[arg(long, value_parser = positive)]
    quad_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct Where {
    /// Point of the check.
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Side at the point: +, - or 0 (two-sided).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_side, default_value = "0")]
    side: Side,
    /// Interval of the check, for theorems 4.1-4.3.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true, conflicts_with = "theta")]
    interval: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct ScanOpts {
    /// Radius of the ball of directions for weak forms and scans [default: 1]
    #[arg(long, value_parser = positive)]
    delta: Option<f64>,
    /// Direction grid samples per dimension, at least 3 [default: 21]
    #[arg(long)]
    grid: Option<usize>,
    /// Interior samples of lambda_bar in (0, 1) [default: 21]
    #[arg(long)]
    lambda_grid: Option<usize>,
    /// Interior mesh points for interval checks.
    #[arg(long)]
    grid_t: Option<usize>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    place: Where,
    #[command(flatten)]
    scan: ScanOpts,
    /// Euler equation, corner and transversality conditions.
    #[arg(long)]
    classical: bool,
    /// Theorem id such as 3.1, 3.3(ii), 3.7(j), 4.2 or 4.2(ii). Repeatable.
    #[arg(long)]
    theorem: Vec<String>,
    /// Force the strong or weak form of every theorem.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Direction eta (strong forms).
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    eta: Vec<f64>,
    /// lambda_bar in (0, 1).
    #[arg(long)]
    lambda: Option<f64>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    place: Where,
    #[command(flatten)]
    scan: ScanOpts,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    common: Common,
    /// 2.1, 2.2 or 2.3.
    #[arg(long)]
    prop: String,
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    /// + or -.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_side)]
    side: Side,
    #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
    xi: Vec<f64>,
    /// Fixed lambda in [0, 1); ignored for 2.3, where lambda = epsilon.
    #[arg(long)]
    lambda: Option<f64>,
    /// Largest epsilon of the ladder (default: 0.9 of the room on that side).
    #[arg(long, value_parser = positive)]
    eps_max: Option<f64>,
    #[arg(long, value_parser = positive)]
    c1_tol: Option<f64>,
    #[arg(long, value_parser = positive)]
    c2_tol: Option<f64>,
    /// Relative tolerance for the higher coefficients.
    #[arg(long, value_parser = positive)]
    rel_tol: Option<f64>,
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_side(s: &str) -> std::result::Result<Side, String> {
    match s {
        "+" | "plus" => Ok(Side::Plus),
        "-" | "minus" => Ok(Side::Minus),
        "0" | "two-sided" | "both" => Ok(Side::TwoSided),
        o => Err(format!("side must be +, - or 0, got `{o}`")),
    }
}

impl Common {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Text
        }
    }

    fn tolerances(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            zero_tol: self.zero_tol.unwrap_or(d.zero_tol),
            derivative_tol: self.derivative_tol.unwrap_or(d.derivative_tol),
            fd_step: self.fd_step,
        }
    }
}

impl ScanOpts {
    fn config(&self, zero_tol: f64) -> ScanConfig {
        let d = ScanConfig::default();
        ScanConfig {
            delta: self.delta.unwrap_or(d.delta),
            grid: self.grid.unwrap_or(d.grid),
            lambda_grid: self.lambda_grid.unwrap_or(d.lambda_grid),
            zero_tol,
        }
    }
}

impl Where {
    fn target(&self) -> Option<Target> {
        match (&self.interval, self.theta) {
            (Some(i), _) => Some(Target::Interval(i[0], i[1])),
            (None, Some(t)) => Some(Target::Point(SidedPoint { t, side: self.side })),
            (None, None) => None,
        }
    }
}

/// Parse `args` (program name first), run, write the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match threads() {
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Query(e.to_string())),
        },
        Ok(None) => execute(&cli),
        Err(e) => Err(e),
    };
    match result {
        Ok((doc, format)) => {
            let _ = out.write_all(render_report(&doc, format).as_bytes());
            doc.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn threads() -> Result<Option<usize>> {
    match std::env::var("VARICHECK_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Query(format!("VARICHECK_THREADS must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn execute(cli: &Cli) -> Result<(Document, Format)> {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Scan(a) => scan(a),
        Command::Oracle(a) => oracle(a),
    }
}

fn analyze(a: &AnalyzeArgs) -> Result<(Document, Format)> {
    let (spec, path) = load_problem_file(&a.common.file)?;
    let tol = a.common.tolerances();
    let mut reports = Vec::new();
    if a.classical || a.theorem.is_empty() {
        reports.push(ReportItem::Classical(classical_report(
            &spec,
            &path,
            CLASSICAL_POINTS,
            tol.zero_tol,
            a.common.quad_tol.unwrap_or(DEFAULT_QUAD_TOL),
        )?));
    }
    if !a.theorem.is_empty() {
        let target = a.place.target().ok_or_else(|| Error::Query("give --theta (and --side) or --interval".into()))?;
        let scan = a.scan.config(tol.zero_tol);
        for id in &a.theorem {
            let mut th: TheoremRef = id.parse()?;
            if let Some(m) = a.mode {
                th.mode = match m {
                    ModeArg::Strong => Mode::Strong,
                    ModeArg::Weak => Mode::Weak,
                };
            }
            if th.mode == Mode::Strong && a.eta.is_empty() {
                return Err(Error::Query(format!("theorem {th} in strong form needs --eta")));
            }
            let eta = if a.eta.is_empty() { vec![0.0; spec.n] } else { a.eta.clone() };
            let q = DegenerationQuery { eta, lambda_bar: a.lambda, target, tol };
            let report = check(&spec, &path, &q, th, &scan, a.scan.grid_t.unwrap_or(DEFAULT_GRID_T))?;
            reports.push(ReportItem::Condition(report));
        }
    }
    Ok((Document::new(&a.common.file, reports), a.common.format()))
}

fn scan(a: &ScanArgs) -> Result<(Document, Format)> {
    let (spec, path) = load_problem_file(&a.common.file)?;
    let tol = a.common.tolerances();
    let target = a.place.target().ok_or_else(|| Error::Query("give --theta (and --side) or --interval".into()))?;
    let config = a.scan.config(tol.zero_tol);
    let degenerations = scan_degenerations(&spec, &path, target, &config, a.scan.grid_t.unwrap_or(DEFAULT_GRID_T))?;
    let report = ScanReport { target, config, degenerations };
    Ok((Document::new(&a.common.file, vec![ReportItem::Scan(report)]), a.common.format()))
}

fn oracle(a: &OracleArgs) -> Result<(Document, Format)> {
    let (spec, path) = load_problem_file(&a.common.file)?;
    let prop: Proposition = a.prop.parse()?;
    let lambda = match prop {
        Proposition::P23 => LambdaMode::EqualsEpsilon,
        _ => LambdaMode::Fixed(
            a.lambda.ok_or_else(|| Error::Query(format!("proposition {prop} needs --lambda")))?,
        ),
    };
    let template = VariationParams { theta: a.theta, lambda, xi: a.xi.clone(), side: a.side, epsilon: 0.0 };
    let d = OracleTolerances::default();
    let tol = OracleTolerances {
        c1: a.c1_tol.unwrap_or(d.c1),
        c2: a.c2_tol.unwrap_or(d.c2),
        higher: a.rel_tol.unwrap_or(d.higher),
        quad: a.common.quad_tol.unwrap_or(d.quad),
        fd_step: a.common.fd_step,
    };
    let ladder = a.eps_max.map(|m| default_ladder(m, 2 * prop.powers().len()));
    let report = verify_proposition(&spec, &path, &template, prop, ladder.as_deref(), &tol)?;
    Ok((Document::new(&a.common.file, vec![ReportItem::Oracle(report)]), a.common.format()))
}
