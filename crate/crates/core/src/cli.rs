//! The `motzkin` command-line front end.
//!
//! Results go to stdout, diagnostics to stderr. Exit codes are listed in
//! [`exit`].

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use crate::algebra::format::{to_json, JSON_SCHEMA};
use crate::algebra::{format_bivariate, series_vanishes, MPoly, Series};
use crate::dp::seq_abcde;
use crate::guess::{guess_algebraic, verify_guess, GuessConfig};
use crate::oracle;
use crate::sets::{RestrictionSpec, StepSet};
use crate::symbolic::{self, SymbolicError};

pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// Bad flags, unparsable sets, or a spec the chosen route rejects.
    pub const USAGE: i32 = 1;
    /// Routes disagree, or a verification check failed.
    pub const INCONSISTENT: i32 = 2;
    pub const NOT_FOUND: i32 = 3;
}

/// Extra DP terms used to confirm a guess.
pub const GUESS_CHECK_EXTRA: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "motzkin",
    version,
    about = "Restricted Motzkin paths: counts, guessed and derived algebraic equations",
    after_help = "Sets are literals such as {}, {1,4} or {2*r+1}; quote them in the shell."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a(0..N) from the numeric recurrences.
    Seq(SeqArgs),
    /// Print a(0..N) by exhaustive enumeration (bounded by MOTZKIN_ORACLE_GUARD).
    Oracle(SeqArgs),
    /// Fit F(x, P) to a(0..N) and confirm it on further terms.
    Guess(GuessArgs),
    /// Derive F(x, P) for forbidden peak heights A and valley heights B.
    Fab(FabArgs),
    /// Derive F(x, P) for forbidden up, down and flat run lengths C, D, E.
    Fcde(FcdeArgs),
    /// Cross-check enumeration, recurrences and the symbolic route.
    Verify(SeqArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// Forbidden peak heights.
    #[arg(long = "A", value_name = "SET", default_value = "{}")]
    pub a: StepSet,
    /// Forbidden valley heights.
    #[arg(long = "B", value_name = "SET", default_value = "{}")]
    pub b: StepSet,
    /// Forbidden up-run lengths.
    #[arg(long = "C", value_name = "SET", default_value = "{}")]
    pub c: StepSet,
    /// Forbidden down-run lengths.
    #[arg(long = "D", value_name = "SET", default_value = "{}")]
    pub d: StepSet,
    /// Forbidden flat-run lengths.
    #[arg(long = "E", value_name = "SET", default_value = "{}")]
    pub e: StepSet,
}

impl SpecArgs {
    pub fn spec(&self) -> RestrictionSpec {
        RestrictionSpec::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e.clone(),
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub sets: SpecArgs,
    /// Largest length.
    #[arg(long = "N", default_value_t = 10)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct GuessArgs {
    #[command(flatten)]
    pub sets: SpecArgs,
    /// Largest length; the fit uses a(0..N).
    #[arg(long = "N", default_value_t = 30)]
    pub n: usize,
    /// Maximum degree in P.
    #[arg(long, default_value_t = 2)]
    pub maxp: usize,
    /// Maximum degree in x.
    #[arg(long, default_value_t = 2)]
    pub maxx: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct FabArgs {
    #[arg(long = "A", value_name = "SET", default_value = "{}")]
    pub a: StepSet,
    #[arg(long = "B", value_name = "SET", default_value = "{}")]
    pub b: StepSet,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct FcdeArgs {
    #[arg(long = "C", value_name = "SET", default_value = "{}")]
    pub c: StepSet,
    #[arg(long = "D", value_name = "SET", default_value = "{}")]
    pub d: StepSet,
    #[arg(long = "E", value_name = "SET", default_value = "{}")]
    pub e: StepSet,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// A failed job, carrying its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Usage(String),
    Inconsistent(String),
    NotFound(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => exit::USAGE,
            Failure::Inconsistent(_) => exit::INCONSISTENT,
            Failure::NotFound(_) => exit::NOT_FOUND,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Inconsistent(m) | Failure::NotFound(m) => f.write_str(m),
        }
    }
}

impl From<SymbolicError> for Failure {
    fn from(e: SymbolicError) -> Self {
        match e {
            SymbolicError::StateCap(_) | SymbolicError::Dp(_) | SymbolicError::Guess(_) => {
                Failure::Usage(e.to_string())
            }
            SymbolicError::Algebra(_) | SymbolicError::Inconsistent(_) => {
                Failure::Inconsistent(e.to_string())
            }
        }
    }
}

fn join(terms: &[BigUint]) -> String {
    terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn spec_json(spec: &RestrictionSpec) -> serde_json::Value {
    json!({
        "A": spec.peaks.to_string(),
        "B": spec.valleys.to_string(),
        "C": spec.up_runs.to_string(),
        "D": spec.down_runs.to_string(),
        "E": spec.flat_runs.to_string(),
    })
}

fn render_terms(spec: &RestrictionSpec, terms: &[BigUint], format: Format) -> String {
    match format {
        Format::Text => join(terms),
        Format::Json => json!({
            "schema": JSON_SCHEMA,
            "spec": spec_json(spec),
            "terms": terms.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
        .to_string(),
    }
}

fn render_poly(p: &MPoly, format: Format) -> String {
    match format {
        Format::Text => format_bivariate(p),
        Format::Json => serde_json::to_string(&to_json(p)).expect("serializable"),
    }
}

fn cmd_seq(args: &SeqArgs) -> Result<String, Failure> {
    let spec = args.sets.spec();
    let terms = seq_abcde(&spec, args.n).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(render_terms(&spec, &terms, args.format))
}

fn cmd_oracle(args: &SeqArgs) -> Result<String, Failure> {
    let spec = args.sets.spec();
    let terms = oracle::sequence(args.n, &spec).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(render_terms(&spec, &terms, args.format))
}

fn cmd_guess(args: &GuessArgs) -> Result<String, Failure> {
    let spec = args.sets.spec();
    let terms = seq_abcde(&spec, args.n).map_err(|e| Failure::Usage(e.to_string()))?;
    let cfg = GuessConfig::new(args.maxp, args.maxx);
    let found = guess_algebraic(&terms, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let Some(f) = found else {
        return Err(Failure::NotFound("NOT_FOUND".into()));
    };
    let confirmed = verify_guess(&f, &spec, terms.len(), GUESS_CHECK_EXTRA)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    if !confirmed {
        return Err(Failure::NotFound("NOT_FOUND".into()));
    }
    Ok(render_poly(&f, args.format))
}

fn report_solution(sol: &symbolic::Solution, format: Format, err: &mut dyn Write) -> String {
    if !sol.minimal {
        let _ = writeln!(err, "warning: no proper factor certified; the polynomial may not be minimal");
    }
    render_poly(&sol.polynomial, format)
}

/// The symbolic route for a spec, if it has one.
pub fn symbolic_route(spec: &RestrictionSpec) -> Option<Result<symbolic::Solution, SymbolicError>> {
    if spec.has_height_restrictions() && spec.has_run_restrictions() {
        return None;
    }
    Some(if spec.has_run_restrictions() {
        symbolic::fcde(&spec.up_runs, &spec.down_runs, &spec.flat_runs)
    } else {
        symbolic::fab(&spec.peaks, &spec.valleys)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Check {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Pass => "PASS",
            Check::Fail => "FAIL",
            Check::Skip => "SKIP",
        })
    }
}

fn cmd_verify(args: &SeqArgs, err: &mut dyn Write) -> Result<String, Failure> {
    let spec = args.sets.spec();
    let limit = args.n.min(oracle::guard());
    let dp = seq_abcde(&spec, args.n);

    let enumeration = match &dp {
        Ok(terms) => {
            let counted = oracle::sequence(limit, &spec).map_err(|e| Failure::Usage(e.to_string()))?;
            if counted[..] == terms[..=limit] {
                Check::Pass
            } else {
                let _ = writeln!(err, "enumeration disagrees with the recurrences for n <= {limit}");
                Check::Fail
            }
        }
        Err(e) => {
            let _ = writeln!(err, "recurrences skipped: {e}");
            Check::Skip
        }
    };

    let reference = match dp {
        Ok(terms) => terms,
        Err(_) => oracle::sequence(limit, &spec).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    let symbolic = match symbolic_route(&spec) {
        None => {
            let _ = writeln!(err, "symbolic route skipped: mixed height and run restrictions");
            Check::Skip
        }
        Some(Err(e)) => {
            let _ = writeln!(err, "symbolic route failed: {e}");
            Check::Fail
        }
        Some(Ok(sol)) => {
            if series_vanishes(&sol.polynomial, &Series::from_counts(&reference)) {
                Check::Pass
            } else {
                let _ = writeln!(err, "symbolic polynomial does not vanish on a(0..{})", reference.len() - 1);
                Check::Fail
            }
        }
    };

    let checks = [("enumeration", enumeration), ("symbolic", symbolic)];
    let text = match args.format {
        Format::Text => format!("{enumeration},{symbolic}"),
        Format::Json => json!({
            "schema": JSON_SCHEMA,
            "spec": spec_json(&spec),
            "checks": checks
                .iter()
                .map(|(name, c)| json!({ "name": name, "status": c.to_string() }))
                .collect::<Vec<_>>(),
        })
        .to_string(),
    };
    if checks.iter().any(|(_, c)| *c == Check::Fail) {
        return Err(Failure::Inconsistent(text));
    }
    Ok(text)
}

/// Runs one job and returns its stdout text.
pub fn execute(cli: &Cli, err: &mut dyn Write) -> Result<String, Failure> {
    match &cli.command {
        Command::Seq(a) => cmd_seq(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Guess(a) => cmd_guess(a),
        Command::Fab(a) => Ok(report_solution(&symbolic::fab(&a.a, &a.b)?, a.format, err)),
        Command::Fcde(a) => Ok(report_solution(
            &symbolic::fcde(&a.c, &a.d, &a.e)?,
            a.format,
            err,
        )),
        Command::Verify(a) => cmd_verify(a, err),
    }
}

/// Parses `args` (including the program name), runs the job, and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
            exit::SUCCESS
        }
        Err(f) => {
            match &f {
                // Report lines belong on stdout even when a check fails.
                Failure::NotFound(m) | Failure::Inconsistent(m)
                    if matches!(cli.command, Command::Verify(_) | Command::Guess(_)) =>
                {
                    let _ = writeln!(out, "{m}");
                }
                _ => {
                    let _ = writeln!(err, "error: {f}");
                }
            }
            f.code()
        }
    }
}
