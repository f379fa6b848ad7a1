//! Command-line front end for `stringy-core`: verification suites, E-function
//! computation, and the JSON instance format.

pub mod document;
pub mod expr;
pub mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stringy_core::exactpoly::is_prime;
use stringy_core::instances::{
    build_instance, build_series_library, verify_charts, verify_instance, verify_series,
    ChartOptions, InstanceId,
};
use stringy_core::report::VerificationReport;
use stringy_core::stringy::{duality_outcome, StratifiedResolution};
use stringy_core::RationalFunction;

pub use document::{load_instance, parse_instance, DocumentError, InstanceDocument};
pub use expr::{parse_expression, parse_rational_function, Expr, ParseError};

/// Brute force above this prime needs `--allow-large-prime`.
pub const LARGE_PRIME: u64 = 7;

pub const BRUTEFORCE_PRIME_ENV: &str = "STRINGY_BRUTEFORCE_PRIME";

#[derive(Debug, Parser)]
#[command(
    name = "stringy",
    version,
    about = "Exact stringy E-functions of stratified resolutions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Print the stringy E-function.
    Compute(ComputeArgs),
    /// Print the stringy Euler number.
    Euler(Source),
    /// Print entries of the series library.
    Series(SeriesArgs),
    /// Write a built-in instance as a JSON document.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct Source {
    /// Built-in instance: N, X or M.
    #[arg(long)]
    pub instance: Option<InstanceId>,
    /// JSON instance document.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Run the chart suite (strict transforms, singular loci, brute force).
    #[arg(long)]
    pub charts: bool,
    /// Run the series cross-checks.
    #[arg(long)]
    pub series: bool,
    /// Prime for the brute-force singular-point search; repeatable. Implies --charts.
    #[arg(long = "bruteforce-prime", value_name = "P")]
    pub bruteforce_primes: Vec<u64>,
    /// Permit brute-force primes above 7.
    #[arg(long)]
    pub allow_large_prime: bool,
    /// For --file instances, also require Poincaré duality at the document's dimension.
    #[arg(long)]
    pub check_duality: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, conflicts_with = "latex")]
    pub json: bool,
    #[arg(long)]
    pub latex: bool,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// Entry name or alias (e.g. EQ14, hodge-smooth-part); lists entries when omitted.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long, conflicts_with = "latex")]
    pub json: bool,
    #[arg(long)]
    pub latex: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub instance: InstanceId,
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Computation(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Text printed to standard output and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            success: true,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        if self.success {
            ExitCode::SUCCESS
        } else {
            ExitCode::FAILURE
        }
    }
}

enum Loaded {
    Builtin(InstanceId),
    File(StratifiedResolution),
}

fn load(source: &Source) -> Result<Loaded, CliError> {
    match (&source.instance, &source.file) {
        (Some(id), None) => Ok(Loaded::Builtin(*id)),
        (None, Some(path)) => Ok(Loaded::File(load_instance(path)?)),
        _ => Err(CliError::Usage(
            "one of --instance or --file is required".into(),
        )),
    }
}

fn computation(e: impl std::fmt::Display) -> CliError {
    CliError::Computation(e.to_string())
}

fn builtin(id: InstanceId) -> Result<stringy_core::instances::ModuliInstance, CliError> {
    build_instance(id).map_err(computation)
}

fn bruteforce_primes(args: &VerifyArgs, env: Option<&str>) -> Result<Vec<u64>, CliError> {
    let primes = if !args.bruteforce_primes.is_empty() {
        args.bruteforce_primes.clone()
    } else if let Some(raw) = env {
        let p = raw.trim().parse().map_err(|_| {
            CliError::Usage(format!("{BRUTEFORCE_PRIME_ENV}=`{raw}` is not an integer"))
        })?;
        vec![p]
    } else {
        ChartOptions::default().bruteforce_primes
    };
    for &p in &primes {
        if p < 3 || !is_prime(p) {
            return Err(CliError::Usage(format!(
                "brute-force prime {p} must be an odd prime"
            )));
        }
        if p > LARGE_PRIME && !args.allow_large_prime {
            return Err(CliError::Usage(format!(
                "brute-force prime {p} enumerates {p}^7 points; pass --allow-large-prime to run it"
            )));
        }
    }
    Ok(primes)
}

fn verify_file(
    path: &std::path::Path,
    res: &StratifiedResolution,
    check_duality: bool,
) -> VerificationReport {
    let mut r = VerificationReport::new(format!("file {}", path.display()));
    r.absorb(res.validate());
    let est = match res.assemble() {
        Ok(e) => e,
        Err(e) => {
            r.fail("assemble", e);
            return r;
        }
    };
    r.pass("assemble", &est);
    let polynomial = est.is_polynomial().is_ok();
    r.pass("polynomial", if polynomial { "yes" } else { "no" });
    match res.stringy_euler() {
        Ok(b) => match est.diagonal_limit_at_one() {
            Ok(limit) => {
                r.check(
                    "stringy Euler number",
                    limit == b.total,
                    format!("euler = {} (limit {limit})", b.total),
                );
            }
            Err(e) => r.fail("stringy Euler number", e),
        },
        Err(e) => r.skip("stringy Euler number", e),
    }
    match duality_outcome(&est, res.dimension) {
        Ok(o) if check_duality => {
            r.check(
                format!("Poincaré duality (d = {})", res.dimension),
                o.holds(),
                &o,
            );
        }
        Ok(o) => r.skip(
            format!("Poincaré duality (d = {})", res.dimension),
            format!("not requested; {o}"),
        ),
        Err(e) if check_duality => r.fail("Poincaré duality", e),
        Err(e) => r.skip("Poincaré duality", e),
    }
    r
}

fn verify(args: &VerifyArgs, env_prime: Option<&str>) -> Result<Outcome, CliError> {
    let charts = args.charts || !args.bruteforce_primes.is_empty();
    let explicit =
        args.source.instance.is_some() || args.source.file.is_some() || charts || args.series;
    let mut reports = Vec::new();
    match (&args.source.instance, &args.source.file) {
        (Some(id), None) => reports.push(verify_instance(&builtin(*id)?)),
        (None, Some(path)) => {
            let res = document::InstanceDocument::from_json(
                &std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
                    path: path.clone(),
                    source,
                })?,
            )?
            .to_resolution()?;
            reports.push(verify_file(path, &res, args.check_duality));
        }
        (None, None) => {}
        _ => {
            return Err(CliError::Usage(
                "--instance and --file are exclusive".into(),
            ))
        }
    }
    if !explicit {
        for id in InstanceId::ALL {
            reports.push(verify_instance(&builtin(id)?));
        }
    }
    if args.series || !explicit {
        reports.push(verify_series());
    }
    if charts || !explicit {
        let opts = ChartOptions {
            bruteforce_primes: bruteforce_primes(args, env_prime)?,
        };
        reports.push(verify_charts(&opts));
    }
    let mut out = String::new();
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for r in &reports {
        writeln!(out, "{r}").unwrap();
        passed += r.count(stringy_core::report::Status::Pass);
        failed += r.count(stringy_core::report::Status::Fail);
        skipped += r.count(stringy_core::report::Status::Skip);
    }
    let verdict = if failed == 0 { "PASS" } else { "FAIL" };
    writeln!(
        out,
        "== {verdict}: {passed} passed, {failed} failed, {skipped} skipped"
    )
    .unwrap();
    Ok(Outcome {
        stdout: out,
        success: failed == 0,
    })
}

fn stringy_function(source: &Source) -> Result<RationalFunction, CliError> {
    match load(source)? {
        Loaded::Builtin(id) => builtin(id)?.resolution.assemble().map_err(computation),
        Loaded::File(res) => res.assemble().map_err(computation),
    }
}

fn format_function(f: &RationalFunction, json: bool, latex: bool) -> Result<String, CliError> {
    Ok(if json {
        render::to_json(f).map_err(computation)?
    } else if latex {
        render::to_latex(f).map_err(computation)?
    } else {
        f.to_string()
    })
}

fn compute(args: &ComputeArgs) -> Result<Outcome, CliError> {
    let est = stringy_function(&args.source)?;
    Ok(Outcome::ok(
        format_function(&est, args.json, args.latex)? + "\n",
    ))
}

fn euler(source: &Source) -> Result<Outcome, CliError> {
    let res = match load(source)? {
        Loaded::Builtin(id) => builtin(id)?.resolution,
        Loaded::File(res) => res,
    };
    let total = res.stringy_euler().map_err(computation)?.total;
    Ok(Outcome::ok(format!("{total}\n")))
}

fn series(args: &SeriesArgs) -> Result<Outcome, CliError> {
    let lib = build_series_library();
    let Some(name) = &args.name else {
        let mut out = String::new();
        for e in lib.entries() {
            writeln!(out, "{:<12} {:<28} {}", e.alias, e.name, e.description).unwrap();
        }
        return Ok(Outcome::ok(out));
    };
    let entry = lib.get(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown series `{name}`; known: {}",
            lib.names().join(", ")
        ))
    })?;
    let body = format_function(entry.value.value(), args.json, args.latex)?;
    if args.json || args.latex {
        return Ok(Outcome::ok(body + "\n"));
    }
    Ok(Outcome::ok(format!(
        "{} ({}): {}\n{}\n",
        entry.alias, entry.name, entry.description, body
    )))
}

fn export(args: &ExportArgs) -> Result<Outcome, CliError> {
    let inst = builtin(args.instance)?;
    let doc = InstanceDocument::from_resolution(&inst.resolution)?;
    let json = doc.to_json() + "\n";
    match &args.output {
        Some(path) => {
            std::fs::write(path, &json).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(json)),
    }
}

/// Runs a parsed command. `env_prime` is the value of
/// [`BRUTEFORCE_PRIME_ENV`], if set.
pub fn run(cli: &Cli, env_prime: Option<&str>) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify(a) => verify(a, env_prime),
        Command::Compute(a) => compute(a),
        Command::Euler(s) => euler(s),
        Command::Series(a) => series(a),
        Command::Export(a) => export(a),
    }
}
