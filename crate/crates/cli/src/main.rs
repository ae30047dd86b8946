//! Command-line front end: compute spectral tables, run verification
//! suites over instances or parameter grids, and dump concrete schemes.
//!
//! Exit codes: 0 all checks pass, 1 verification mismatch, 2 usage error,
//! 3 oracle size guard tripped.

mod grid;
mod report;
mod suites;
mod tables;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grid::GridSpec;
use rayon::prelude::*;
use report::{InstanceReport, VerificationReport};
use scheme_atlas::families::FamilyParams;
use scheme_atlas::oracle::{OracleOptions, DEFAULT_MAX_POINTS};
use scheme_atlas::scheme::MonomialOrder;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use suites::SuiteError;

#[derive(Parser)]
#[command(
    name = "scheme-atlas",
    version,
    about = "Exact spectral data and verification suites for association schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute P, Q, valencies, multiplicities and both structure-constant
    /// tensors for one instance and write them as JSON.
    Tables(TablesArgs),
    /// Run a verification suite over one instance or a parameter grid.
    Verify(VerifyArgs),
    /// Enumerate a scheme's points and dump its relation matrix as text.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Hamming,
    Johnson,
    Bilinear,
    Grassmann,
    Nbj,
    Attenuated,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    q: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    l: Option<i64>,
}

#[derive(Args)]
struct TablesArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Output path for the JSON document (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write the P and Q matrices as PREFIX.p.csv and PREFIX.q.csv.
    #[arg(long, value_name = "PREFIX")]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    /// Closed-form Krein values vs spectral sums, support sets, raising
    /// coefficients, grlex Q-polynomial verdict, and sum rules.
    Krein,
    /// Multivariate Q-polynomial criterion.
    Qpoly,
    /// Multivariate P-polynomial criterion.
    Ppoly,
    /// Matrix-level ground truth from enumerated points.
    Oracle,
    /// Simplex-domain property and Leonard-pair conditions.
    Leonard,
    /// Splitting recurrences and degree-one shift identities.
    Recurrences,
    /// q-number and q-binomial identities.
    Identities,
}

impl SuiteName {
    fn as_str(self) -> &'static str {
        match self {
            SuiteName::Krein => "krein",
            SuiteName::Qpoly => "qpoly",
            SuiteName::Ppoly => "ppoly",
            SuiteName::Oracle => "oracle",
            SuiteName::Leonard => "leonard",
            SuiteName::Recurrences => "recurrences",
            SuiteName::Identities => "identities",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteName,
    #[command(flatten)]
    family: FamilyArgs,
    /// Parameter grid, e.g. "r=3..5,n=3..8,k=1..n-1"; bounds may reference
    /// earlier names. Invalid combinations are skipped and counted.
    #[arg(long)]
    grid: Option<String>,
    /// Monomial order for the qpoly/ppoly suites.
    #[arg(long, value_enum, default_value = "grlex")]
    order: OrderName,
    /// Largest N for the recurrence grids (the q-analog grids use N-2).
    #[arg(long, default_value_t = 10)]
    n_max: i64,
    /// Base point for the leonard suite.
    #[arg(long, default_value_t = 0)]
    x0: usize,
    /// Sweep every base point in the leonard suite.
    #[arg(long)]
    sweep: bool,
    /// Output path for the report JSON (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderName {
    Lex,
    Grlex,
    Revlex,
    Revgrlex,
}

impl From<OrderName> for MonomialOrder {
    fn from(o: OrderName) -> MonomialOrder {
        match o {
            OrderName::Lex => MonomialOrder::Lex,
            OrderName::Grlex => MonomialOrder::Grlex,
            OrderName::Revlex => MonomialOrder::RevLex,
            OrderName::Revgrlex => MonomialOrder::RevGrlex,
        }
    }
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Output path for the relation dump (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn oracle_options() -> OracleOptions {
    let max_points = std::env::var("SCHEME_ATLAS_MAX_POINTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_POINTS);
    OracleOptions { max_points }
}

/// The parameter names each family draws from a grid or the flags.
fn family_param_names(f: FamilyName) -> &'static [&'static str] {
    match f {
        FamilyName::Hamming => &["n", "q"],
        FamilyName::Johnson => &["n", "k"],
        FamilyName::Bilinear => &["n", "l", "q"],
        FamilyName::Grassmann => &["n", "m", "q"],
        FamilyName::Nbj => &["r", "n", "k"],
        FamilyName::Attenuated => &["q", "n", "m", "l"],
    }
}

fn family_params(f: FamilyName, get: impl Fn(&str) -> Option<i64>) -> Result<FamilyParams, String> {
    let need = |name: &str| get(name).ok_or_else(|| format!("missing parameter --{name}"));
    Ok(match f {
        FamilyName::Hamming => FamilyParams::Hamming { n: need("n")?, q: need("q")? },
        FamilyName::Johnson => FamilyParams::Johnson { n: need("n")?, k: need("k")? },
        FamilyName::Bilinear => {
            FamilyParams::Bilinear { n: need("n")?, l: need("l")?, q: need("q")? }
        }
        FamilyName::Grassmann => {
            FamilyParams::Grassmann { n: need("n")?, m: need("m")?, q: need("q")? }
        }
        FamilyName::Nbj => {
            FamilyParams::NonbinaryJohnson { r: need("r")?, n: need("n")?, k: need("k")? }
        }
        FamilyName::Attenuated => FamilyParams::Attenuated {
            n: need("n")?,
            m: need("m")?,
            l: need("l")?,
            q: need("q")?,
        },
    })
}

fn flag_value(args: &FamilyArgs, name: &str) -> Option<i64> {
    match name {
        "n" => args.n,
        "k" => args.k,
        "q" => args.q,
        "r" => args.r,
        "m" => args.m,
        "l" => args.l,
        _ => None,
    }
}

fn family_tag(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Hamming => "hamming",
        FamilyName::Johnson => "johnson",
        FamilyName::Bilinear => "bilinear",
        FamilyName::Grassmann => "grassmann",
        FamilyName::Nbj => "nbj",
        FamilyName::Attenuated => "attenuated",
    }
}

enum CliError {
    Usage(String),
    Guard(String),
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> CliError {
        match e {
            SuiteError::Usage(m) => CliError::Usage(m),
            SuiteError::Guard(m) => CliError::Guard(m),
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// The parameter assignments a verify run covers, with the family applied.
fn instance_list(
    args: &VerifyArgs,
) -> Result<(Option<String>, Vec<(Vec<(String, i64)>, Result<FamilyParams, String>)>), CliError> {
    let family = args
        .family
        .family
        .ok_or_else(|| CliError::Usage("this suite needs --family".into()))?;
    let names = family_param_names(family);
    match &args.grid {
        Some(spec) => {
            let grid = GridSpec::parse(spec).map_err(CliError::Usage)?;
            let assignments = grid.expand().map_err(CliError::Usage)?;
            let list = assignments
                .into_iter()
                .map(|a| {
                    let get = |name: &str| {
                        a.get(name).copied().or_else(|| flag_value(&args.family, name))
                    };
                    let params = family_params(family, get);
                    let bound: Vec<(String, i64)> = names
                        .iter()
                        .filter_map(|n| get(n).map(|v| (n.to_string(), v)))
                        .collect();
                    (bound, params)
                })
                .collect();
            Ok((Some(spec.clone()), list))
        }
        None => {
            let get = |name: &str| flag_value(&args.family, name);
            let params = family_params(family, get);
            let bound: Vec<(String, i64)> = names
                .iter()
                .filter_map(|n| get(n).map(|v| (n.to_string(), v)))
                .collect();
            Ok((None, vec![(bound, params)]))
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    let started = Instant::now();
    let order: MonomialOrder = args.order.into();
    let mut report = VerificationReport {
        suite: args.suite.as_str().to_string(),
        order: matches!(args.suite, SuiteName::Qpoly | SuiteName::Ppoly)
            .then(|| order.name().to_string()),
        grid: args.grid.clone(),
        instances: Vec::new(),
        skipped_invalid: 0,
        ok: false,
        timing_ms: 0,
    };
    match args.suite {
        SuiteName::Recurrences => {
            let checks = suites::run_recurrences(args.n_max, &[2, 3]);
            report.instances.push(suites::instance_report(None, Vec::new(), checks));
        }
        SuiteName::Identities => {
            let checks = suites::run_identities(12, &[2, 3, 4]);
            report.instances.push(suites::instance_report(None, Vec::new(), checks));
        }
        _ => {
            let (_, list) = instance_list(args)?;
            let family = args.family.family.expect("validated by instance_list");
            if matches!(args.suite, SuiteName::Oracle | SuiteName::Leonard)
                && !matches!(family, FamilyName::Nbj | FamilyName::Attenuated)
            {
                return Err(CliError::Usage(
                    "the oracle and leonard suites support --family nbj and attenuated only"
                        .into(),
                ));
            }
            let tag = family_tag(family);
            let opts = oracle_options();
            // grid points that fail parameter validation are skipped and
            // counted; without a grid a bad parameter set is a usage error
            let mut runs: Vec<(Vec<(String, i64)>, FamilyParams)> = Vec::new();
            for (bound, params) in list {
                match params {
                    Ok(p) => runs.push((bound, p)),
                    Err(m) if args.grid.is_none() => return Err(CliError::Usage(m)),
                    Err(_) => report.skipped_invalid += 1,
                }
            }
            let results: Vec<Result<InstanceReport, CliError>> = runs
                .into_par_iter()
                .map(|(bound, params)| {
                    let checks = match args.suite {
                        SuiteName::Krein => suites::run_krein(&params),
                        SuiteName::Qpoly => suites::run_qpoly(&params, order),
                        SuiteName::Ppoly => suites::run_ppoly(&params, order),
                        SuiteName::Oracle => suites::run_oracle(&params, opts),
                        SuiteName::Leonard => {
                            let base_points: Vec<usize> = if args.sweep {
                                let s = suites::concrete_for(&params, opts)?;
                                (0..s.size).collect()
                            } else {
                                vec![args.x0]
                            };
                            suites::run_leonard(&params, opts, &base_points)
                        }
                        _ => unreachable!(),
                    };
                    match checks {
                        Ok(checks) => {
                            Ok(suites::instance_report(Some(tag.to_string()), bound, checks))
                        }
                        Err(e) => Err(e.into()),
                    }
                })
                .collect();
            for result in results {
                match result {
                    Ok(instance) => report.instances.push(instance),
                    Err(CliError::Usage(m)) if args.grid.is_some() => {
                        // grid points rejected by the family constructor
                        let _ = m;
                        report.skipped_invalid += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    report.finalize();
    report.timing_ms = started.elapsed().as_millis();
    Ok(report)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Tables(args) => {
            let family = args
                .family
                .family
                .ok_or_else(|| CliError::Usage("tables needs --family".into()))?;
            let params = family_params(family, |n| flag_value(&args.family, n))
                .map_err(CliError::Usage)?;
            tables::write_tables(&params, family_tag(family), &args.output, &args.csv)?;
            Ok(true)
        }
        Command::Verify(args) => {
            let report = run_verify(&args)?;
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            write_output(&args.output, &text)?;
            Ok(report.ok)
        }
        Command::Dump(args) => {
            let family = args
                .family
                .family
                .ok_or_else(|| CliError::Usage("dump needs --family".into()))?;
            let params = family_params(family, |n| flag_value(&args.family, n))
                .map_err(CliError::Usage)?;
            let scheme = suites::concrete_for(&params, oracle_options())?;
            let mut buf = Vec::new();
            scheme
                .write_relation_dump(&mut buf)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let text = String::from_utf8(buf).map_err(|e| CliError::Usage(e.to_string()))?;
            write_output(&args.output, text.trim_end())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Guard(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
