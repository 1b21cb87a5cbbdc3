use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use convex_order::rational::parse_rational;
use convex_order::theorems::Theorem;
use convex_order::Rational;
use convex_order_cli::family::{Family, ScanSpec};
use convex_order_cli::{agree, check, scan, threshold, CliError, Result};

#[derive(Parser)]
#[command(name = "convex-order", version, about = "Exact convex-order decisions between quadrature rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether LHS(f) <= RHS(f) for every convex f.
    Check(CheckArgs),
    /// Find the exact boundary of the holds-region along one parameter.
    Threshold(ThresholdArgs),
    /// Decide every grid point of a sweep and write CSV.
    Scan(SweepArgs),
    /// Compare closed-form theorem checkers with the generic decider.
    Agree(AgreeArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Preset (uniform, midpoint, trapezoid, simpson), JSON file, or inline JSON.
    lhs_pos: Option<String>,
    rhs_pos: Option<String>,
    #[arg(long)]
    lhs: Option<String>,
    #[arg(long)]
    rhs: Option<String>,
    /// Inputs list (a, alpha) pairs, each meaning a·f(alpha·x + (1-alpha)·y).
    #[arg(long)]
    paper_convention: bool,
    /// Atom positions are given on [X, Y]; output is reported there too.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_hyphen_values = true)]
    interval: Option<Vec<String>>,
    /// Add the crossing profile and both decision paths.
    #[arg(long)]
    diagnose: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// symmetric3, endpoint4, twoVsThree, bp1 or custom.
    #[arg(long)]
    family: String,
    /// name=from:to:step, all rational.
    #[arg(long)]
    sweep: String,
    /// name=value; repeatable.
    #[arg(long)]
    fix: Vec<String>,
    /// Functional templates for the custom family.
    #[arg(long)]
    lhs: Option<String>,
    #[arg(long)]
    rhs: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThresholdArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, default_value_t = 1000)]
    max_denominator: u64,
}

#[derive(Args)]
struct AgreeArgs {
    /// thlH, thrH or thqo.
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Parameter records evaluated before the random draws (file or inline JSON).
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn spec_from(args: &SweepArgs) -> Result<ScanSpec> {
    let family = Family::parse(&args.family, args.lhs.as_deref(), args.rhs.as_deref())?;
    ScanSpec::new(family, &args.sweep, &args.fix)
}

fn read_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        Ok(std::fs::read_to_string(arg)?)
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => {
            let lhs = args.lhs.or(args.lhs_pos).ok_or_else(|| CliError::input("missing LHS functional"))?;
            let rhs = args.rhs.or(args.rhs_pos).ok_or_else(|| CliError::input("missing RHS functional"))?;
            let interval: Option<(Rational, Rational)> = match &args.interval {
                Some(v) => Some((parse_rational(&v[0])?, parse_rational(&v[1])?)),
                None => None,
            };
            if let Some((lo, hi)) = &interval {
                if hi <= lo {
                    return Err(CliError::input("--interval needs X < Y"));
                }
            }
            let a = check::load_functional(&lhs, args.paper_convention, interval.as_ref())?;
            let b = check::load_functional(&rhs, args.paper_convention, interval.as_ref())?;
            let (decision, json) = check::check(&a, &b, args.diagnose, interval.as_ref())?;
            let mut out = output(&args.out)?;
            writeln!(out, "{json}")?;
            out.flush()?;
            Ok(if decision.verdict.holds() { 0 } else { 1 })
        }
        Command::Threshold(args) => {
            let spec = spec_from(&args.sweep)?;
            let report = threshold::find_threshold(&spec, args.max_denominator)?;
            let mut out = output(&args.sweep.out)?;
            writeln!(out, "{}", report.to_json())?;
            out.flush()?;
            Ok(0)
        }
        Command::Scan(args) => {
            let spec = spec_from(&args)?;
            let rows = scan::scan(&spec)?;
            scan::write_csv(&spec, &rows, output(&args.out)?)?;
            Ok(0)
        }
        Command::Agree(args) => {
            let theorem = match &args.theorem {
                Some(name) => Some(Theorem::from_name(name).ok_or_else(|| CliError::input(format!("unknown theorem `{name}`")))?),
                None => None,
            };
            let forced = match &args.params {
                Some(p) => agree::parse_params(&read_arg(p)?)?,
                None => Vec::new(),
            };
            let summary = agree::run(theorem, args.samples, args.seed, forced)?;
            let mut out = output(&args.out)?;
            for r in &summary.disagreements {
                writeln!(out, "{}", r.to_json())?;
            }
            writeln!(out, "{}", summary.to_json())?;
            out.flush()?;
            Ok(if summary.disagreements.is_empty() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
