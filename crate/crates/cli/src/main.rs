//! `projtomo`: seeded experiments over the projector-tomography toolkit.
//! Every subcommand writes CSV with a header row to stdout or `--output`.
//!
//! Exit codes: 0 success, 1 validation error, 2 capacity error, 3 failed
//! selftest.

mod commands;
mod exact;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use projtomo_core::Error;

#[derive(Parser, Debug)]
#[command(name = "projtomo", version, about = "Projector tomography experiments")]
struct Cli {
    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distances and metric inequalities over random state pairs.
    Metrics(MetricsArgs),
    /// Jordan blocks of a seeded pair of rank-r projectors.
    Jordan(JordanArgs),
    /// Exact weak Schur sampling distribution for a uniform spectrum.
    Wss(WssArgs),
    /// Copy-count lower bounds, computed exactly.
    Threshold(ThresholdArgs),
    /// Exact expected PGM affinity and the 1 - 3rd/(2n) bound check.
    PgmAffinity(PgmArgs),
    /// Empirical fidelity moments of the pure-state PGM against their bounds.
    Hayashi(HayashiArgs),
    /// Per-trial record of the trace-to-Bures bootstrap.
    Bootstrap(BootstrapArgs),
    /// Robust-cover statistics of two learner runs.
    Covering(CoveringArgs),
    /// Runs the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct MetricsArgs {
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// Rank of projector-state pairs; omit for mixed states of random rank.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pairs: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct JordanArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct WssArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    d: usize,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long)]
    d: u64,
    /// Projector rank; omit for the pure-state bound.
    #[arg(long)]
    r: Option<u64>,
    /// Exact: `0.0125`, `1/80` and `1.25e-2` are the same value.
    #[arg(long, value_parser = exact::parse_rational)]
    epsilon: num_rational::BigRational,
}

#[derive(Args, Debug)]
struct PgmArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: Option<usize>,
    /// Treat `--n` and `--d` as maxima and sweep every `1 <= r <= d`.
    #[arg(long)]
    grid: bool,
}

#[derive(Args, Debug)]
struct HayashiArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    d: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 4)]
    kmax: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Learner {
    AdversarialDiscard,
    UniformTilt,
    ExactOracle,
    Hayashi,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Oracle {
    Exact,
    Noisy,
}

#[derive(Args, Debug)]
struct LearnerArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    epsilon: f64,
    #[arg(long, default_value_t = projtomo_core::bootstrap::DEFAULT_ALPHA)]
    alpha: f64,
    #[arg(long, value_enum, default_value = "adversarial-discard")]
    learner: Learner,
    /// Copies given to the Hayashi learner.
    #[arg(long, default_value_t = 64)]
    hayashi_copies: usize,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BootstrapArgs {
    #[command(flatten)]
    learner: LearnerArgs,
    #[arg(long, value_enum, default_value = "exact")]
    oracle: Oracle,
    /// Bures error of the noisy oracle.
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value_t = projtomo_core::bootstrap::DEFAULT_COPY_CONSTANT)]
    copy_constant: f64,
}

#[derive(Args, Debug)]
struct CoveringArgs {
    #[command(flatten)]
    learner: LearnerArgs,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Smaller Monte-Carlo samples and trial counts.
    #[arg(long)]
    fast: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Io(std::io::Error),
    Selftest(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Capacity(_)) => 2,
            Failure::Selftest(_) => 3,
            _ => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
            Failure::Selftest(n) => write!(f, "{n} selftest criteria failed"),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let csv = match cli.command {
        Command::Metrics(a) => commands::metrics(&a)?,
        Command::Jordan(a) => commands::jordan(&a)?,
        Command::Wss(a) => commands::wss(&a)?,
        Command::Threshold(a) => commands::threshold(&a)?,
        Command::PgmAffinity(a) => commands::pgm_affinity(&a)?,
        Command::Hayashi(a) => commands::hayashi(&a)?,
        Command::Bootstrap(a) => commands::bootstrap(&a)?,
        Command::Covering(a) => commands::covering(&a)?,
        Command::Selftest(a) => {
            let (csv, failed) = commands::selftest(&a);
            emit(cli.output, &csv)?;
            return if failed == 0 { Ok(()) } else { Err(Failure::Selftest(failed)) };
        }
    };
    emit(cli.output, &csv)
}

fn emit(path: Option<PathBuf>, csv: &str) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, csv).map_err(Failure::Io),
        None => std::io::stdout().lock().write_all(csv.as_bytes()).map_err(Failure::Io),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("projtomo: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
