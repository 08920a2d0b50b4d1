//! Command-line front end: seeded generators, single-series diagnostics,
//! panel spectra against the random-matrix density, and the desk-scale
//! exponent table. Every run prints one JSON report to stdout; identical
//! invocations produce identical bytes.

mod error;
mod ingest;
mod pipeline;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "fluctus",
    version,
    about = "Scaling, spectral, and entropy diagnostics for time series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Write a seeded synthetic series to a CSV file.
    Generate(GenerateArgs),
    /// Run one diagnostic on a single-series CSV file.
    Analyze(AnalyzeArgs),
    /// Correlation spectrum of a panel file vs the random-matrix density.
    Rmt(RmtArgs),
    /// Shorthand for `analyze --method apen`.
    Apen(ApenArgs),
    /// Hurst and fluctuation exponents for the standard generator lineup.
    ReportTable1(Table1Args),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Process {
    Gaussian,
    Walk,
    Garch,
    Cml,
}

impl Process {
    pub fn as_str(self) -> &'static str {
        match self {
            Process::Gaussian => "gaussian",
            Process::Walk => "walk",
            Process::Garch => "garch",
            Process::Cml => "cml",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Hurst,
    Dfa,
    Spectrum,
    Acf,
    Tails,
    Apen,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Hurst => "hurst",
            Method::Dfa => "dfa",
            Method::Spectrum => "spectrum",
            Method::Acf => "acf",
            Method::Tails => "tails",
            Method::Apen => "apen",
        }
    }
}

#[derive(clap::Args)]
pub struct GenerateArgs {
    /// Process to simulate.
    #[arg(long, value_enum)]
    pub process: Process,
    /// Recorded series length.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Output CSV path (single `value` column).
    #[arg(long)]
    pub out: PathBuf,
    /// Step scale (walk only).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Starting level (walk only).
    #[arg(long)]
    pub x0: Option<f64>,
    /// Baseline variance (garch only).
    #[arg(long)]
    pub alpha0: Option<f64>,
    /// Squared-shock feedback (garch only).
    #[arg(long)]
    pub alpha1: Option<f64>,
    /// Variance persistence (garch only).
    #[arg(long)]
    pub beta1: Option<f64>,
    /// Accept alpha1 + beta1 >= 1 (garch only).
    #[arg(long)]
    pub allow_nonstationary: bool,
    /// Ring size (cml only).
    #[arg(long)]
    pub sites: Option<usize>,
    /// Map parameter of f(y) = 1 - a y^2 (cml only).
    #[arg(long)]
    pub a: Option<f64>,
    /// Diffusive coupling strength (cml only).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Discarded leading iterations (cml only).
    #[arg(long)]
    pub transient: Option<usize>,
    /// Recorded lattice site (cml only).
    #[arg(long)]
    pub site: Option<usize>,
}

#[derive(clap::Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Input CSV whose header names a `price` or `value` column.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Smallest box size (hurst/dfa only).
    #[arg(long)]
    pub tau_min: Option<usize>,
    /// Largest box size (hurst/dfa only).
    #[arg(long)]
    pub tau_max: Option<usize>,
    /// Embedding dimension (apen only).
    #[arg(long)]
    pub m: Option<usize>,
    /// Match tolerance in series units (apen only).
    #[arg(long)]
    pub r: Option<f64>,
    /// Order-statistic fraction per side (tails only).
    #[arg(long)]
    pub tail_fraction: Option<f64>,
    /// Largest autocorrelation lag (acf only).
    #[arg(long)]
    pub max_lag: Option<usize>,
    /// Directory for plot-ready data files (hurst/dfa/spectrum/acf).
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct ApenArgs {
    /// Input CSV whose header names a `price` or `value` column.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Embedding dimension.
    #[arg(long)]
    pub m: Option<usize>,
    /// Match tolerance in series units.
    #[arg(long)]
    pub r: Option<f64>,
}

impl ApenArgs {
    fn into_analyze(self) -> AnalyzeArgs {
        AnalyzeArgs {
            method: Method::Apen,
            input: self.input,
            tau_min: None,
            tau_max: None,
            m: self.m,
            r: self.r,
            tail_fraction: None,
            max_lag: None,
            plot_dir: None,
        }
    }
}

#[derive(clap::Args)]
pub struct RmtArgs {
    /// Headerless panel CSV, one variable per row.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Histogram bin count.
    #[arg(long)]
    pub bins: usize,
    /// Directory for histogram/theory plot files.
    #[arg(long)]
    pub plot_dir: Option<PathBuf>,
}

#[derive(clap::Args)]
pub struct Table1Args {
    #[arg(long)]
    pub seed: u64,
    /// Series length per generator row.
    #[arg(long, default_value_t = 3000)]
    pub n: usize,
    /// Optional returns CSV appended as a fourth row.
    #[arg(long)]
    pub returns: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => pipeline::run_generate(args),
        Command::Analyze(args) => pipeline::run_analyze(args, "analyze"),
        Command::Apen(args) => pipeline::run_analyze(args.into_analyze(), "apen"),
        Command::Rmt(args) => pipeline::run_rmt(args),
        Command::ReportTable1(args) => pipeline::run_table1(args),
    };
    match outcome {
        Ok(json) => println!("{json}"),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
