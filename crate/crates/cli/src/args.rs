use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use noisy_cheb::{NoiseKind, TargetFunction};

#[derive(Debug, Parser)]
#[command(
    name = "noisycheb",
    version,
    about = "Chebyshev approximation of noisy samples with Mallows' Cp degree selection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit one sample set and write the truncated series as JSON.
    Fit(FitArgs),
    /// Write the Cp curve of one sample set as CSV.
    CpScan(ScanArgs),
    /// Repeated-trial studies.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Error and selected degree against N = 2^k.
    Convergence(ConvergenceArgs),
    /// Error and selected degree over many trials at one N.
    Histogram(HistogramArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Built-in target: runge, abs or abs3.
    #[arg(long, value_parser = parse_function, required_unless_present = "input", conflicts_with = "input")]
    pub function: Option<TargetFunction>,

    /// File of y-values at cos(iπ/N), one per line, '#' lines skipped.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Number of sample points N + 1.
    #[arg(long, default_value_t = 8193, conflicts_with = "input")]
    pub n_samples: usize,

    /// Noise scale; implies gaussian noise when --noise is absent.
    #[arg(long, conflicts_with = "input")]
    pub sigma: Option<f64>,

    #[arg(long, value_parser = parse_noise, conflicts_with = "input")]
    pub noise: Option<NoiseKind>,

    #[arg(long, default_value_t = 0, conflicts_with = "input")]
    pub seed: u64,

    /// Degree cap for Cp; defaults to ⌊(N + 1)/2⌋.
    #[arg(long)]
    pub nbar: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub sample: SampleArgs,

    /// Include the Cp curve in the document.
    #[arg(long)]
    pub emit_cp_curve: bool,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub sample: SampleArgs,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long, value_parser = parse_function)]
    pub function: TargetFunction,

    #[arg(long)]
    pub sigma: f64,

    #[arg(long, value_parser = parse_noise, default_value = "gaussian")]
    pub noise: NoiseKind,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub noise: NoiseArgs,

    #[arg(long, default_value_t = 4)]
    pub exp_min: u32,

    #[arg(long, default_value_t = 16)]
    pub exp_max: u32,

    #[arg(long, default_value_t = 10)]
    pub trials: usize,

    /// Allow exponents above 24.
    #[arg(long)]
    pub force: bool,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HistogramArgs {
    #[command(flatten)]
    pub noise: NoiseArgs,

    /// Number of sample points N + 1.
    #[arg(long, default_value_t = 8193)]
    pub n_samples: usize,

    #[arg(long, default_value_t = 1000)]
    pub trials: usize,

    /// Per-trial CSV destination; standard output by default.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// Summary JSON destination; standard error by default.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

fn parse_function(s: &str) -> Result<TargetFunction, String> {
    s.parse().map_err(|e: noisy_cheb::Error| e.to_string())
}

fn parse_noise(s: &str) -> Result<NoiseKind, String> {
    s.parse().map_err(|e: noisy_cheb::Error| e.to_string())
}
