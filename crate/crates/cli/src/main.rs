mod args;
mod commands;
mod output;

use std::io;
use std::process::ExitCode;

use args::{Cli, Command, Experiment};
use clap::Parser;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl From<noisy_cheb::Error> for CliError {
    fn from(e: noisy_cheb::Error) -> Self {
        match e {
            noisy_cheb::Error::InvalidArgument(m) => CliError::Usage(m),
            noisy_cheb::Error::NumericFailure(m) => CliError::Numeric(m),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("NOISYCHEB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        CliError::Usage(format!("NOISYCHEB_THREADS must be an integer, got `{raw}`"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Fit(a) => commands::cmd_fit(a),
        Command::CpScan(a) => commands::cmd_cp_scan(a),
        Command::Experiment(Experiment::Convergence(a)) => commands::cmd_convergence(a),
        Command::Experiment(Experiment::Histogram(a)) => commands::cmd_histogram(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("noisycheb: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
