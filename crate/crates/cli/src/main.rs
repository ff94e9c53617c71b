mod args;
mod commands;
mod output;
mod suites;

use std::process::ExitCode;

use clap::Parser;
use zetat_core::Error;

/// Everything that can end a run early, with its exit status.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// A check or assertion failed; the report was still written.
    CheckFailed(String),
    Io(std::io::Error),
    Config(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::InvalidSignature(_) | Error::SignatureParse { .. } => 2,
                Error::InvalidN { .. } | Error::QuadratureCapExceeded { .. } => 3,
                Error::QuadratureNonConvergence { .. } => 4,
                Error::IdentityViolation { .. } => 5,
                _ => 1,
            },
            CliError::CheckFailed(_) | CliError::Io(_) | CliError::Config(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::CheckFailed(msg) => write!(f, "check failed: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e))
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    if let Err(e) = commands::init_thread_pool() {
        eprintln!("zetat: {e}");
        return ExitCode::from(e.exit_code());
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zetat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
