//! Command-line driver around `qzeta-core`: series printing, exact and
//! numeric verification suites, and eigenform export.
//!
//! Exit codes: 0 when every report passes, 1 when any fails, 2 for usage or
//! configuration errors, 3 when a requested weight is outside the supported
//! range.

pub mod args;
pub mod commands;
pub mod polyfile;
pub mod render;

use thiserror::Error;

pub use args::Cli;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// Output of a command: what goes to stdout and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        args::Command::Series(a) => commands::series(&a),
        args::Command::Verify(a) => commands::verify(&a),
        args::Command::Numeric(a) => commands::numeric(&a),
        args::Command::Eigen(a) => commands::eigen(&a),
    }
}
