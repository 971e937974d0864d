//! Command-line front end: single checks, sweeps, t-module dumps, oracle runs
//! and family listings, with an NDJSON result store.

pub mod cache;
pub mod commands;
pub mod config;
pub mod store;

use std::ffi::OsString;

use clap::Parser;

pub use config::{Cli, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_EULERIAN: i32 = 10;
pub const EXIT_NON_EULERIAN: i32 = 11;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] eulerian::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use eulerian::Error as E;
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(
                E::InvalidField(_)
                | E::InvalidTuple(_)
                | E::ZeroCoordinate(_)
                | E::Parse(_)
                | E::Divisibility { .. }
                | E::MissingSuffix(_)
                | E::CoverageGap(_),
            ) => EXIT_CONFIG,
            CliError::Core(_) => EXIT_INTERNAL,
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => EXIT_RUNTIME,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses arguments, runs the command and returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let run = RunConfig::from_cli(cli).and_then(|cfg| commands::execute(&cfg, &mut std::io::stdout().lock()));
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
