//! The `it2flc` command line.
//!
//! Exit codes: 0 success, 1 a verification, comparison or simulation
//! failure, 2 a usage or config error.

mod bench;
mod compare;
mod simulate;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "IT2FLC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "it2flc",
    version,
    about = "Decomposed interval type-2 fuzzy control toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one closed-loop pendulum simulation and write its trace CSV.
    Simulate(simulate::Args),
    /// Run every variant of an experiment file over its seeds and report.
    Compare(compare::Args),
    /// Run the oracle suites.
    Verify(verify::Args),
    /// Time the closed-form combiner against Karnik-Mendel.
    Bench(bench::Args),
}

#[derive(Debug)]
pub(crate) enum CliError {
    /// Bad flags, unreadable or invalid config.
    Usage(String),
    /// The command ran but something failed.
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        use crate::Error::*;
        match e {
            Config { .. } | Parse(_) | Io(_) | InvalidParameter(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

pub(crate) fn write_file(path: &std::path::Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Failure(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))
}

/// `$IT2FLC_OUT_DIR` if set, else `out`.
pub fn default_out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("out"))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::parse_from(args);
    let result = match cli.command {
        Command::Simulate(a) => simulate::run(a),
        Command::Compare(a) => compare::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (CliError::Usage(m) | CliError::Failure(m)) = &e;
            eprintln!("it2flc: {m}");
            ExitCode::from(e.code())
        }
    }
}
