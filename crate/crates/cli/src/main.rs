//! `nlcs`: emits the data tables behind the dispersion, density and entropy
//! figures, dumps single states, and runs the consistency suites.
//!
//! Exit status is 0 on success, 1 for configuration or I/O errors and 2 when
//! a `verify` suite fails.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;
use nlcs_core::verify::VerifyOptions;

use config::{Cli, Command};

const EXIT_CONFIG: u8 = 1;
const EXIT_VERIFY: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] nlcs_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let (table, out, passed) = match &cli.command {
        Command::Dispersion(a) => (
            commands::dispersion(&config::resolve_dispersion(a)?)?,
            &a.out,
            true,
        ),
        Command::Density(a) => (
            commands::density(&config::resolve_density(a)?)?,
            &a.out,
            true,
        ),
        Command::EntropySweep(a) => (
            commands::entropy_sweep_table(&config::resolve_entropy(a)?)?,
            &a.out,
            true,
        ),
        Command::StateDump(a) => {
            let (cfg, z) = config::resolve_dump(a)?;
            (commands::state_dump(&cfg, z)?, &a.out, true)
        }
        Command::Verify(a) => {
            if a.levels < 1 {
                return Err(CliError::Config("levels must be at least 1".into()));
            }
            let (table, passed) = commands::verify_table(&VerifyOptions {
                levels: a.levels,
                inject_fault: a.inject_fault,
            });
            (table, &a.out, passed)
        }
    };
    output::emit(&table, out.format, out.output.as_deref())?;
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verify: at least one suite failed");
        Ok(ExitCode::from(EXIT_VERIFY))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_CONFIG)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = if cli.verbose {
        log::LevelFilter::Info
    } else {
        log::LevelFilter::Warn
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
