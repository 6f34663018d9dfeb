//! `nondiss`: reproduces damped Rabi oscillation scenarios as CSV tables and JSON summaries.
//!
//! Exit status: 0 on success, 1 when a numerical routine fails, 2 on bad input.

mod cavity;
mod config;
mod error;
mod fit;
mod ion;
mod kernel;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{resolve, Common};
use crate::error::CliError;
use crate::output::{write_atomic, Report};

#[derive(Debug, Parser)]
#[command(name = "nondiss", version, about = "Decoherence of Rabi oscillations from a fluctuating evolution time")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Vacuum Rabi oscillation of an atom in a cavity
    Cavity(cavity::CavityArgs),
    /// Blue-sideband Rabi oscillations of a trapped ion, one trace per Fock state
    Ion(ion::IonArgs),
    /// Gamma kernel over the evolution time or the pulse area
    Kernel(kernel::KernelArgs),
    /// Damped-cosine or power-law fit of a CSV column
    Fit(fit::FitArgs),
}

fn run(command: Command) -> Result<(), CliError> {
    let (report, common) = match command {
        Command::Cavity(a) => {
            let a = resolve(a)?;
            (cavity::run(&a)?, a.common)
        }
        Command::Ion(a) => {
            let a = resolve(a)?;
            (ion::run(&a)?, a.common)
        }
        Command::Kernel(a) => {
            let a = resolve(a)?;
            (kernel::run(&a)?, a.common)
        }
        Command::Fit(a) => {
            let a = resolve(a)?;
            (fit::run(&a)?, a.common)
        }
    };
    emit(&report, &common)
}

fn emit(report: &Report, common: &Common) -> Result<(), CliError> {
    if let (Some(path), Some(table)) = (&common.out_csv, &report.table) {
        write_atomic(path, &table.render())?;
    }
    match &common.out_json {
        Some(path) => write_atomic(path, &report.summary),
        None => {
            print!("{}", report.summary);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
