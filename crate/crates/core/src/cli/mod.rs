//! Command-line scenario runner. Each subcommand writes one CSV table on a
//! uniform time grid; lengths, times and energies are in the chosen unit
//! system (SI for the neutron preset).
//!
//! Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

mod config;
mod run;
mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter};

use clap::{Parser, Subcommand};

pub use config::{time_grid, ScenarioConfig, ScenarioKind, Settings, DEFAULT_TERMS, STEPS_PER_DROP};
pub use run::{run, run_classical, run_compare, run_moments, run_quantum, run_spectrum, RunOutput};
pub use table::{Cell, Table};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bouncer",
    version,
    about = "Classical, quantum and moment descriptions of a particle bouncing on a mirror"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound-state levels x_n, their asymptotic estimates and energies
    Spectrum(Settings),
    /// Folded bounce trajectory and its Fourier series
    Classical(Settings),
    /// Spectral evolution of a Gaussian packet in the Airy eigenbasis
    Quantum(Settings),
    /// Moment dynamics under the linear potential with saturated dispersions
    Moments(Settings),
    /// All descriptions on one time grid
    Compare(Settings),
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (program name first), runs the scenario and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
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
    let (kind, flags) = match cli.command {
        Command::Spectrum(s) => (ScenarioKind::Spectrum, s),
        Command::Classical(s) => (ScenarioKind::Classical, s),
        Command::Quantum(s) => (ScenarioKind::Quantum, s),
        Command::Moments(s) => (ScenarioKind::Moments, s),
        Command::Compare(s) => (ScenarioKind::Compare, s),
    };
    match execute(kind, flags) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(kind: ScenarioKind, flags: Settings) -> Result<i32, Error> {
    let settings = Settings::load(flags)?;
    let cfg = ScenarioConfig::resolve(kind, &settings)?;
    let output = run(&cfg)?;

    match &cfg.out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
            output.table.write_csv(BufWriter::new(file))?;
        }
        None => output.table.write_csv(io::stdout().lock())?,
    }

    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    for (column, e) in &output.failures {
        eprintln!("error: column {column} left empty: {e}");
    }
    Ok(match output.failures.first() {
        Some((_, e)) => exit_code(e),
        None => EXIT_OK,
    })
}
