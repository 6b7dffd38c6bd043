//! `kchain`: ground-state counting, spectral analysis and verification for
//! projector-sum qubit chains.

mod commands;
mod record;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kchain_core::{Error, Method};

use commands::{MethodChoice, Outcome, DEFAULT_TOLERANCE};

/// Worker-count override for enumeration.
const WORKERS_ENV: &str = "KCHAIN_WORKERS";

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "kchain", version, about = "Exact ground-state analysis of projector-sum qubit chains")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    /// Tabular commands only (converge); others fall back to text
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Enumerate,
    Recurrence,
    Modular,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Count ground states (dim ker H)
    Degeneracy {
        #[arg(long)]
        sites: u32,
        #[arg(long, default_value_t = 2)]
        window: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// List ground states in ascending index order
    KernelBasis {
        #[arg(long)]
        sites: u32,
        #[arg(long, default_value_t = 2)]
        window: u32,
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Dominant root, conjugates and Pisot verdict per order
    Pisot {
        #[arg(long, default_value_t = 2)]
        k_min: u32,
        #[arg(long, default_value_t = 12)]
        k_max: u32,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Per-site ground-state count against the dominant root
    Converge {
        #[arg(long, default_value_t = 2)]
        window: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Check the zero-row identity for pair windows
    Identity {
        #[arg(long)]
        sites: u32,
        /// Check every chain length from --sites through this value
        #[arg(long)]
        sites_max: Option<u32>,
    },
    /// Run the cross-checking suite
    Verify {
        /// Largest chain for the dense-matrix checks
        #[arg(long, default_value_t = 10)]
        dense: u32,
        /// Largest chain for the cross-method count checks
        #[arg(long, default_value_t = 20)]
        cross: u32,
        /// Replace the local projector diagonal (negative control)
        #[arg(long, hide = true, value_delimiter = ',')]
        fault_local_diagonal: Option<Vec<i32>>,
    },
    /// Print the diagonal of the dense Hamiltonian
    DenseDump {
        #[arg(long)]
        sites: u32,
        #[arg(long, default_value_t = 2)]
        window: u32,
    },
}

fn workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(kchain_core::degeneracy::default_workers)
}

fn dispatch(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Degeneracy {
            sites,
            window,
            method,
        } => {
            let choice = match method {
                MethodArg::Enumerate => MethodChoice::One(Method::Enumerate),
                MethodArg::Recurrence => MethodChoice::One(Method::Recurrence),
                MethodArg::Modular => MethodChoice::One(Method::Modular),
                MethodArg::All => MethodChoice::All,
            };
            commands::degeneracy(sites, window, choice, workers())
        }
        Command::KernelBasis {
            sites,
            window,
            limit,
        } => commands::kernel_basis_cmd(sites, window, limit),
        Command::Pisot { k_min, k_max, tol } => commands::pisot(k_min, k_max, tol),
        Command::Converge {
            window,
            n_max,
            samples,
        } => commands::converge(window, n_max, samples),
        Command::Identity { sites, sites_max } => {
            commands::identity(sites, sites_max.unwrap_or(sites))
        }
        Command::Verify {
            dense,
            cross,
            fault_local_diagonal,
        } => commands::verify_cmd(dense, cross, workers(), fault_local_diagonal),
        Command::DenseDump { sites, window } => commands::dense_dump(sites, window),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(outcome) => {
            match (cli.format, &outcome.csv) {
                (Format::Json, _) => println!("{}", outcome.record.to_json()),
                (Format::Csv, Some(csv)) => print!("{csv}"),
                _ => print!("{}", outcome.text),
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED)
            }
        }
        Err(err @ Error::Numeric(_)) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
