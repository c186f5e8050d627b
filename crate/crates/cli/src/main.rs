//! `givens`: experiment driver for approximating orthogonal matrices with
//! short products of plane rotations.
//!
//! Exit codes: 0 on success, 2 for usage or input validation errors, 3 for
//! numerical failures (an iteration that did not converge).

use clap::{Parser, Subcommand};
use givens_cli::commands;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "givens", version, about = "Givens factorization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize a matrix into a rotation sequence.
    Factorize(commands::factorize::FactorizeArgs),
    /// Planted-model experiments: density, approximation error, growth rate.
    Planted(commands::planted::PlantedArgs),
    /// Approximate graph Fourier transform comparison.
    Gft(commands::gft::GftArgs),
    /// Apply a stored rotation sequence to a vector or matrix.
    Apply(commands::apply::ApplyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Ok(raw) = std::env::var("GIVENS_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid GIVENS_THREADS='{raw}'"),
        }
    }

    let result = match cli.command {
        Command::Factorize(args) => commands::factorize::run(args),
        Command::Planted(args) => commands::planted::run(args),
        Command::Gft(args) => commands::gft::run(args),
        Command::Apply(args) => commands::apply::run(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                givens_core::Error::NonConvergence { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
