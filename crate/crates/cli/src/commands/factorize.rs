use std::path::PathBuf;

use clap::Args;
use givens_core::{factorize, Algorithm, DenseMatrix, FactorizeConfig, Result, StopReason};

use crate::io;

#[derive(Args)]
pub struct FactorizeArgs {
    /// Matrix file, or a sequence file that is materialized first.
    #[arg(long)]
    input: PathBuf,

    /// elimination | greedy | l1 | jacobi
    #[arg(long, value_parser = Algorithm::parse)]
    algorithm: Algorithm,

    /// Factor budget; defaults to d(d-1)/2.
    #[arg(long)]
    max_factors: Option<usize>,

    /// Normalized-error stopping threshold.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,

    /// Recorded in outputs; the algorithms are deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Iterations between error checkpoints.
    #[arg(long, default_value_t = 25)]
    checkpoint_stride: usize,

    /// Output sequence file.
    #[arg(long)]
    out: PathBuf,

    /// Trace CSV path; defaults to `<out>.trace.csv`.
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

fn load_input(path: &std::path::Path) -> Result<DenseMatrix> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with("givens-seq") {
        Ok(io::parse_sequence(&text)?.materialize())
    } else {
        io::parse_matrix(&text)
    }
}

pub fn run(args: FactorizeArgs) -> Result<()> {
    let matrix = load_input(&args.input)?;
    let d = matrix.dim();
    let cfg = FactorizeConfig {
        algorithm: args.algorithm,
        max_factors: args.max_factors.unwrap_or(d * d.saturating_sub(1) / 2),
        eps: args.eps,
        seed: args.seed,
        checkpoint_stride: args.checkpoint_stride,
        use_cache: true,
    };
    let trace = factorize(&matrix, &cfg)?;

    io::write_sequence(&args.out, &trace.sequence)?;
    let trace_path = args
        .trace_out
        .unwrap_or_else(|| append_extension(&args.out, "trace.csv"));
    io::write_trace_csv(&trace_path, &trace)?;

    let stop = match trace.stop {
        StopReason::Converged => "converged",
        StopReason::MaxFactors => "budget",
        StopReason::Stalled => "stalled",
        StopReason::Completed => "completed",
    };
    match trace.final_error() {
        Some(err) => println!(
            "algorithm={} d={d} factors={} error={err} stop={stop}",
            args.algorithm.name(),
            trace.sequence.len()
        ),
        None => println!(
            "algorithm={} d={d} factors={} objective={} stop={stop}",
            args.algorithm.name(),
            trace.sequence.len(),
            trace.objective_history.last().copied().unwrap_or(0.0)
        ),
    }
    Ok(())
}

fn append_extension(path: &std::path::Path, ext: &str) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".");
    name.push(ext);
    PathBuf::from(name)
}
