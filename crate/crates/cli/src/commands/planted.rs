use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use givens_core::{
    approximation_experiment, density_samples, growth_rate_fit, Algorithm, Error, Experiment,
    ExperimentRecord, FactorizeConfig, Result,
};

use crate::io;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Mean nonzero fraction as a function of the planted factor count.
    Density,
    /// Error-vs-length curves and threshold factor counts.
    Approx,
    /// Power-law exponent of the threshold count across dimensions.
    Growth,
}

#[derive(Args)]
pub struct PlantedArgs {
    #[arg(long, value_enum, default_value = "approx")]
    experiment: Mode,

    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_value = "32,64")]
    dims: Vec<usize>,

    /// Comma-separated planted factor counts: integers or the d-relative
    /// tokens d/4, d/2, d, 2d, dlogd/2, dlogd.
    #[arg(
        long = "k-grid",
        value_delimiter = ',',
        default_value = "d/4,d/2,d,2d,dlogd/2,dlogd"
    )]
    k_grid: Vec<String>,

    /// Samples per (dimension, factor count) cell; defaults to 100 for the
    /// density experiment and 10 otherwise.
    #[arg(long)]
    samples: Option<usize>,

    /// Normalized-error threshold for the factorization runs.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Algorithms for the approx/growth experiments.
    #[arg(long, value_delimiter = ',', value_parser = Algorithm::parse, default_value = "l1")]
    algorithms: Vec<Algorithm>,

    /// Magnitudes at or below this count as zero in the density experiment.
    #[arg(long, default_value_t = 1e-9)]
    zero_tol: f64,

    /// Output CSV.
    #[arg(long)]
    out: PathBuf,

    /// Record wall-clock times (makes outputs non-reproducible).
    #[arg(long)]
    timings: bool,
}

/// Evaluates one k-grid token for a concrete dimension.
fn eval_k(token: &str, d: usize) -> Result<usize> {
    let t = token.trim();
    if let Ok(v) = t.parse::<usize>() {
        return Ok(v);
    }
    let df = d as f64;
    let dlogd = df * df.log2();
    let value = match t {
        "d" => df,
        "2d" => 2.0 * df,
        "d/2" => df / 2.0,
        "d/4" => df / 4.0,
        "dlogd" => dlogd,
        "dlogd/2" => dlogd / 2.0,
        _ => {
            return Err(Error::invalid(format!(
                "bad k-grid token '{t}' (expected an integer or d/4, d/2, d, 2d, dlogd/2, dlogd)"
            )))
        }
    };
    Ok(value.round() as usize)
}

pub fn run(args: PlantedArgs) -> Result<()> {
    if args.dims.is_empty() || args.k_grid.is_empty() {
        return Err(Error::invalid(
            "need at least one dimension and one k value",
        ));
    }
    let samples = args.samples.unwrap_or(match args.experiment {
        Mode::Density => 100,
        _ => 10,
    });

    let mut records: Vec<ExperimentRecord> = Vec::new();
    match args.experiment {
        Mode::Density => {
            for &d in &args.dims {
                for token in &args.k_grid {
                    let k = eval_k(token, d)?;
                    let started = Instant::now();
                    let mut rows: Vec<ExperimentRecord> =
                        density_samples(d, k, samples, args.zero_tol, args.seed)?
                            .into_iter()
                            .map(|(seed, fraction)| ExperimentRecord {
                                experiment: Experiment::Density,
                                d,
                                k_or_graph: k.to_string(),
                                algorithm: String::new(),
                                n_factors: k,
                                error: fraction,
                                seed,
                                wall_time_ms: 0,
                            })
                            .collect();
                    super::stamp_wall_time(&mut rows, started, args.timings);
                    let mean = rows.iter().map(|r| r.error).sum::<f64>() / rows.len().max(1) as f64;
                    println!("density d={d} k={k} mean_nonzero_fraction={mean}");
                    records.extend(rows);
                }
            }
        }
        Mode::Approx | Mode::Growth => {
            for &d in &args.dims {
                let budget = d * d.saturating_sub(1) / 2;
                let configs: Vec<FactorizeConfig> = args
                    .algorithms
                    .iter()
                    .map(|&a| FactorizeConfig::new(a, budget, args.eps).with_seed(args.seed))
                    .collect();
                for token in &args.k_grid {
                    let k = eval_k(token, d)?;
                    let started = Instant::now();
                    let mut rows = approximation_experiment(d, k, samples, &configs, args.seed)?;
                    super::stamp_wall_time(&mut rows, started, args.timings);
                    let reached = rows
                        .iter()
                        .filter(|r| r.experiment == Experiment::NEpsilon)
                        .count();
                    println!("approx d={d} k={k} samples={samples} threshold_reached={reached}");
                    records.extend(rows);
                }
            }
            if args.experiment == Mode::Growth {
                for token in &args.k_grid {
                    let ks: Result<Vec<usize>> =
                        args.dims.iter().map(|&d| eval_k(token, d)).collect();
                    let ks = ks?;
                    let subset: Vec<ExperimentRecord> = records
                        .iter()
                        .filter(|r| {
                            r.experiment == Experiment::NEpsilon
                                && args
                                    .dims
                                    .iter()
                                    .zip(&ks)
                                    .any(|(&d, &k)| r.d == d && r.k_or_graph == k.to_string())
                        })
                        .cloned()
                        .collect();
                    match growth_rate_fit(&subset) {
                        Ok(eta) => println!("growth k={token} eta={eta}"),
                        Err(e) => println!("growth k={token} eta=NA ({e})"),
                    }
                }
            }
        }
    }

    io::write_records_csv(&args.out, &records)?;
    println!("wrote {} rows to {}", records.len(), args.out.display());
    Ok(())
}
