//! The K-planted benchmark family: rotations built from K random factors,
//! where approximability can be controlled, plus the experiment drivers
//! behind the density, approximation-error, and growth-rate studies.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factorize::{factorize, FactorizeConfig};
use crate::matrix::{DenseMatrix, GivensRotation, GivensSequence};
use crate::metrics::n_epsilon;
use crate::record::{Experiment, ExperimentRecord};
use crate::rng::{derive_seed, rng_from_seed};
use rand::Rng;

/// A draw from the K-planted distribution: K planes sampled uniformly with
/// replacement, each angle uniform on the circle. The product lies in the
/// rotation subgroup (determinant +1).
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedSample {
    pub matrix: DenseMatrix,
    pub ground_truth: GivensSequence,
    pub seed: u64,
}

/// Maps a flat index in `0..d(d-1)/2` to the plane it names, ordered
/// lexicographically.
fn unrank_plane(d: usize, mut index: usize) -> (usize, usize) {
    for i in 0..d {
        let in_row = d - 1 - i;
        if index < in_row {
            return (i, i + 1 + index);
        }
        index -= in_row;
    }
    unreachable!("index out of range")
}

pub fn sample_planted(d: usize, k: usize, rng_seed: u64) -> Result<PlantedSample> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "planted sampling needs dimension >= 2, got {d}"
        )));
    }
    let n_planes = d * (d - 1) / 2;
    let mut rng = rng_from_seed(rng_seed);
    let mut factors = Vec::with_capacity(k);
    for _ in 0..k {
        let (i, j) = unrank_plane(d, rng.gen_range(0..n_planes));
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        factors.push(GivensRotation::new(i, j, angle));
    }
    let ground_truth = GivensSequence::new(d, factors)?;
    Ok(PlantedSample {
        matrix: ground_truth.materialize(),
        ground_truth,
        seed: rng_seed,
    })
}

/// Per-sample nonzero fractions `l0/d^2` for one `(d, k)` cell; returned in
/// sample order with the derived seed of each draw.
pub fn density_samples(
    d: usize,
    k: usize,
    n_samples: usize,
    zero_tol: f64,
    rng_seed: u64,
) -> Result<Vec<(u64, f64)>> {
    (0..n_samples)
        .into_par_iter()
        .map(|s| {
            let seed = derive_seed(rng_seed, k as u64, s as u64);
            let sample = sample_planted(d, k, seed)?;
            let fraction = sample.matrix.l0_count(zero_tol) as f64 / (d * d) as f64;
            Ok((seed, fraction))
        })
        .collect()
}

/// Mean nonzero fraction as a function of the planted factor count.
pub fn density_curve(
    d: usize,
    k_values: &[usize],
    n_samples: usize,
    zero_tol: f64,
    rng_seed: u64,
) -> Result<Vec<(usize, f64)>> {
    k_values
        .iter()
        .map(|&k| {
            let samples = density_samples(d, k, n_samples, zero_tol, rng_seed)?;
            let mean = samples.iter().map(|&(_, f)| f).sum::<f64>() / n_samples.max(1) as f64;
            Ok((k, mean))
        })
        .collect()
}

/// Runs every configured algorithm on `n_samples` fresh planted instances
/// and emits the error-vs-length checkpoint curve plus, when the threshold
/// is reached, the factor count at threshold.
///
/// Samples run in a parallel pool; rows are merged in sample order, then
/// config order, so output is deterministic for a fixed seed.
pub fn approximation_experiment(
    d: usize,
    k: usize,
    n_samples: usize,
    configs: &[FactorizeConfig],
    rng_seed: u64,
) -> Result<Vec<ExperimentRecord>> {
    let per_sample: Vec<Vec<ExperimentRecord>> = (0..n_samples)
        .into_par_iter()
        .map(|s| {
            let seed = derive_seed(rng_seed, k as u64, s as u64);
            let sample = sample_planted(d, k, seed)?;
            let mut rows = Vec::new();
            for cfg in configs {
                let algorithm = cfg.algorithm.name().to_string();
                let trace = factorize(&sample.matrix, cfg)?;
                for &(n, error) in &trace.error_checkpoints {
                    rows.push(ExperimentRecord {
                        experiment: Experiment::ApproxError,
                        d,
                        k_or_graph: k.to_string(),
                        algorithm: algorithm.clone(),
                        n_factors: n,
                        error,
                        seed,
                        wall_time_ms: 0,
                    });
                }
                if let Some(n) = n_epsilon(&sample.matrix, &trace.sequence, cfg.eps)? {
                    rows.push(ExperimentRecord {
                        experiment: Experiment::NEpsilon,
                        d,
                        k_or_graph: k.to_string(),
                        algorithm,
                        n_factors: n,
                        error: cfg.eps,
                        seed,
                        wall_time_ms: 0,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

/// Least-squares exponent of a power law `y ~ x^eta` through `(x, y)` points.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::invalid("power-law fit needs at least two points"));
    }
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return Err(Error::invalid("power-law fit needs positive coordinates"));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid(
            "power-law fit needs at least two distinct x",
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    Ok(sxy / sxx)
}

/// Growth exponent `eta` of the model `N_eps ~ d^eta`, fitted to the mean
/// threshold factor counts grouped by dimension.
pub fn growth_rate_fit(records: &[ExperimentRecord]) -> Result<f64> {
    let mut by_dim: Vec<(usize, f64, usize)> = Vec::new();
    for r in records {
        if r.experiment != Experiment::NEpsilon {
            continue;
        }
        match by_dim.iter_mut().find(|(d, _, _)| *d == r.d) {
            Some((_, sum, count)) => {
                *sum += r.n_factors as f64;
                *count += 1;
            }
            None => by_dim.push((r.d, r.n_factors as f64, 1)),
        }
    }
    let points: Vec<(f64, f64)> = by_dim
        .iter()
        .map(|&(d, sum, count)| (d as f64, sum / count as f64))
        .collect();
    fit_power_law(&points)
}
