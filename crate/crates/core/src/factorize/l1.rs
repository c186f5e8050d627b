//! Coordinate descent on the scaled element-wise L1 norm.
//!
//! Each iteration searches every coordinate plane for the rotation angle
//! that minimizes the post-rotation L1 norm of the two touched rows (the
//! exact per-plane optimum from [`optimal_angle_l1`]), applies the best one
//! to the residual, and repeats. Only planes that share a row with the
//! previous rotation can have changed, so their cached optima are the only
//! ones recomputed and an iteration costs O(d^2) amortized.

use rayon::prelude::*;

use crate::error::Result;
use crate::matrix::{DenseMatrix, GivensRotation, GivensSequence};
use crate::metrics::symnorm_of_overlap;

use super::{
    optimal_angle_l1, require_orthogonal, FactorizeConfig, FactorizeTrace, StopReason, STALL_EPS,
    TIE_EPS,
};

/// Planes are re-optimized in parallel once the batch is big enough to pay
/// for the scheduling.
const PAR_MIN_PLANES: usize = 96;

#[derive(Clone, Copy)]
struct PlaneBest {
    angle: f64,
    post_l1: f64,
}

fn optimize_plane(v: &DenseMatrix, i: usize, j: usize) -> PlaneBest {
    let (angle, post_l1) = optimal_angle_l1(v.row(i), v.row(j));
    PlaneBest { angle, post_l1 }
}

fn recompute(planes: &[(usize, usize)], dirty: &[usize], v: &DenseMatrix, cache: &mut [PlaneBest]) {
    if dirty.len() >= PAR_MIN_PLANES {
        let fresh: Vec<(usize, PlaneBest)> = dirty
            .par_iter()
            .map(|&p| {
                let (i, j) = planes[p];
                (p, optimize_plane(v, i, j))
            })
            .collect();
        for (p, best) in fresh {
            cache[p] = best;
        }
    } else {
        for &p in dirty {
            let (i, j) = planes[p];
            cache[p] = optimize_plane(v, i, j);
        }
    }
}

/// Factorizes an orthogonal matrix by manifold coordinate descent on
/// `f(V) = d^{-1} ||V||_1`, whose global minima are the signed permutations.
pub fn factorize_l1(u: &DenseMatrix, cfg: &FactorizeConfig) -> Result<FactorizeTrace> {
    cfg.validate()?;
    require_orthogonal(u)?;
    let d = u.dim();
    let sqrt_d = (d as f64).max(1.0).sqrt();

    let mut v = u.clone();
    let mut row_l1: Vec<f64> = (0..d)
        .map(|r| v.row(r).iter().map(|x| x.abs()).sum())
        .collect();
    let mut total_l1: f64 = row_l1.iter().sum();

    let planes: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| ((i + 1)..d).map(move |j| (i, j)))
        .collect();
    let mut planes_of_row: Vec<Vec<usize>> = vec![Vec::new(); d];
    for (p, &(i, j)) in planes.iter().enumerate() {
        planes_of_row[i].push(p);
        planes_of_row[j].push(p);
    }

    let all: Vec<usize> = (0..planes.len()).collect();
    let mut cache = vec![
        PlaneBest {
            angle: 0.0,
            post_l1: 0.0
        };
        planes.len()
    ];
    recompute(&planes, &all, &v, &mut cache);

    let mut sequence = GivensSequence::empty(d);
    let mut objective_history = vec![total_l1 / d.max(1) as f64];
    let mut error_checkpoints: Vec<(usize, f64)> = Vec::new();
    let mut checkpointed_at = usize::MAX;

    let stop = loop {
        let k = sequence.len();
        if k.is_multiple_of(cfg.checkpoint_stride) && checkpointed_at != k {
            let err = symnorm_of_overlap(&v)?.0 / sqrt_d;
            error_checkpoints.push((k, err));
            checkpointed_at = k;
            if err < cfg.eps {
                break StopReason::Converged;
            }
        }
        if k >= cfg.max_factors {
            break StopReason::MaxFactors;
        }

        // Best plane: largest decrease of the pair L1 mass, ties to the
        // lexicographically smallest plane via the scan order.
        let mut best: Option<(usize, f64)> = None;
        for (p, entry) in cache.iter().enumerate() {
            let (i, j) = planes[p];
            let decrease = row_l1[i] + row_l1[j] - entry.post_l1;
            match best {
                Some((_, best_dec)) if decrease <= best_dec + TIE_EPS => {}
                _ => best = Some((p, decrease)),
            }
        }
        let Some((p, decrease)) = best else {
            break StopReason::Stalled; // fewer than two coordinates
        };
        if decrease < STALL_EPS {
            break StopReason::Stalled;
        }

        let (i, j) = planes[p];
        let g = GivensRotation::new(i, j, cache[p].angle);
        v.rotate_rows(&g);
        sequence.push(g)?;

        let old_pair = row_l1[i] + row_l1[j];
        row_l1[i] = v.row(i).iter().map(|x| x.abs()).sum();
        row_l1[j] = v.row(j).iter().map(|x| x.abs()).sum();
        total_l1 += row_l1[i] + row_l1[j] - old_pair;
        objective_history.push(total_l1 / d as f64);

        if cfg.use_cache {
            let mut dirty: Vec<usize> = planes_of_row[i]
                .iter()
                .chain(planes_of_row[j].iter())
                .copied()
                .collect();
            dirty.sort_unstable();
            dirty.dedup();
            recompute(&planes, &dirty, &v, &mut cache);
        } else {
            recompute(&planes, &all, &v, &mut cache);
        }
    };

    if checkpointed_at != sequence.len() {
        let err = symnorm_of_overlap(&v)?.0 / sqrt_d;
        error_checkpoints.push((sequence.len(), err));
    }

    Ok(FactorizeTrace {
        sequence,
        objective_history,
        error_checkpoints,
        stop,
    })
}
