//! Greedy Frobenius baseline: one factor at a time, each chosen to best
//! align the residual with the identity.
//!
//! Minimizing `||V - I||_F^2 = 2d - 2 tr(V)` means maximizing the trace, and
//! the trace gain of rotating plane `(i, j)` has the closed form
//! `hypot(A, B) - A` with `A = V_ii + V_jj`, `B = V_ij - V_ji`, attained at
//! `angle = atan2(B, A)`. Scoring every plane against the full
//! permutation-invariant metric instead would cost O(d^3) per candidate;
//! the trace proxy is what makes an O(d^2) iteration possible, and the
//! metric is still what the checkpoints report. The column alignment is
//! fixed once up front by matching the input against the identity, then
//! absorbed into the residual.

use crate::error::Result;
use crate::matrix::{DenseMatrix, GivensRotation, GivensSequence};
use crate::metrics::{symnorm, symnorm_of_overlap};

use super::{require_orthogonal, FactorizeConfig, FactorizeTrace, StopReason, STALL_EPS, TIE_EPS};

pub fn factorize_greedy(u: &DenseMatrix, cfg: &FactorizeConfig) -> Result<FactorizeTrace> {
    cfg.validate()?;
    require_orthogonal(u)?;
    let d = u.dim();
    let sqrt_d = (d as f64).max(1.0).sqrt();

    // Absorb the best signed column permutation so the target is plain I.
    let (_, p0) = symnorm(u, &DenseMatrix::identity(d))?;
    let mut v = DenseMatrix::zeros(d);
    for c in 0..d {
        let src = p0.perm()[c];
        let sign = f64::from(p0.signs()[c]);
        for r in 0..d {
            v.set(r, c, sign * u.get(r, src));
        }
    }

    let mut trace_sum: f64 = (0..d).map(|k| v.get(k, k)).sum();
    let mut sequence = GivensSequence::empty(d);
    let mut objective_history = vec![residual_distance(d, trace_sum)];
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

        let mut best: Option<(usize, usize, f64, f64)> = None;
        for i in 0..d {
            for j in (i + 1)..d {
                let a = v.get(i, i) + v.get(j, j);
                let b = v.get(i, j) - v.get(j, i);
                let gain = f64::hypot(a, b) - a;
                match best {
                    Some((_, _, best_gain, _)) if gain <= best_gain + TIE_EPS => {}
                    _ => best = Some((i, j, gain, f64::atan2(b, a))),
                }
            }
        }
        let Some((i, j, gain, angle)) = best else {
            break StopReason::Stalled;
        };
        if gain < STALL_EPS {
            break StopReason::Stalled;
        }

        let old_diag = v.get(i, i) + v.get(j, j);
        let g = GivensRotation::new(i, j, angle);
        v.rotate_rows(&g);
        sequence.push(g)?;
        trace_sum += v.get(i, i) + v.get(j, j) - old_diag;
        objective_history.push(residual_distance(d, trace_sum));
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

fn residual_distance(d: usize, trace_sum: f64) -> f64 {
    (2.0 * d as f64 - 2.0 * trace_sum).max(0.0).sqrt()
}
