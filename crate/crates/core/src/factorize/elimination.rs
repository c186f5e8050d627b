//! Structured elimination: the constructive exact factorization.
//!
//! Below-diagonal entries of the residual are zeroed column by column from
//! left to right and bottom to top within each column; zeroing entry
//! `(row, col)` rotates the `(col, row)` plane with the angle that makes the
//! updated entry vanish while the pivot becomes the non-negative hypotenuse.
//! After all d(d-1)/2 steps the residual is diagonal with entries +-1; pairs
//! of -1 entries are removed by half-turn rotations. A single -1 can remain
//! when the input has determinant -1, which the permutation-invariant metric
//! absorbs.

use crate::error::Result;
use crate::matrix::{DenseMatrix, GivensRotation, GivensSequence};
use crate::metrics::symnorm_of_overlap;

use super::{require_orthogonal, FactorizeTrace, StopReason};

/// Factorizes an orthogonal matrix exactly in d(d-1)/2 elimination factors
/// plus at most floor(d/2) sign-fix factors.
pub fn factorize_elimination(u: &DenseMatrix) -> Result<FactorizeTrace> {
    require_orthogonal(u)?;
    let d = u.dim();
    let sqrt_d = (d as f64).max(1.0).sqrt();
    let total = d * d.saturating_sub(1) / 2;
    let stride = (total / 24).max(1);

    let mut v = u.clone();
    let mut sequence = GivensSequence::empty(d);
    let mut error_checkpoints: Vec<(usize, f64)> = Vec::new();
    let mut checkpointed_at = usize::MAX;
    let mut checkpoint = |k: usize, v: &DenseMatrix| -> Result<()> {
        if checkpointed_at != k {
            error_checkpoints.push((k, symnorm_of_overlap(v)?.0 / sqrt_d));
            checkpointed_at = k;
        }
        Ok(())
    };

    checkpoint(0, &v)?;
    for col in 0..d.saturating_sub(1) {
        for row in ((col + 1)..d).rev() {
            let angle = f64::atan2(-v.get(row, col), v.get(col, col));
            let g = GivensRotation::new(col, row, angle);
            v.rotate_rows(&g);
            v.set(row, col, 0.0);
            sequence.push(g)?;
            if sequence.len().is_multiple_of(stride) {
                checkpoint(sequence.len(), &v)?;
            }
        }
    }

    // The residual is now diagonal with non-negative leading entries; any
    // -1 pair collapses under a half-turn in its plane.
    let negatives: Vec<usize> = (0..d).filter(|&k| v.get(k, k) < 0.0).collect();
    for pair in negatives.chunks_exact(2) {
        let g = GivensRotation::new(pair[0], pair[1], std::f64::consts::PI);
        v.rotate_rows(&g);
        sequence.push(g)?;
    }
    checkpoint(sequence.len(), &v)?;

    Ok(FactorizeTrace {
        sequence,
        objective_history: Vec::new(),
        error_checkpoints,
        stop: StopReason::Completed,
    })
}
