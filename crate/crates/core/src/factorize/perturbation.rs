//! Numeric check of the perturbed-product bound: perturbing each factor's
//! angle by at most `delta` moves the N-term product by at most `2 N delta`
//! in Frobenius norm. For a single factor the gap is exactly
//! `2 sqrt(1 - cos delta)`.

use crate::error::{Error, Result};
use crate::matrix::{GivensRotation, GivensSequence};

/// Measures `|| product(perturbed) - product(original) ||_F` against the
/// bound `2 * N * delta_max`, returning `(measured, bound)`.
///
/// Perturbations must satisfy `0 <= delta_n <= delta_max` and match the
/// sequence length.
pub fn perturbation_gap(
    seq: &GivensSequence,
    deltas: &[f64],
    delta_max: f64,
) -> Result<(f64, f64)> {
    if deltas.len() != seq.len() {
        return Err(Error::DimensionMismatch {
            expected: seq.len(),
            got: deltas.len(),
        });
    }
    if delta_max.is_nan() || delta_max < 0.0 {
        return Err(Error::invalid("delta_max must be non-negative"));
    }
    if let Some(bad) = deltas.iter().find(|&&d| !(0.0..=delta_max).contains(&d)) {
        return Err(Error::invalid(format!(
            "perturbation {bad} outside [0, {delta_max}]"
        )));
    }

    let perturbed_factors: Vec<GivensRotation> = seq
        .factors()
        .iter()
        .zip(deltas)
        .map(|(g, &delta)| GivensRotation::new(g.i(), g.j(), g.angle() + delta))
        .collect();
    let perturbed = GivensSequence::new(seq.dim(), perturbed_factors)?;

    let gap = perturbed
        .materialize()
        .sub(&seq.materialize())?
        .frobenius_norm();
    let bound = 2.0 * seq.len() as f64 * delta_max;
    debug_assert!(gap <= bound + 1e-9, "gap {gap} exceeds bound {bound}");
    Ok((gap, bound))
}
