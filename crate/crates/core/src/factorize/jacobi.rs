//! Truncated two-sided diagonalization of a symmetric matrix.
//!
//! Each step zeroes the largest-magnitude off-diagonal element with a
//! similarity rotation `G^T L G`; the rotated residual keeps the spectrum
//! and moves `2 L_ij^2` of off-diagonal mass onto the diagonal, so with
//! `N = d(d-1)/2` planes the off-diagonal objective contracts by at least
//! `(1 - 1/N)` per step. The accumulated factors approximate the eigenbasis.

use crate::error::Result;
use crate::matrix::{DenseMatrix, GivensRotation, GivensSequence};

use super::{off_diagonal_sum, require_symmetric, FactorizeConfig, FactorizeTrace, StopReason};

/// All off-diagonal magnitudes below this stop the iteration.
pub(crate) const ZERO_PIVOT_TOL: f64 = 1e-14;

/// The rotation angle that zeroes `l[i][j]` under the `G^T L G` update used
/// here. For equal diagonal entries this degenerates to a quarter-diagonal
/// turn `sign(L_ij) * pi/4`.
pub(crate) fn jacobi_angle(l: &DenseMatrix, i: usize, j: usize) -> f64 {
    0.5 * f64::atan2(2.0 * l.get(i, j), l.get(j, j) - l.get(i, i))
}

/// Applies the similarity rotation in place and clears the zeroed pair.
pub(crate) fn jacobi_rotate(l: &mut DenseMatrix, g: &GivensRotation) {
    l.rotate_rows(g);
    l.rotate_cols(g);
    l.set(g.i(), g.j(), 0.0);
    l.set(g.j(), g.i(), 0.0);
}

pub fn jacobi_truncated(l: &DenseMatrix, cfg: &FactorizeConfig) -> Result<FactorizeTrace> {
    cfg.validate()?;
    require_symmetric(l)?;
    let d = l.dim();

    let mut work = l.clone();
    let mut sequence = GivensSequence::empty(d);
    let mut objective_history = vec![off_diagonal_sum(&work)];

    let stop = loop {
        if sequence.len() >= cfg.max_factors {
            break StopReason::MaxFactors;
        }
        let mut pivot = 0.0f64;
        let mut plane = (0usize, 0usize);
        for r in 0..d {
            for c in (r + 1)..d {
                let v = work.get(r, c).abs();
                if v > pivot {
                    pivot = v;
                    plane = (r, c);
                }
            }
        }
        if pivot < ZERO_PIVOT_TOL {
            break StopReason::Converged;
        }
        let (i, j) = plane;
        let g = GivensRotation::new(i, j, jacobi_angle(&work, i, j));
        jacobi_rotate(&mut work, &g);
        sequence.push(g)?;
        objective_history.push(off_diagonal_sum(&work));
    };

    Ok(FactorizeTrace {
        sequence,
        objective_history,
        error_checkpoints: Vec::new(),
        stop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorize::Algorithm;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn cfg(max_factors: usize) -> FactorizeConfig {
        FactorizeConfig::new(Algorithm::TruncatedJacobi, max_factors, 0.1)
    }

    pub(crate) fn random_symmetric(d: usize, seed: u64) -> DenseMatrix {
        let mut rng = rng_from_seed(seed);
        let mut m = DenseMatrix::zeros(d);
        for r in 0..d {
            for c in r..d {
                let v: f64 = rng.gen_range(-1.0..1.0);
                m.set(r, c, v);
                m.set(c, r, v);
            }
        }
        m
    }

    #[test]
    fn diagonal_input_needs_no_iterations() {
        let mut m = DenseMatrix::zeros(4);
        for k in 0..4 {
            m.set(k, k, k as f64);
        }
        let trace = jacobi_truncated(&m, &cfg(100)).unwrap();
        assert!(trace.sequence.is_empty());
        assert_eq!(trace.stop, StopReason::Converged);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let trace = jacobi_truncated(&m, &cfg(10)).unwrap();
        assert_eq!(trace.sequence.len(), 1);
        let g = trace.sequence.factors()[0];
        assert!((g.angle() - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
        let mut work = m.clone();
        jacobi_rotate(&mut work, &g);
        let mut eigs = [work.get(0, 0), work.get(1, 1)];
        eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((eigs[0] - 1.0).abs() < 1e-12);
        assert!((eigs[1] - 3.0).abs() < 1e-12);
        assert!(*trace.objective_history.last().unwrap() < 1e-28);
    }

    #[test]
    fn off_diagonal_mass_contracts_linearly_at_every_step() {
        let d = 12;
        let rate = 1.0 - 2.0 / (d * (d - 1)) as f64;
        for seed in 0..3 {
            let m = random_symmetric(d, 90 + seed);
            let trace = jacobi_truncated(&m, &cfg(150)).unwrap();
            for w in trace.objective_history.windows(2) {
                assert!(
                    w[1] <= rate * w[0] + 1e-15,
                    "seed {seed}: {} -> {}",
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn similarity_preserves_the_spectrum_proxy() {
        // Frobenius norm is invariant under the similarity, so diagonal mass
        // grows exactly as off-diagonal mass is consumed.
        let m = random_symmetric(8, 4);
        let total = m.frobenius_norm().powi(2);
        let trace = jacobi_truncated(&m, &cfg(40)).unwrap();
        let mut work = m.clone();
        for g in trace.sequence.factors() {
            jacobi_rotate(&mut work, g);
        }
        assert!((work.frobenius_norm().powi(2) - total).abs() < 1e-9 * total.max(1.0));
        assert!(work.symmetry_defect() < 1e-12);
    }

    #[test]
    fn non_symmetric_input_is_rejected() {
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(jacobi_truncated(&m, &cfg(5)).is_err());
    }
}
