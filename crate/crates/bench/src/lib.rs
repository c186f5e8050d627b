//! Shared input builders for the benchmark targets.

use givens_core::{sample_planted, DenseMatrix, GivensSequence};

pub fn planted_matrix(d: usize, k: usize, seed: u64) -> DenseMatrix {
    sample_planted(d, k, seed).expect("valid dimensions").matrix
}

pub fn planted_sequence(d: usize, k: usize, seed: u64) -> GivensSequence {
    sample_planted(d, k, seed)
        .expect("valid dimensions")
        .ground_truth
}

pub fn ramp_vector(d: usize) -> Vec<f64> {
    (0..d).map(|k| 0.125 * k as f64 - 1.0).collect()
}
