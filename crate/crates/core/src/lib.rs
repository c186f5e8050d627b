//! Approximation of orthogonal matrices by short products of Givens
//! rotations.
//!
//! Applying a dense orthogonal matrix to a vector costs O(d^2); applying an
//! N-term product of two-level rotation factors costs O(N). This crate
//! provides four ways to produce such products, the permutation-invariant
//! error metric used to judge them, a planted-instance benchmark family,
//! and an approximate graph Fourier transform pipeline built on top:
//!
//! - structured elimination: exact factorization in d(d-1)/2 factors,
//! - greedy trace alignment of the residual,
//! - sparsity-driven coordinate descent on the scaled element-wise L1 norm,
//! - truncated two-sided diagonalization of a symmetric matrix.

pub mod assignment;
mod error;
pub mod factorize;
pub mod graphs;
pub mod matrix;
pub mod metrics;
pub mod planted;
pub mod record;
pub mod rng;

pub use error::{Error, Result};
pub use factorize::{
    factorize, factorize_elimination, factorize_greedy, factorize_l1, jacobi_truncated,
    optimal_angle_l1, perturbation_gap, Algorithm, FactorizeConfig, FactorizeTrace, StopReason,
};
pub use graphs::{
    barabasi_albert, eigendecompose, gft_experiment, laplacian, load_edge_list, EigenDecomposition,
    Graph,
};
pub use matrix::{
    apply_left_transpose, apply_right, hadamard, sample_haar_orthogonal, DenseMatrix,
    GivensRotation, GivensSequence,
};
pub use metrics::{n_epsilon, off_diagonal, symnorm, symnorm_bruteforce, SignedPermutation};
pub use planted::{
    approximation_experiment, density_curve, density_samples, fit_power_law, growth_rate_fit,
    sample_planted, PlantedSample,
};
pub use record::{Experiment, ExperimentRecord};
