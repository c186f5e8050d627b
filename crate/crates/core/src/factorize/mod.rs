//! The factorization algorithms: structured elimination, greedy trace
//! alignment, sparsity-driven coordinate descent, and truncated two-sided
//! diagonalization.
//!
//! All algorithms share one bookkeeping convention: rotations are applied to
//! a residual as `V_k = G_k^T ... G_1^T V_0` and the reported sequence is
//! `G_1, ..., G_N` in that order, so the in-order product approximates the
//! input up to the residual. Because the Frobenius norm is orthogonally
//! invariant, the approximation error `symnorm(U, G_1..G_k) / sqrt(d)` equals
//! `symnorm(V_k, I) / sqrt(d)`, which is what the per-run checkpoints record.

mod angle;
mod elimination;
mod greedy;
pub(crate) mod jacobi;
mod l1;
mod perturbation;

pub use angle::optimal_angle_l1;
pub use elimination::factorize_elimination;
pub use greedy::factorize_greedy;
pub use jacobi::jacobi_truncated;
pub use l1::factorize_l1;
pub use perturbation::perturbation_gap;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, GivensSequence};

/// Orthogonality tolerance for factorization inputs.
pub(crate) const INPUT_ORTHO_TOL: f64 = 1e-8;

/// Symmetry tolerance for diagonalization inputs.
pub(crate) const INPUT_SYM_TOL: f64 = 1e-8;

/// A selection is considered a tie when objective decreases differ by less
/// than this; ties go to the lexicographically smallest plane.
pub(crate) const TIE_EPS: f64 = 1e-12;

/// Below this best-available decrease the iteration cannot make progress
/// and the run stops.
pub(crate) const STALL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Elimination,
    GreedyFrobenius,
    L1CoordinateDescent,
    TruncatedJacobi,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Elimination => "elimination",
            Algorithm::GreedyFrobenius => "greedy",
            Algorithm::L1CoordinateDescent => "l1",
            Algorithm::TruncatedJacobi => "jacobi",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "elimination" => Ok(Algorithm::Elimination),
            "greedy" => Ok(Algorithm::GreedyFrobenius),
            "l1" => Ok(Algorithm::L1CoordinateDescent),
            "jacobi" => Ok(Algorithm::TruncatedJacobi),
            other => Err(Error::invalid(format!(
                "unknown algorithm '{other}' (expected elimination|greedy|l1|jacobi)"
            ))),
        }
    }
}

/// Run parameters shared by the iterative factorizers.
#[derive(Debug, Clone, Copy)]
pub struct FactorizeConfig {
    pub algorithm: Algorithm,
    /// Hard cap on the number of emitted factors.
    pub max_factors: usize,
    /// Stop once `symnorm(residual, I)/sqrt(d)` drops below this at a
    /// checkpoint.
    pub eps: f64,
    /// Recorded in output rows; the algorithms themselves are deterministic.
    pub seed: u64,
    /// Error checkpoints are evaluated every this many iterations (the
    /// metric costs O(d^3), checking every step would dominate).
    pub checkpoint_stride: usize,
    /// Per-plane cache reuse in the coordinate-descent search. Disabling it
    /// recomputes every plane each iteration; selections must not change.
    pub use_cache: bool,
}

impl FactorizeConfig {
    pub fn new(algorithm: Algorithm, max_factors: usize, eps: f64) -> Self {
        Self {
            algorithm,
            max_factors,
            eps,
            seed: 0,
            checkpoint_stride: 25,
            use_cache: true,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_checkpoint_stride(mut self, stride: usize) -> Self {
        self.checkpoint_stride = stride;
        self
    }

    pub fn with_cache(mut self, use_cache: bool) -> Self {
        self.use_cache = use_cache;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(Error::invalid("eps must be positive"));
        }
        if self.checkpoint_stride == 0 {
            return Err(Error::invalid("checkpoint stride must be at least 1"));
        }
        Ok(())
    }
}

impl Default for FactorizeConfig {
    fn default() -> Self {
        Self::new(Algorithm::L1CoordinateDescent, 10_000, 0.1)
    }
}

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Error (or pivot) threshold reached.
    Converged,
    /// Factor budget exhausted.
    MaxFactors,
    /// No plane offered a measurable objective decrease.
    Stalled,
    /// Direct method ran its full schedule.
    Completed,
}

/// Everything a factorization run produces.
#[derive(Debug, Clone)]
pub struct FactorizeTrace {
    /// The reported sequence; its in-order product approximates the input.
    pub sequence: GivensSequence,
    /// Per-iteration objective values, entry 0 being the initial state.
    /// Scaled L1 norm for the coordinate-descent run, `||V - I||_F` for the
    /// greedy run, off-diagonal mass for the truncated diagonalization;
    /// empty for elimination (a direct method).
    pub objective_history: Vec<f64>,
    /// `(N, symnorm/sqrt(d))` pairs recorded at checkpoints. Empty for the
    /// truncated diagonalization, which has no reference basis to compare
    /// against.
    pub error_checkpoints: Vec<(usize, f64)>,
    pub stop: StopReason,
}

impl FactorizeTrace {
    /// The last recorded normalized error, if any checkpoint was taken.
    pub fn final_error(&self) -> Option<f64> {
        self.error_checkpoints.last().map(|&(_, e)| e)
    }
}

/// Dispatches to the algorithm selected in the config.
pub fn factorize(m: &DenseMatrix, cfg: &FactorizeConfig) -> Result<FactorizeTrace> {
    match cfg.algorithm {
        Algorithm::Elimination => factorize_elimination(m),
        Algorithm::GreedyFrobenius => factorize_greedy(m, cfg),
        Algorithm::L1CoordinateDescent => factorize_l1(m, cfg),
        Algorithm::TruncatedJacobi => jacobi_truncated(m, cfg),
    }
}

pub(crate) fn require_orthogonal(m: &DenseMatrix) -> Result<()> {
    let defect = m.orthogonality_defect();
    if defect > INPUT_ORTHO_TOL {
        return Err(Error::NotOrthogonal {
            defect,
            tol: INPUT_ORTHO_TOL,
        });
    }
    Ok(())
}

pub(crate) fn require_symmetric(m: &DenseMatrix) -> Result<()> {
    let defect = m.symmetry_defect();
    if defect > INPUT_SYM_TOL {
        return Err(Error::NotSymmetric {
            defect,
            tol: INPUT_SYM_TOL,
        });
    }
    Ok(())
}

/// Cancellation-free off-diagonal mass, used inside the diagonalization
/// loops where values shrink below the rounding floor of the subtraction
/// formula in [`crate::metrics::off_diagonal`].
pub(crate) fn off_diagonal_sum(l: &DenseMatrix) -> f64 {
    let d = l.dim();
    let mut sum = 0.0;
    for r in 0..d {
        for c in (r + 1)..d {
            let v = l.get(r, c);
            let w = l.get(c, r);
            sum += v * v + w * w;
        }
    }
    sum
}
