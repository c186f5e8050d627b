//! The permutation-invariant approximation metric and related statistics.
//!
//! Orthogonal approximations are compared up to right-multiplication by a
//! signed permutation: `symnorm(U, V) = min_P ||U - V P||_F` over all signed
//! permutation matrices `P`. Expanding the square gives
//! `||U - V P||_F^2 = 2d - 2 tr(P^T V^T U)`, so the minimization reduces to
//! an exact linear assignment on the absolute values of `M = V^T U`, with
//! the optimal sign of each matched entry read off directly.

use crate::assignment::solve_assignment;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, GivensSequence};

/// A matrix with exactly one `+-1` entry per row and per column.
///
/// `perm[k]` is the column carrying row `k`'s nonzero, whose value is
/// `signs[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        if perm.len() != signs.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                got: signs.len(),
            });
        }
        let d = perm.len();
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d {
                return Err(Error::IndexOutOfRange { index: p, dim: d });
            }
            if seen[p] {
                return Err(Error::invalid(format!("column {p} used twice")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invalid("signs must be +1 or -1"));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            perm: (0..dim).collect(),
            signs: vec![1; dim],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn materialize(&self) -> DenseMatrix {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(d);
        for (k, (&col, &sign)) in self.perm.iter().zip(&self.signs).enumerate() {
            m.set(k, col, f64::from(sign));
        }
        m
    }
}

/// The minimum of `||u - u_hat P||_F` over signed permutations `P`, together
/// with the minimizing `P`.
///
/// Both inputs should be orthogonal for the metric to mean anything; the
/// computation itself does not require it and never rejects. Assignment ties
/// are resolved deterministically (lowest row index first).
pub fn symnorm(u: &DenseMatrix, u_hat: &DenseMatrix) -> Result<(f64, SignedPermutation)> {
    if u.dim() != u_hat.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: u_hat.dim(),
        });
    }
    let overlap = u_hat.transpose_matmul(u)?;
    symnorm_of_overlap(&overlap)
}

/// Same reduction, starting from the precomputed overlap `M = u_hat^T u`.
///
/// With `u_hat = I` this skips the matrix product, which matters when the
/// metric runs inside factorization checkpoint loops.
///
/// The assignment maximizes `tr(P^T M) = sum_k |M_{k, sigma(k)}|`; the
/// returned value is then measured as `||M - P||_F` directly rather than
/// through `sqrt(2d - 2 tr)`, whose cancellation would floor the result
/// near `sqrt(d * eps)` for almost-exact approximations.
pub fn symnorm_of_overlap(overlap: &DenseMatrix) -> Result<(f64, SignedPermutation)> {
    let d = overlap.dim();
    let cost: Vec<f64> = overlap.data().iter().map(|m| -m.abs()).collect();
    let perm = solve_assignment(d, &cost);
    let mut signs = vec![1i8; d];
    for (k, &col) in perm.iter().enumerate() {
        if overlap.get(k, col) < 0.0 {
            signs[k] = -1;
        }
    }
    let mut sq = 0.0;
    for (k, (&col, &sign)) in perm.iter().zip(&signs).enumerate() {
        for c in 0..d {
            let target = if c == col { f64::from(sign) } else { 0.0 };
            let diff = overlap.get(k, c) - target;
            sq += diff * diff;
        }
    }
    Ok((sq.sqrt(), SignedPermutation::new(perm, signs)?))
}

/// Exhaustive oracle for [`symnorm`]: tries every one of the `d! * 2^d`
/// signed permutations and measures the distance by direct summation.
/// Limited to `d <= 6`.
pub fn symnorm_bruteforce(u: &DenseMatrix, u_hat: &DenseMatrix) -> Result<f64> {
    let d = u.dim();
    if u_hat.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: u_hat.dim(),
        });
    }
    if d > 6 {
        return Err(Error::invalid(format!(
            "brute-force enumeration is limited to d <= 6, got {d}"
        )));
    }
    let mut best = f64::INFINITY;
    let mut perm: Vec<usize> = (0..d).collect();
    permute(&mut perm, 0, &mut |perm| {
        for mask in 0u32..(1 << d) {
            let mut sq = 0.0;
            for r in 0..d {
                for (k, &col) in perm.iter().enumerate() {
                    let sign = if mask & (1 << k) != 0 { -1.0 } else { 1.0 };
                    let diff = u.get(r, col) - sign * u_hat.get(r, k);
                    sq += diff * diff;
                }
            }
            if sq < best {
                best = sq;
            }
        }
    });
    Ok(best.sqrt())
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for swap in k..items.len() {
        items.swap(k, swap);
        permute(items, k + 1, visit);
        items.swap(k, swap);
    }
}

/// Smallest prefix length `N` of `seq` with `symnorm(u, G_1..G_N)/sqrt(d)`
/// below `eps`, or `None` if no prefix qualifies.
///
/// The error is evaluated on a checkpoint grid of stride
/// `max(1, len/200)` (a full metric evaluation costs O(d^3)), then the first
/// qualifying checkpoint is refined by bisection against the preceding one.
pub fn n_epsilon(u: &DenseMatrix, seq: &GivensSequence, eps: f64) -> Result<Option<usize>> {
    if eps <= 0.0 {
        return Err(Error::invalid("eps must be positive"));
    }
    if u.dim() != seq.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: seq.dim(),
        });
    }
    let d = u.dim();
    let sqrt_d = (d as f64).sqrt();
    let total = seq.len();
    let stride = (total / 200).max(1);

    let error_of = |prefix: &DenseMatrix| -> Result<f64> { Ok(symnorm(u, prefix)?.0 / sqrt_d) };

    let mut prefix = DenseMatrix::identity(d);
    let mut prev_n = 0usize;
    let mut prev_matrix = prefix.clone();
    let mut n = 0usize;
    loop {
        if error_of(&prefix)? < eps {
            if n == 0 {
                return Ok(Some(0));
            }
            // Bisect (prev_n, n]: prev fails, n passes.
            let mut lo = prev_n;
            let mut hi = n;
            let mut lo_matrix = prev_matrix;
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                let mut mid_matrix = lo_matrix.clone();
                for g in &seq.factors()[lo..mid] {
                    mid_matrix.rotate_cols(g);
                }
                if error_of(&mid_matrix)? < eps {
                    hi = mid;
                } else {
                    lo = mid;
                    lo_matrix = mid_matrix;
                }
            }
            return Ok(Some(hi));
        }
        if n == total {
            return Ok(None);
        }
        prev_n = n;
        prev_matrix = prefix.clone();
        let next = (n + stride).min(total);
        for g in &seq.factors()[n..next] {
            prefix.rotate_cols(g);
        }
        n = next;
    }
}

/// Squared Frobenius norm of the off-diagonal part:
/// `off(L) = ||L||_F^2 - sum_k L_kk^2`.
pub fn off_diagonal(l: &DenseMatrix) -> f64 {
    let norm = l.frobenius_norm();
    let diag_sq: f64 = (0..l.dim()).map(|k| l.get(k, k) * l.get(k, k)).sum();
    (norm * norm - diag_sq).max(0.0)
}
