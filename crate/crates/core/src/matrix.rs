//! Dense square matrices, Givens rotation factors, and the two-row /
//! two-column application kernels everything else is built on.
//!
//! A `GivensRotation` `(i, j, angle)` materializes to the plane rotation
//! `G(i, j, a)` that equals the identity except for the four entries
//! `G[i][i] = cos a`, `G[i][j] = sin a`, `G[j][i] = -sin a`, `G[j][j] = cos a`.
//! Left-multiplying by `G^T` rotates rows `i` and `j` counter-clockwise;
//! right-multiplying by `G` is the column analogue. All algorithms in this
//! crate build residuals with `G^T` applications and report sequences whose
//! in-order product `G_1 ... G_N` approximates the input.

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, standard_normal};

/// Row-major `d x d` matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Creates a matrix from row-major data; `data.len()` must be `dim * dim`.
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DataLength {
                dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.data[k * dim + k] = 1.0;
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Rotates rows `i` and `j` in place: the `G^T(i, j, a) * M` update.
    ///
    /// Only the two rows change; cost is linear in the dimension.
    pub fn rotate_rows(&mut self, g: &GivensRotation) {
        let (c, s) = (g.angle.cos(), g.angle.sin());
        let d = self.dim;
        let (head, tail) = self.data.split_at_mut(g.j * d);
        let row_i = &mut head[g.i * d..(g.i + 1) * d];
        let row_j = &mut tail[..d];
        for (a, b) in row_i.iter_mut().zip(row_j.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = c * x - s * y;
            *b = s * x + c * y;
        }
    }

    /// Rotates columns `i` and `j` in place: the `M * G(i, j, a)` update.
    pub fn rotate_cols(&mut self, g: &GivensRotation) {
        let (c, s) = (g.angle.cos(), g.angle.sin());
        let d = self.dim;
        for r in 0..d {
            let base = r * d;
            let (x, y) = (self.data[base + g.i], self.data[base + g.j]);
            self.data[base + g.i] = c * x - s * y;
            self.data[base + g.j] = s * x + c * y;
        }
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.data[r * d + c];
            }
        }
        out
    }

    /// `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.data[r * d + k];
                if a == 0.0 {
                    continue;
                }
                let src = &other.data[k * d..(k + 1) * d];
                let dst = &mut out.data[r * d..(r + 1) * d];
                for (o, b) in dst.iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self^T * other`, accumulated row-by-row so both operands stream in
    /// row-major order.
    pub fn transpose_matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for k in 0..d {
            let a_row = &self.data[k * d..(k + 1) * d];
            let b_row = &other.data[k * d..(k + 1) * d];
            for (r, &a) in a_row.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let dst = &mut out.data[r * d..(r + 1) * d];
                for (o, &b) in dst.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.dim, data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// The sparsity objective `d^{-1} sum |U_ij|`. Ranges over the orthogonal
    /// group from 1 (signed permutations) to `sqrt(d)` (Hadamard matrices).
    pub fn l1_norm_scaled(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).sum::<f64>() / self.dim as f64
    }

    /// Number of entries with magnitude strictly above `zero_tol`.
    pub fn l0_count(&self, zero_tol: f64) -> usize {
        self.data.iter().filter(|x| x.abs() > zero_tol).count()
    }

    /// Default threshold for [`l0_count`](Self::l0_count): well above the
    /// rounding accumulated by up to `d log d` factor applications.
    pub const L0_ZERO_TOL: f64 = 1e-9;

    /// Checks `||U^T U - I||_F <= tol`.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }

    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.dim;
        let gram = self.transpose_matmul(self).expect("same dims");
        let mut sq = 0.0;
        for r in 0..d {
            for c in 0..d {
                let target = if r == c { 1.0 } else { 0.0 };
                let diff = gram.data[r * d + c] - target;
                sq += diff * diff;
            }
        }
        sq.sqrt()
    }

    pub fn symmetry_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0_f64;
        for r in 0..d {
            for c in (r + 1)..d {
                worst = worst.max((self.data[r * d + c] - self.data[c * d + r]).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.symmetry_defect() <= tol
    }

    /// Determinant via LU decomposition with partial pivoting.
    pub fn determinant(&self) -> f64 {
        let d = self.dim;
        if d == 0 {
            return 1.0;
        }
        let mut work = self.data.clone();
        let mut det = 1.0;
        for k in 0..d {
            let mut piv = k;
            let mut piv_val = work[k * d + k].abs();
            for r in (k + 1)..d {
                let v = work[r * d + k].abs();
                if v > piv_val {
                    piv_val = v;
                    piv = r;
                }
            }
            if piv_val == 0.0 {
                return 0.0;
            }
            if piv != k {
                for c in 0..d {
                    work.swap(k * d + c, piv * d + c);
                }
                det = -det;
            }
            let pivot = work[k * d + k];
            det *= pivot;
            for r in (k + 1)..d {
                let f = work[r * d + k] / pivot;
                if f == 0.0 {
                    continue;
                }
                for c in (k + 1)..d {
                    work[r * d + c] -= f * work[k * d + c];
                }
            }
        }
        det
    }
}

/// One two-level rotation factor acting on the `(i, j)` coordinate plane.
///
/// Indices are kept normalized with `i < j`; constructing with `i > j` swaps
/// them and negates the angle (the same group element). Angles live in
/// `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensRotation {
    i: usize,
    j: usize,
    angle: f64,
}

fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(std::f64::consts::TAU);
    if r > std::f64::consts::PI {
        r -= std::f64::consts::TAU;
    }
    r
}

impl GivensRotation {
    /// Creates a normalized rotation factor.
    ///
    /// # Panics
    /// Panics if `i == j` or the angle is not finite.
    pub fn new(i: usize, j: usize, angle: f64) -> Self {
        assert!(i != j, "rotation plane needs two distinct indices");
        assert!(angle.is_finite(), "rotation angle must be finite");
        let (i, j, angle) = if i < j { (i, j, angle) } else { (j, i, -angle) };
        Self {
            i,
            j,
            angle: wrap_angle(angle),
        }
    }

    #[inline]
    pub fn i(&self) -> usize {
        self.i
    }

    #[inline]
    pub fn j(&self) -> usize {
        self.j
    }

    #[inline]
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// The rotation by the opposite angle; applying both is the identity.
    pub fn inverse(&self) -> Self {
        Self {
            i: self.i,
            j: self.j,
            angle: wrap_angle(-self.angle),
        }
    }

    /// The full `d x d` matrix `G(i, j, angle)`.
    pub fn materialize(&self, dim: usize) -> Result<DenseMatrix> {
        check_indices(self, dim)?;
        let mut m = DenseMatrix::identity(dim);
        m.rotate_cols(self);
        Ok(m)
    }
}

fn check_indices(g: &GivensRotation, dim: usize) -> Result<()> {
    if g.j >= dim {
        return Err(Error::IndexOutOfRange { index: g.j, dim });
    }
    Ok(())
}

/// `G^T(i, j, a) * M`: rows `i` and `j` of `m` mix, everything else is copied.
pub fn apply_left_transpose(g: &GivensRotation, m: &DenseMatrix) -> Result<DenseMatrix> {
    check_indices(g, m.dim())?;
    let mut out = m.clone();
    out.rotate_rows(g);
    Ok(out)
}

/// `M * G(i, j, a)`: columns `i` and `j` of `m` mix.
pub fn apply_right(m: &DenseMatrix, g: &GivensRotation) -> Result<DenseMatrix> {
    check_indices(g, m.dim())?;
    let mut out = m.clone();
    out.rotate_cols(g);
    Ok(out)
}

/// An ordered product `G_1 ... G_N` approximating an orthogonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GivensSequence {
    dim: usize,
    factors: Vec<GivensRotation>,
}

impl GivensSequence {
    pub fn new(dim: usize, factors: Vec<GivensRotation>) -> Result<Self> {
        for g in &factors {
            check_indices(g, dim)?;
        }
        Ok(Self { dim, factors })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, g: GivensRotation) -> Result<()> {
        check_indices(&g, self.dim)?;
        self.factors.push(g);
        Ok(())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[GivensRotation] {
        &self.factors
    }

    /// Truncates to the first `n` factors.
    pub fn prefix(&self, n: usize) -> Self {
        Self {
            dim: self.dim,
            factors: self.factors[..n.min(self.factors.len())].to_vec(),
        }
    }

    /// The dense product `G_1 ... G_N`; orthogonal by construction.
    pub fn materialize(&self) -> DenseMatrix {
        let mut m = DenseMatrix::identity(self.dim);
        for g in &self.factors {
            m.rotate_cols(g);
        }
        m
    }

    /// Applies the product to a vector with one fused two-coordinate update
    /// per factor. Returns the number of updates performed, which is always
    /// `self.len()`; a dense multiply would cost `d^2` instead.
    pub fn apply_to_vec(&self, x: &mut [f64]) -> Result<usize> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut updates = 0;
        for g in self.factors.iter().rev() {
            let (c, s) = (g.angle.cos(), g.angle.sin());
            let (a, b) = (x[g.i], x[g.j]);
            x[g.i] = c * a + s * b;
            x[g.j] = -s * a + c * b;
            updates += 1;
        }
        Ok(updates)
    }

    /// Applies the product on the left of a matrix, one fused two-row update
    /// per factor. Returns the update count.
    pub fn apply_to_matrix(&self, m: &mut DenseMatrix) -> Result<usize> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: m.dim(),
            });
        }
        let mut updates = 0;
        for g in self.factors.iter().rev() {
            m.rotate_rows(&g.inverse());
            updates += 1;
        }
        Ok(updates)
    }
}

/// Draws from the uniform (Haar) distribution on the orthogonal group by
/// orthonormalizing the rows of a Gaussian matrix with modified Gram-Schmidt;
/// the positive normalization fixes the triangular factor's sign ambiguity.
pub fn sample_haar_orthogonal(dim: usize, rng_seed: u64) -> Result<DenseMatrix> {
    if dim < 2 {
        return Err(Error::invalid(format!(
            "haar sampling needs dimension >= 2, got {dim}"
        )));
    }
    let mut rng = rng_from_seed(rng_seed);
    let mut m = DenseMatrix::zeros(dim);
    for v in m.data.iter_mut() {
        *v = standard_normal(&mut rng);
    }
    for r in 0..dim {
        for prev in 0..r {
            let dot: f64 = m.row(r).iter().zip(m.row(prev)).map(|(a, b)| a * b).sum();
            let base = r * dim;
            for c in 0..dim {
                m.data[base + c] -= dot * m.data[prev * dim + c];
            }
        }
        let norm: f64 = m.row(r).iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            // Probability-zero degeneracy of the Gaussian draw.
            return Err(Error::invalid("degenerate gaussian sample"));
        }
        let base = r * dim;
        for c in 0..dim {
            m.data[base + c] /= norm;
        }
    }
    Ok(m)
}

/// The Sylvester Hadamard matrix: orthogonal with all entries of magnitude
/// `1/sqrt(d)`. Requires `d` a power of two.
pub fn hadamard(dim: usize) -> Result<DenseMatrix> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::invalid(format!(
            "hadamard matrix needs a power-of-two dimension, got {dim}"
        )));
    }
    let mut m = DenseMatrix::zeros(dim);
    m.data[0] = 1.0;
    let mut size = 1;
    while size < dim {
        for r in 0..size {
            for c in 0..size {
                let v = m.data[r * dim + c];
                m.data[r * dim + (c + size)] = v;
                m.data[(r + size) * dim + c] = v;
                m.data[(r + size) * dim + (c + size)] = -v;
            }
        }
        size *= 2;
    }
    let scale = 1.0 / (dim as f64).sqrt();
    for v in m.data.iter_mut() {
        *v *= scale;
    }
    Ok(m)
}
