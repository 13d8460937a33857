//! Dense complex linear algebra.
//!
//! Matrices are stored row-major. Tensor products put the first factor on the
//! major index: `e_j ⊗ e_k` of `C^k ⊗ C^l` is `e_{j·l + k}` of `C^{kl}`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default numerical tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

const SVD_MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting empty shapes and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!("matrix shape {rows}x{cols} is empty")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(format!("entry ({}, {})", pos / cols, pos % cols)));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be non-empty");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix shape must be non-empty");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Square diagonal matrix.
    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r] } else { ZERO })
    }

    /// Builds a matrix from nested real rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| Complex64::new(rows[r][c], 0.0))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[StateVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, StateVector::dim);
        if columns.iter().any(|c| c.dim() != rows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c].amplitudes()[r]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    /// Largest entrywise modulus of `self - other`. Panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Applies the matrix to a state. Fails if the image has zero norm.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.cols != state.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a state of dimension {}",
                self.rows,
                self.cols,
                state.dim()
            )));
        }
        StateVector::new(self.mul_vec(state.amplitudes()))
    }

    /// `‖self† self − 1‖_F`, the distance from unitarity.
    pub fn unitarity_defect(&self) -> f64 {
        (&(&self.adjoint() * self) - &Self::identity(self.cols)).frobenius_norm()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Unchecked product; panics on a shape mismatch. See [`matmul`] for the checked form.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

/// Amplitudes of a pure state in the standard basis (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Rejects empty, non-finite, or zero-norm amplitude lists.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidInput("state has no amplitudes".into()));
        }
        if let Some(pos) = amplitudes.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(format!("amplitude {pos}")));
        }
        if norm_sqr(&amplitudes) <= 0.0 {
            return Err(Error::InvalidInput("state has zero norm".into()));
        }
        Ok(Self { amplitudes })
    }

    /// Standard basis vector `e_index` of `C^dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self { amplitudes: self.amplitudes.iter().map(|z| z / n).collect() }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        dot(&self.amplitudes, &other.amplitudes)
    }

    pub fn kron(&self, other: &Self) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Self { amplitudes }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Thin singular value decomposition `m = left · diag(singular_values) · right_conj`.
#[derive(Clone, Debug)]
pub struct Svd {
    /// `rows × p` with orthonormal columns, `p = min(rows, cols)`.
    pub left: ComplexMatrix,
    /// Non-increasing, non-negative.
    pub singular_values: Vec<f64>,
    /// `p × cols` with orthonormal rows.
    pub right_conj: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let p = self.singular_values.len();
        let scaled = ComplexMatrix::from_fn(self.left.rows(), p, |r, c| {
            self.left[(r, c)] * self.singular_values[c]
        });
        &scaled * &self.right_conj
    }
}

pub(crate) fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum()
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    norm_sqr(v).sqrt()
}

/// Two passes of modified Gram–Schmidt projection against an orthonormal set.
fn orthogonalize(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
}

fn unit(v: Vec<Complex64>) -> Vec<Complex64> {
    let n = norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// Extends an orthonormal set in `C^dim` to `count` vectors with orthogonalized
/// standard basis vectors, taken in order.
fn complete_with_standard_basis(basis: &mut Vec<Vec<Complex64>>, dim: usize, count: usize, tol: f64) {
    debug_assert!(count <= dim);
    for i in 0..dim {
        if basis.len() >= count {
            return;
        }
        let mut e = vec![ZERO; dim];
        e[i] = ONE;
        orthogonalize(&mut e, basis);
        if norm(&e) >= tol {
            basis.push(unit(e));
        }
    }
    // Only reachable if tol rejected a candidate that was still needed.
    while basis.len() < count {
        let best = (0..dim)
            .map(|i| {
                let mut e = vec![ZERO; dim];
                e[i] = ONE;
                orthogonalize(&mut e, basis);
                e
            })
            .max_by(|a, b| norm(a).total_cmp(&norm(b)))
            .expect("dim > 0");
        basis.push(unit(best));
    }
}

/// Checked matrix product.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(a * b)
}

/// Kronecker product with `a` on the major index.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = b.shape();
    ComplexMatrix::from_fn(a.rows * br, a.cols * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Kronecker product of a non-empty list of factors, first factor major.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    let mut iter = factors.into_iter();
    let first = iter.next().expect("kron_all needs at least one factor").clone();
    iter.fold(first, |acc, f| kron(&acc, f))
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) - &(b * a)
}

/// `Tr(a† b)`.
pub fn frobenius_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "Frobenius inner product of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(dot(&a.data, &b.data))
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows < m.cols {
        let t = svd(&m.adjoint());
        return Svd {
            left: t.right_conj.adjoint(),
            singular_values: t.singular_values,
            right_conj: t.left.adjoint(),
        };
    }

    let n = m.cols;
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|c| m.column(c)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|c| {
            let mut e = vec![ZERO; n];
            e[c] = ONE;
            e
        })
        .collect();

    // Columns below this squared norm are rounding noise and are not rotated.
    let floor = (f64::EPSILON * m.frobenius_norm()).powi(2);
    // Rounding in a length-`rows` inner product grows like √rows · ε.
    let converged = f64::EPSILON * (m.rows as f64).sqrt();
    for _ in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&a[p]);
                let beta = norm_sqr(&a[q]);
                if alpha <= floor || beta <= floor {
                    continue;
                }
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= converged * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for cols in [&mut a, &mut v] {
                    let (lo, hi) = cols.split_at_mut(q);
                    for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let yp = *xp;
                        let yq = *xq * phase;
                        *xp = yp * c - yq * s;
                        *xq = yp * s + yq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = a.iter().map(|col| norm(col)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let sigma_max = sigma[order[0]];

    // Columns with negligible singular value carry no direction; fill them afterwards.
    let cutoff = sigma_max * 1e-14;
    let mut left_cols: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&j| {
            (sigma[j] > cutoff && sigma[j] > 0.0)
                .then(|| a[j].iter().map(|z| z / sigma[j]).collect())
        })
        .collect();
    if left_cols.iter().any(Option::is_none) {
        let mut known: Vec<Vec<Complex64>> = left_cols.iter().flatten().cloned().collect();
        let have = known.len();
        complete_with_standard_basis(&mut known, m.rows, n, DEFAULT_TOL);
        let mut fill = known.into_iter().skip(have);
        for slot in left_cols.iter_mut().filter(|s| s.is_none()) {
            *slot = fill.next();
        }
    }

    let left = ComplexMatrix::from_fn(m.rows, n, |r, c| left_cols[c].as_ref().expect("filled")[r]);
    let right_conj = ComplexMatrix::from_fn(n, n, |r, c| v[order[r]][c].conj());
    let singular_values = order.iter().map(|&j| sigma[j]).collect();
    Svd { left, singular_values, right_conj }
}

/// Extends `seeds` to an orthonormal basis of `C^dim`.
///
/// The seeds are orthonormalized in order, then the standard basis vectors
/// `e_0, e_1, …` are orthogonalized against everything so far and admitted
/// when their residual norm is at least `tol`. The output is deterministic.
pub fn gram_schmidt_complete(
    seed_vectors: &[StateVector],
    dim: usize,
    tol: f64,
) -> Result<Vec<StateVector>> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for (index, seed) in seed_vectors.iter().enumerate() {
        if seed.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "seed {index} has dimension {}, expected {dim}",
                seed.dim()
            )));
        }
        let mut v = seed.amplitudes().to_vec();
        orthogonalize(&mut v, &basis);
        let residual = norm(&v);
        if residual < tol * seed.norm().max(1.0) {
            return Err(Error::DependentSeeds { index, residual });
        }
        basis.push(unit(v));
    }
    complete_with_standard_basis(&mut basis, dim, dim, tol);
    Ok(basis.into_iter().map(|amplitudes| StateVector { amplitudes }).collect())
}

/// Incrementally built Frobenius-orthonormal basis of a span of same-shaped matrices.
#[derive(Clone, Debug)]
pub struct OperatorSpan {
    rows: usize,
    cols: usize,
    tol: f64,
    basis: Vec<Vec<Complex64>>,
}

impl OperatorSpan {
    pub fn new(rows: usize, cols: usize, tol: f64) -> Self {
        Self { rows, cols, tol, basis: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Maximum possible dimension, `rows · cols`.
    pub fn capacity(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.capacity()
    }

    /// Adjoins `op` if its residual after projection exceeds `tol · max(1, ‖op‖_F)`.
    /// Returns whether it was admitted.
    pub fn push(&mut self, op: &ComplexMatrix) -> bool {
        assert_eq!(op.shape(), (self.rows, self.cols), "operator shape mismatch");
        if self.is_full() {
            return false;
        }
        let mut v = op.data.clone();
        orthogonalize(&mut v, &self.basis);
        let residual = norm(&v);
        if residual > self.tol * op.frobenius_norm().max(1.0) {
            self.basis.push(unit(v));
            true
        } else {
            false
        }
    }

    /// Norm of the component of `op` orthogonal to the span.
    pub fn residual(&self, op: &ComplexMatrix) -> f64 {
        let mut v = op.data.clone();
        orthogonalize(&mut v, &self.basis);
        norm(&v)
    }

    pub fn matrix(&self, i: usize) -> ComplexMatrix {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.basis[i].clone() }
    }

    pub fn into_matrices(self) -> Vec<ComplexMatrix> {
        let (rows, cols) = (self.rows, self.cols);
        self.basis.into_iter().map(|data| ComplexMatrix { rows, cols, data }).collect()
    }
}

/// Frobenius-orthonormal basis of the linear span of `ops`, admitted in input order.
pub fn span_basis(ops: &[ComplexMatrix], tol: f64) -> Result<Vec<ComplexMatrix>> {
    let Some(first) = ops.first() else {
        return Ok(Vec::new());
    };
    let (rows, cols) = first.shape();
    if let Some(bad) = ops.iter().position(|op| op.shape() != (rows, cols)) {
        return Err(Error::DimensionMismatch(format!(
            "operator {bad} has shape {:?}, expected {:?}",
            ops[bad].shape(),
            (rows, cols)
        )));
    }
    let mut span = OperatorSpan::new(rows, cols, tol);
    for op in ops {
        span.push(op);
    }
    Ok(span.into_matrices())
}

/// Orthonormal basis of the null space of `m`: right singular vectors whose singular value
/// is at most `tol · max(1, σ_max)`.
pub(crate) fn null_space(m: &ComplexMatrix, tol: f64) -> Vec<Vec<Complex64>> {
    // Pad wide inputs so the thin SVD returns a full set of right singular vectors.
    let padded;
    let m = if m.rows < m.cols {
        let mut data = m.data.clone();
        data.resize(m.cols * m.cols, ZERO);
        padded = ComplexMatrix { rows: m.cols, cols: m.cols, data };
        &padded
    } else {
        m
    };
    let svd = svd(m);
    let cutoff = tol * svd.singular_values[0].max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| svd.right_conj.row(i).iter().map(|z| z.conj()).collect())
        .collect()
}
