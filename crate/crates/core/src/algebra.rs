//! Associative operator algebras: closure, commutants and the independence and
//! completeness conditions under which a family of subalgebras induces a
//! tensor product structure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{commutator, null_space, ComplexMatrix, OperatorSpan};

/// Frobenius-orthonormal basis of a multiplicatively closed span of `d × d` operators.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    ambient_dim: usize,
    basis: Vec<ComplexMatrix>,
    closure_tol: f64,
}

impl AlgebraBasis {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the algebra as a vector space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn closure_tol(&self) -> f64 {
        self.closure_tol
    }

    /// Largest relative residual of a pairwise product `b_i b_j` outside the span.
    pub fn closure_defect(&self) -> f64 {
        let span = self.span();
        let mut worst: f64 = 0.0;
        for a in &self.basis {
            for b in &self.basis {
                let p = a * b;
                worst = worst.max(span.residual(&p) / p.frobenius_norm().max(1.0));
            }
        }
        worst
    }

    /// Component of `op` outside the algebra, in Frobenius norm.
    pub fn residual(&self, op: &ComplexMatrix) -> f64 {
        self.span().residual(op)
    }

    fn span(&self) -> OperatorSpan {
        let d = self.ambient_dim;
        let mut span = OperatorSpan::new(d, d, 0.0);
        for b in &self.basis {
            span.push(b);
        }
        span
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZanardiReport {
    /// Largest `‖[a, b]‖_F` over basis elements of distinct algebras.
    pub independence_max_commutator: f64,
    /// Dimension of the algebra generated by all bases jointly.
    pub generated_dim: usize,
    /// `∏ dim A_i`.
    pub dims_product: usize,
    pub is_independent: bool,
    pub is_complete: bool,
    pub tol: f64,
}

impl ZanardiReport {
    /// Both conditions hold, so the algebras induce a tensor product structure.
    pub fn induces_tps(&self) -> bool {
        self.is_independent && self.is_complete
    }
}

fn check_square(ops: &[ComplexMatrix], d: usize) -> Result<()> {
    if let Some(bad) = ops.iter().position(|g| g.shape() != (d, d)) {
        return Err(Error::DimensionMismatch(format!(
            "operator {bad} has shape {:?}, expected {d}x{d}",
            ops[bad].shape()
        )));
    }
    Ok(())
}

/// Smallest multiplicatively closed subspace of `M_d` containing the identity and `generators`.
///
/// Each round multiplies every pair of basis elements in which at least one
/// factor was admitted in the previous round, adjoining products in a fixed
/// order until a round admits nothing or the span is all of `M_d`.
pub fn generated_algebra(generators: &[ComplexMatrix], d: usize, tol: f64) -> Result<AlgebraBasis> {
    if d == 0 {
        return Err(Error::InvalidInput("ambient dimension must be positive".into()));
    }
    check_square(generators, d)?;

    let mut span = OperatorSpan::new(d, d, tol);
    span.push(&ComplexMatrix::identity(d));
    for g in generators {
        span.push(g);
    }

    let mut fresh_from = 0;
    while !span.is_full() {
        let before = span.len();
        let current: Vec<ComplexMatrix> = (0..before).map(|i| span.matrix(i)).collect();
        'round: for (i, a) in current.iter().enumerate() {
            for (j, b) in current.iter().enumerate() {
                if i < fresh_from && j < fresh_from {
                    continue;
                }
                span.push(&(a * b));
                if span.is_full() {
                    break 'round;
                }
            }
        }
        if span.len() == before {
            break;
        }
        fresh_from = before;
    }

    Ok(AlgebraBasis { ambient_dim: d, basis: span.into_matrices(), closure_tol: tol })
}

/// Stacks the maps `X ↦ A_i X − X A_i` on row-major vectorized `X`.
fn commutation_system(ops: &[ComplexMatrix], d: usize) -> ComplexMatrix {
    let n = d * d;
    let mut system = ComplexMatrix::zeros(ops.len().max(1) * n, n);
    for (block, a) in ops.iter().enumerate() {
        let base = block * n;
        for i in 0..d {
            for j in 0..d {
                let row = base + i * d + j;
                for k in 0..d {
                    // (A X)_ij = Σ_k A_ik X_kj
                    system[(row, k * d + j)] += a[(i, k)];
                    // (X A)_ij = Σ_k X_ik A_kj
                    system[(row, i * d + k)] -= a[(k, j)];
                }
            }
        }
    }
    system
}

/// Operators commuting with every basis element of `algebra`.
///
/// Computed as the null space of the stacked commutation maps, keeping singular
/// directions below `closure_tol · max(1, σ_max)`. Basis elements have unit norm,
/// so the floor of 1 only matters when every commutator is rounding noise.
pub fn commutant(algebra: &AlgebraBasis) -> AlgebraBasis {
    let d = algebra.ambient_dim;
    let system = commutation_system(&algebra.basis, d);
    let basis = null_space(&system, algebra.closure_tol)
        .into_iter()
        .map(|v| ComplexMatrix::new(d, d, v).expect("null vectors are finite"))
        .collect();
    AlgebraBasis { ambient_dim: d, basis, closure_tol: algebra.closure_tol }
}

/// Checks independence and completeness of a family of algebras on `C^d`.
pub fn verify_zanardi(algebras: &[AlgebraBasis], d: usize, tol: f64) -> Result<ZanardiReport> {
    if algebras.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least two algebras, got {}",
            algebras.len()
        )));
    }
    if let Some(bad) = algebras.iter().position(|a| a.ambient_dim != d) {
        return Err(Error::DimensionMismatch(format!(
            "algebra {bad} acts on dimension {}, expected {d}",
            algebras[bad].ambient_dim
        )));
    }

    let mut max_commutator: f64 = 0.0;
    for (i, a) in algebras.iter().enumerate() {
        for b in &algebras[i + 1..] {
            for x in &a.basis {
                for y in &b.basis {
                    max_commutator = max_commutator.max(commutator(x, y).frobenius_norm());
                }
            }
        }
    }

    let union: Vec<ComplexMatrix> = algebras.iter().flat_map(|a| a.basis.iter().cloned()).collect();
    let generated_dim = generated_algebra(&union, d, tol)?.dim();
    let dims_product = algebras.iter().map(AlgebraBasis::dim).product();

    Ok(ZanardiReport {
        independence_max_commutator: max_commutator,
        generated_dim,
        dims_product,
        is_independent: max_commutator < tol,
        is_complete: generated_dim == d * d && dims_product == d * d,
        tol,
    })
}

/// `(dim A, dim A′, dim A″)`.
pub fn double_commutant_check(algebra: &AlgebraBasis) -> (usize, usize, usize) {
    let prime = commutant(algebra);
    let double_prime = commutant(&prime);
    (algebra.dim(), prime.dim(), double_prime.dim())
}

/// Similarity transform `U X U†` of each operator.
pub fn transport(u: &ComplexMatrix, ops: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let u_dag = u.adjoint();
    ops.iter().map(|x| &(u * x) * &u_dag).collect()
}

/// Basis of `M_n` made of the matrix units `E_ij`, row-major.
pub fn matrix_units(n: usize) -> Vec<ComplexMatrix> {
    (0..n * n)
        .map(|k| {
            ComplexMatrix::from_fn(n, n, |r, c| {
                if r * n + c == k {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        })
        .collect()
}
