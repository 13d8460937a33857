//! Schmidt decomposition of bipartite pure states and entanglement entropy.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_complete, svd, ComplexMatrix, StateVector, DEFAULT_TOL};

/// `ψ = Σ_i coefficients[i] · phases[i] · left_basis[i] ⊗ right_basis[i]`.
///
/// The SVD absorbs all phases into `right_basis`, so `phases` is all ones for
/// decomposed states; it is kept so complex Schmidt weights have a home.
#[derive(Clone, Debug)]
pub struct SchmidtData {
    pub k: usize,
    pub l: usize,
    /// Non-increasing and non-negative, length `min(k, l)`.
    pub coefficients: Vec<f64>,
    /// `k` orthonormal vectors of `C^k`.
    pub left_basis: Vec<StateVector>,
    /// `l` orthonormal vectors of `C^l`.
    pub right_basis: Vec<StateVector>,
    pub phases: Vec<Complex64>,
}

impl SchmidtData {
    pub fn rank(&self, tol: f64) -> usize {
        self.coefficients.iter().filter(|&&c| c > tol).count()
    }

    pub fn reconstruct(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.k * self.l];
        for (i, (&coef, phase)) in self.coefficients.iter().zip(&self.phases).enumerate() {
            let w = phase * coef;
            for (a, x) in self.left_basis[i].amplitudes().iter().enumerate() {
                for (b, y) in self.right_basis[i].amplitudes().iter().enumerate() {
                    out[a * self.l + b] += w * x * y;
                }
            }
        }
        out
    }
}

/// Reshapes `psi` into the `k × l` matrix `M[j][m] = ψ[j·l + m]`.
pub fn coefficient_matrix(psi: &StateVector, k: usize, l: usize) -> Result<ComplexMatrix> {
    if k == 0 || l == 0 || k * l != psi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "cannot split a state of dimension {} into {k} x {l}",
            psi.dim()
        )));
    }
    ComplexMatrix::new(k, l, psi.amplitudes().to_vec())
}

pub fn schmidt_decompose(psi: &StateVector, k: usize, l: usize) -> Result<SchmidtData> {
    let m = coefficient_matrix(psi, k, l)?;
    let svd = svd(&m);
    let p = k.min(l);

    let left_seeds: Vec<StateVector> = (0..p)
        .map(|c| StateVector::new(svd.left.column(c)))
        .collect::<Result<_>>()?;
    let right_seeds: Vec<StateVector> = (0..p)
        .map(|r| StateVector::new(svd.right_conj.row(r).to_vec()))
        .collect::<Result<_>>()?;

    Ok(SchmidtData {
        k,
        l,
        coefficients: svd.singular_values,
        left_basis: gram_schmidt_complete(&left_seeds, k, DEFAULT_TOL)?,
        right_basis: gram_schmidt_complete(&right_seeds, l, DEFAULT_TOL)?,
        phases: vec![Complex64::new(1.0, 0.0); p],
    })
}

/// Von Neumann entropy of either reduced state, in bits.
pub fn entanglement_entropy(s: &SchmidtData) -> Result<f64> {
    let total: f64 = s.coefficients.iter().map(|c| c * c).sum();
    if (total - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::Unnormalized(total));
    }
    let h: f64 = s
        .coefficients
        .iter()
        .map(|c| c * c)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    Ok(h.max(0.0))
}

/// `Σ_i λ_i e_i ⊗ e_i` in `C^{kl}`; `λ_i` sits at flat index `i·(l + 1)`.
pub fn schmidt_state(lambdas: &[Complex64], k: usize, l: usize) -> Result<StateVector> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidInput(format!("factor dimensions {k} x {l} must be positive")));
    }
    if lambdas.len() != k.min(l) {
        return Err(Error::DimensionMismatch(format!(
            "{} Schmidt weights supplied, {k} x {l} needs {}",
            lambdas.len(),
            k.min(l)
        )));
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); k * l];
    for (i, &lambda) in lambdas.iter().enumerate() {
        amplitudes[i * (l + 1)] = lambda;
    }
    StateVector::new(amplitudes)
}
