//! Tailored observables.
//!
//! Given a pure state `ψ ∈ C^d` and a factorization `d = k_1 ⋯ k_N`, build a
//! unitary `U: C^{k_1} ⊗ ⋯ ⊗ C^{k_N} → C^d` with `ψ = U φ` for a chosen model
//! state `φ`. The algebras generated by `U (1 ⊗ ⋯ ⊗ S_j ⊗ ⋯ ⊗ 1) U†` then induce a
//! tensor product structure in which `ψ` is entangled exactly like `φ`.
//!
//! `U` is fixed by sending the Gram–Schmidt completion of `φ` onto the
//! Gram–Schmidt completion of `ψ`, both seeded with the standard basis in order.

use num_complex::Complex64;

use crate::algebra::{generated_algebra, transport, verify_zanardi, AlgebraBasis, ZanardiReport};
use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_complete, kron_all, ComplexMatrix, StateVector};
use crate::schmidt::{schmidt_decompose, schmidt_state};
use crate::spin::spin_matrices;

/// Factor dimensions `(k_1, …, k_N)`, `N ≥ 2`, each `k_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    dims: Vec<usize>,
}

impl Factorization {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "a factorization needs at least two factors, got {}",
                dims.len()
            )));
        }
        if let Some(bad) = dims.iter().position(|&k| k < 2) {
            return Err(Error::InvalidInput(format!(
                "factor {bad} has dimension {}, must be at least 2",
                dims[bad]
            )));
        }
        dims.iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or_else(|| Error::InvalidInput("factor dimensions overflow".into()))?;
        Ok(Self { dims })
    }

    pub fn bipartite(k: usize, l: usize) -> Result<Self> {
        Self::new(vec![k, l])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat index of a multi-index, first factor most significant.
    pub fn flat_index(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.dims.len(), "multi-index length mismatch");
        multi.iter().zip(&self.dims).fold(0, |acc, (&i, &k)| {
            assert!(i < k, "index {i} out of range for factor of dimension {k}");
            acc * k + i
        })
    }

    /// `1 ⊗ ⋯ ⊗ op ⊗ ⋯ ⊗ 1` with `op` on factor `slot`.
    pub fn embed(&self, slot: usize, op: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(op.shape(), (self.dims[slot], self.dims[slot]), "local operator shape");
        let factors: Vec<ComplexMatrix> = self
            .dims
            .iter()
            .enumerate()
            .map(|(i, &k)| if i == slot { op.clone() } else { ComplexMatrix::identity(k) })
            .collect();
        kron_all(&factors)
    }

    /// `[S_x, S_y, S_z]` of the spin representation on factor `slot`, embedded in `C^d`.
    pub fn local_spin_generators(&self, slot: usize) -> [ComplexMatrix; 3] {
        let rep = spin_matrices(self.dims[slot]).expect("factor dimensions are at least 2");
        rep.generators().map(|s| self.embed(slot, &s))
    }
}

#[derive(Clone, Debug)]
pub struct TailoredTPS {
    /// Maps the model space onto the physical space: `ψ = U φ`.
    pub u: ComplexMatrix,
    pub factorization: Factorization,
    /// Per factor, `U (1 ⊗ ⋯ ⊗ S_j ⊗ ⋯ ⊗ 1) U†` for `j = x, y, z`.
    pub generator_sets: Vec<[ComplexMatrix; 3]>,
    /// The algebras generated by each set.
    pub algebras: Vec<AlgebraBasis>,
    pub model_state: StateVector,
    pub report: ZanardiReport,
}

impl TailoredTPS {
    /// `U† ψ`, the state's coordinates in the induced product basis.
    pub fn pull_back(&self, psi: &StateVector) -> Result<StateVector> {
        self.u.adjoint().apply(psi)
    }
}

fn check_norms(psi: &StateVector, phi: &StateVector, tol: f64) -> Result<()> {
    let (state, target) = (psi.norm_sqr(), phi.norm_sqr());
    if (state - target).abs() >= tol * state.max(1.0) {
        return Err(Error::NormMismatch { state, target });
    }
    Ok(())
}

/// Shared construction: `U` with `U φ = ψ`, transported generators and the Zanardi check.
fn build(
    psi: &StateVector,
    phi: StateVector,
    factorization: Factorization,
    tol: f64,
) -> Result<TailoredTPS> {
    let d = factorization.total();
    if psi.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {}, factorization {:?} has {d}",
            psi.dim(),
            factorization.dims()
        )));
    }
    check_norms(psi, &phi, tol)?;

    let physical = gram_schmidt_complete(&[psi.clone()], d, tol)?;
    let model = gram_schmidt_complete(&[phi.clone()], d, tol)?;
    // U = Σ_i |Ψ_i⟩⟨φ_i|
    let u = &ComplexMatrix::from_columns(&physical)? * &ComplexMatrix::from_columns(&model)?.adjoint();

    let defect = u.unitarity_defect();
    if defect >= tol {
        return Err(Error::VerificationFailed(format!("U is not unitary (defect {defect:e})")));
    }
    let image_err = u.apply(&phi)?.max_abs_diff(psi);
    if image_err >= tol * psi.norm().max(1.0) {
        return Err(Error::VerificationFailed(format!("U φ differs from ψ by {image_err:e}")));
    }

    let generator_sets: Vec<[ComplexMatrix; 3]> = (0..factorization.len())
        .map(|slot| {
            let local = factorization.local_spin_generators(slot);
            let moved = transport(&u, &local);
            [moved[0].clone(), moved[1].clone(), moved[2].clone()]
        })
        .collect();
    let algebras = generator_sets
        .iter()
        .map(|set| generated_algebra(set, d, tol))
        .collect::<Result<Vec<_>>>()?;
    let report = verify_zanardi(&algebras, d, tol)?;
    if !report.induces_tps() {
        return Err(Error::VerificationFailed(format!(
            "tailored algebras do not induce a tensor product structure: {report:?}"
        )));
    }

    Ok(TailoredTPS { u, factorization, generator_sets, algebras, model_state: phi, report })
}

/// Tailors a `k ⊗ l` structure in which `psi` has Schmidt weights `lambdas`.
///
/// `Σ|λ_i|²` must equal the squared norm of `psi` within `tol`.
pub fn tailor_bipartite(
    psi: &StateVector,
    k: usize,
    l: usize,
    lambdas: &[Complex64],
    tol: f64,
) -> Result<TailoredTPS> {
    let factorization = Factorization::bipartite(k, l)?;
    if psi.dim() != k * l {
        return Err(Error::DimensionMismatch(format!(
            "state has dimension {}, {k} x {l} = {}",
            psi.dim(),
            k * l
        )));
    }
    let phi = schmidt_state(lambdas, k, l)?;
    let tps = build(psi, phi, factorization, tol)?;

    let mut expected: Vec<f64> = lambdas.iter().map(|z| z.norm()).collect();
    expected.sort_by(|a, b| b.total_cmp(a));
    let got = schmidt_decompose(&tps.pull_back(psi)?, k, l)?.coefficients;
    let err = got.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if err >= tol {
        return Err(Error::VerificationFailed(format!(
            "Schmidt coefficients {got:?} differ from {expected:?} by {err:e}"
        )));
    }
    Ok(tps)
}

/// Tailors an N-partite structure in which `psi` has product-basis coefficients
/// `target_coeffs`, given flat in mixed-radix order with the first factor most significant.
pub fn tailor_multipartite(
    psi: &StateVector,
    factorization: &Factorization,
    target_coeffs: &[Complex64],
    tol: f64,
) -> Result<TailoredTPS> {
    let d = factorization.total();
    if target_coeffs.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "{} target coefficients for a factorization of dimension {d}",
            target_coeffs.len()
        )));
    }
    let phi = StateVector::new(target_coeffs.to_vec())?;
    let tps = build(psi, phi, factorization.clone(), tol)?;

    let err = tps.pull_back(psi)?.max_abs_diff(&tps.model_state);
    if err >= tol {
        return Err(Error::VerificationFailed(format!(
            "U† ψ differs from the target coefficients by {err:e}"
        )));
    }
    Ok(tps)
}
