//! Observable algebras that induce tensor product structures on `C^d`.
//!
//! Entanglement is only defined relative to a tensor product structure, and such a
//! structure is fixed by a choice of commuting observable subalgebras. This crate
//! constructs, for any pure state and any factorization of `d`, subalgebras in
//! which the state has a prescribed Schmidt spectrum (or any prescribed
//! multipartite coefficient tensor), and checks numerically that the
//! subalgebras are independent and complete.
//!
//! Index conventions: standard basis vectors are 0-based, and tensor products
//! put the first factor on the most significant index (`|j⟩|k⟩ = |j·l + k⟩`).

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod schmidt;
pub mod spin;
pub mod tailor;

pub use algebra::{
    commutant, double_commutant_check, generated_algebra, verify_zanardi, AlgebraBasis, ZanardiReport,
};
pub use error::{Error, Result};
pub use linalg::{
    frobenius_inner, gram_schmidt_complete, kron, matmul, span_basis, svd, ComplexMatrix, StateVector,
    Svd, DEFAULT_TOL,
};
pub use num_complex::Complex64;
pub use pauli::{example_d4, pauli_decompose, ExampleD4, PauliMap};
pub use schmidt::{entanglement_entropy, schmidt_decompose, schmidt_state, SchmidtData};
pub use spin::{spin_matrices, vandermonde_det, SpinRep};
pub use tailor::{tailor_bipartite, tailor_multipartite, Factorization, TailoredTPS};
