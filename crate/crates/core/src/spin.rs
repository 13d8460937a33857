//! Spin-s irreducible representation of su(2) on `C^d`, `d = 2s + 1`, with ħ = 1.
//!
//! Rows are ordered by descending magnetic quantum number: row `i` carries
//! `m = s − i`, so `S_z = diag(s, s − 1, …, −s)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Debug)]
pub struct SpinRep {
    dim: usize,
    pub s_z: ComplexMatrix,
    pub s_plus: ComplexMatrix,
    pub s_minus: ComplexMatrix,
    pub s_x: ComplexMatrix,
    pub s_y: ComplexMatrix,
}

impl SpinRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `2s`, kept integral.
    pub fn spin_twice(&self) -> usize {
        self.dim - 1
    }

    pub fn spin(&self) -> f64 {
        self.spin_twice() as f64 / 2.0
    }

    /// `s(s + 1)`, the Casimir eigenvalue.
    pub fn casimir_value(&self) -> f64 {
        let s = self.spin();
        s * (s + 1.0)
    }

    /// `S_x² + S_y² + S_z²`.
    pub fn casimir(&self) -> ComplexMatrix {
        let sx2 = &self.s_x * &self.s_x;
        let sy2 = &self.s_y * &self.s_y;
        let sz2 = &self.s_z * &self.s_z;
        &(&sx2 + &sy2) + &sz2
    }

    /// The identity, recovered from the generators through the Casimir.
    pub fn identity_from_casimir(&self) -> ComplexMatrix {
        self.casimir().scale(Complex64::new(1.0 / self.casimir_value(), 0.0))
    }

    /// `[S_x, S_y, S_z]`.
    pub fn generators(&self) -> [ComplexMatrix; 3] {
        [self.s_x.clone(), self.s_y.clone(), self.s_z.clone()]
    }
}

pub fn spin_matrices(d: usize) -> Result<SpinRep> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("spin representation needs d >= 2, got {d}")));
    }
    let n = (d - 1) as f64; // 2s
    // 2m for row i
    let twice_m = |i: usize| n - 2.0 * i as f64;

    let s_z = ComplexMatrix::diag(
        &(0..d).map(|i| Complex64::new(twice_m(i) / 2.0, 0.0)).collect::<Vec<_>>(),
    );
    // ⟨m+1|S_+|m⟩ = √(s(s+1) − m(m+1)), written with doubled quantum numbers.
    let s_plus = ComplexMatrix::from_fn(d, d, |r, c| {
        if c == r + 1 {
            let m2 = twice_m(c);
            Complex64::new(((n * (n + 2.0) - m2 * (m2 + 2.0)) / 4.0).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let s_minus = s_plus.adjoint();
    let s_x = (&s_plus + &s_minus).scale(Complex64::new(0.5, 0.0));
    // (S_+ − S_−) / 2i
    let s_y = (&s_plus - &s_minus).scale(Complex64::new(0.0, -0.5));

    Ok(SpinRep { dim: d, s_z, s_plus, s_minus, s_x, s_y })
}

/// `∏_{i>j} (x_i − x_j)`, the determinant of the matrix `a_ij = x_i^j` (0-based powers).
pub fn vandermonde_det(xs: &[f64]) -> f64 {
    let mut det = 1.0;
    for i in 0..xs.len() {
        for j in 0..i {
            det *= xs[i] - xs[j];
        }
    }
    det
}
