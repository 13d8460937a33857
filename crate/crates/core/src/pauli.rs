//! Pauli-string expansion of multi-qubit operators, and the two-qubit example
//! that tailors a maximally entangled structure around `|0⟩`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron_all, ComplexMatrix};

/// Pauli strings (first character acts on the most significant qubit) to coefficients.
pub type PauliMap = BTreeMap<String, Complex64>;

/// Coefficients below this modulus are dropped from a decomposition.
pub const PAULI_CUTOFF: f64 = 1e-12;

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

pub fn pauli_matrix(letter: char) -> Option<ComplexMatrix> {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let data = match letter {
        'I' => vec![l, o, o, l],
        'X' => vec![o, l, l, o],
        'Y' => vec![o, -i, i, o],
        'Z' => vec![l, o, o, -l],
        _ => return None,
    };
    Some(ComplexMatrix::new(2, 2, data).expect("finite"))
}

/// Dense matrix of a Pauli string such as `"ZX"`.
pub fn pauli_string_matrix(label: &str) -> Result<ComplexMatrix> {
    let factors = label
        .chars()
        .map(|ch| {
            pauli_matrix(ch)
                .ok_or_else(|| Error::InvalidInput(format!("'{ch}' is not a Pauli letter")))
        })
        .collect::<Result<Vec<_>>>()?;
    if factors.is_empty() {
        return Err(Error::InvalidInput("empty Pauli string".into()));
    }
    Ok(kron_all(&factors))
}

/// Row action of one Pauli letter on bit `b`: (column bit, phase).
fn letter_action(letter: usize, bit: usize) -> (usize, Complex64) {
    match letter {
        0 => (bit, Complex64::new(1.0, 0.0)),
        1 => (bit ^ 1, Complex64::new(1.0, 0.0)),
        2 => (bit ^ 1, if bit == 0 { Complex64::new(0.0, -1.0) } else { Complex64::new(0.0, 1.0) }),
        3 => (bit, Complex64::new(if bit == 0 { 1.0 } else { -1.0 }, 0.0)),
        _ => unreachable!(),
    }
}

/// `c_P = Tr(P† op) / 2^n` for every Pauli string `P` of length `n`.
pub fn pauli_decompose(op: &ComplexMatrix, n: usize) -> Result<PauliMap> {
    let dim = 1usize
        .checked_shl(n as u32)
        .filter(|_| n > 0 && n < 16)
        .ok_or_else(|| Error::InvalidInput(format!("unsupported qubit count {n}")))?;
    if op.shape() != (dim, dim) {
        return Err(Error::DimensionMismatch(format!(
            "a {n}-qubit decomposition needs a {dim}x{dim} operator, got {}x{}",
            op.rows(),
            op.cols()
        )));
    }

    let mut out = PauliMap::new();
    let mut letters = vec![0usize; n];
    for code in 0..(1usize << (2 * n)) {
        for (q, slot) in letters.iter_mut().enumerate() {
            *slot = (code >> (2 * (n - 1 - q))) & 3;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for row in 0..dim {
            let mut col = 0;
            let mut phase = Complex64::new(1.0, 0.0);
            for (q, &letter) in letters.iter().enumerate() {
                let bit = (row >> (n - 1 - q)) & 1;
                let (cbit, ph) = letter_action(letter, bit);
                col |= cbit << (n - 1 - q);
                phase *= ph;
            }
            acc += phase.conj() * op[(row, col)];
        }
        let coef = acc / dim as f64;
        if coef.norm() >= PAULI_CUTOFF {
            let label: String = letters.iter().map(|&l| LETTERS[l]).collect();
            out.insert(label, coef);
        }
    }
    Ok(out)
}

/// `Σ c_P P`.
pub fn pauli_reconstruct(map: &PauliMap, n: usize) -> Result<ComplexMatrix> {
    let dim = 1usize << n;
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (label, &coef) in map {
        if label.len() != n {
            return Err(Error::DimensionMismatch(format!("Pauli string {label} is not {n} long")));
        }
        acc = &acc + &pauli_string_matrix(label)?.scale(coef);
    }
    Ok(acc)
}

/// Same map with every Pauli string reversed, i.e. the two qubits swapped.
pub fn reverse_strings(map: &PauliMap) -> PauliMap {
    map.iter().map(|(k, v)| (k.chars().rev().collect(), *v)).collect()
}

/// The two-qubit example: the real rotation in the `{|0⟩, |3⟩}` plane and the
/// Pauli expansions of the six tailored generators it induces.
#[derive(Clone, Debug)]
pub struct ExampleD4 {
    pub lambda1: f64,
    pub lambda2: f64,
    /// `[[λ1,0,0,λ2],[0,1,0,0],[0,0,1,0],[−λ2,0,0,λ1]]`. It sends the model state
    /// `λ1|0⟩ + λ2|3⟩` to `|0⟩`, and `U|0⟩ = λ1|0⟩ − λ2|3⟩`.
    pub u: ComplexMatrix,
    /// Expansions of `U (σ_j ⊗ 1) U†` for `j = x, y, z`.
    pub a_side: [PauliMap; 3],
    /// Expansions of `U (1 ⊗ σ_j) U†` for `j = x, y, z`.
    pub b_side: [PauliMap; 3],
}

pub fn example_d4(lambda1: f64, lambda2: f64) -> Result<ExampleD4> {
    if !lambda1.is_finite() || !lambda2.is_finite() {
        return Err(Error::NonFinite("lambda".into()));
    }
    let norm = lambda1 * lambda1 + lambda2 * lambda2;
    if (norm - 1.0).abs() >= 1e-12 {
        return Err(Error::Unnormalized(norm));
    }
    let u = ComplexMatrix::from_real_rows(&[
        &[lambda1, 0.0, 0.0, lambda2],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[-lambda2, 0.0, 0.0, lambda1],
    ]);
    let u_dag = u.adjoint();
    let id = ComplexMatrix::identity(2);
    let side = |left: bool| -> Result<[PauliMap; 3]> {
        let mut maps = ['X', 'Y', 'Z'].map(|_| PauliMap::new());
        for (slot, letter) in ['X', 'Y', 'Z'].into_iter().enumerate() {
            let sigma = pauli_matrix(letter).expect("valid letter");
            let local = if left { kron_all([&sigma, &id]) } else { kron_all([&id, &sigma]) };
            maps[slot] = pauli_decompose(&(&(&u * &local) * &u_dag), 2)?;
        }
        Ok(maps)
    };
    Ok(ExampleD4 { lambda1, lambda2, a_side: side(true)?, b_side: side(false)?, u })
}
