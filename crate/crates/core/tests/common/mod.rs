//! Random inputs and independent oracles shared by the integration tests.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tps_core::{ComplexMatrix, Complex64, StateVector};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut StdRng) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_unit_state(rng: &mut StdRng, d: usize) -> StateVector {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
        if let Ok(s) = StateVector::new(v) {
            if s.norm() > 1e-3 {
                return s.normalized();
            }
        }
    }
}

/// Random non-negative Schmidt weights with unit squared sum, with random phases.
pub fn random_lambdas(rng: &mut StdRng, p: usize) -> Vec<Complex64> {
    let mags: Vec<f64> = (0..p).map(|_| rng.random_range(0.0..1.0)).collect();
    let n = mags.iter().map(|m| m * m).sum::<f64>().sqrt();
    mags.iter()
        .map(|m| Complex64::from_polar(m / n, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect()
}

/// Element-by-element triple loop.
pub fn naive_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = vec![c(0.0, 0.0); a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            for k in 0..a.cols() {
                out[i * b.cols() + j] += a[(i, k)] * b[(k, j)];
            }
        }
    }
    ComplexMatrix::new(a.rows(), b.cols(), out).unwrap()
}

/// Determinant by Gaussian elimination with partial pivoting (real).
pub fn lu_determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for k in col..n {
                m[r][k] -= f * m[col][k];
            }
        }
    }
    det
}

/// Rank of a set of complex vectors by Gaussian elimination with complete pivoting,
/// counting pivots above `tol` times the largest initial entry.
pub fn gaussian_rank(vectors: &[Vec<Complex64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Complex64>> = vectors.to_vec();
    let rows = m.len();
    let cols = m[0].len();
    let scale = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let mut rank = 0;
    let mut used_col = vec![false; cols];
    for r in 0..rows.min(cols) {
        let mut best = (0.0, r, 0);
        for i in r..rows {
            for (j, used) in used_col.iter().enumerate() {
                if !used && m[i][j].norm() > best.0 {
                    best = (m[i][j].norm(), i, j);
                }
            }
        }
        if best.0 <= tol * scale {
            break;
        }
        let (_, pi, pj) = best;
        m.swap(r, pi);
        used_col[pj] = true;
        let pivot = m[r][pj];
        for i in r + 1..rows {
            let f = m[i][pj] / pivot;
            if f == c(0.0, 0.0) {
                continue;
            }
            for j in 0..cols {
                let sub = f * m[r][j];
                m[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Eigenvalues of a Hermitian matrix by cyclic two-sided complex Jacobi rotations, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|r| h.row(r).to_vec()).collect();
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j].norm_sqr())
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.norm() < 1e-300 {
                    continue;
                }
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                // Phase-rotate so the off-diagonal entry is real, then apply a real Jacobi rotation.
                let phase = apq / apq.norm();
                let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                let (s, cs) = theta.sin_cos();
                // Columns p, q transform by J = [[cs, s·phase], [−s·conj(phase)... ]]
                let jpp = c(cs, 0.0);
                let jpq = phase * s;
                let jqp = -(phase.conj()) * s;
                let jqq = c(cs, 0.0);
                for row in a.iter_mut() {
                    let (x, y) = (row[p], row[q]);
                    row[p] = x * jpp + y * jqp;
                    row[q] = x * jpq + y * jqq;
                }
                for k in 0..n {
                    let (x, y) = (a[p][k], a[q][k]);
                    a[p][k] = jpp.conj() * x + jqp.conj() * y;
                    a[q][k] = jpq.conj() * x + jqq.conj() * y;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn vec_of(m: &ComplexMatrix) -> Vec<Complex64> {
    m.data().to_vec()
}

/// Every word of length 0..=max_len in the generators (length 0 is the identity).
pub fn words(generators: &[ComplexMatrix], max_len: usize) -> Vec<ComplexMatrix> {
    let d = generators[0].rows();
    let mut all = vec![ComplexMatrix::identity(d)];
    let mut layer = vec![ComplexMatrix::identity(d)];
    for _ in 0..max_len {
        let next: Vec<ComplexMatrix> = layer
            .iter()
            .flat_map(|w| generators.iter().map(move |g| naive_matmul(w, g)))
            .collect();
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Two random generators drawn from one of several structured families, so the
/// generated algebras have varied dimensions.
pub fn random_generator_pair(rng: &mut StdRng, d: usize, family: usize) -> Vec<ComplexMatrix> {
    let split = if d > 1 { rng.random_range(1..d) } else { 1 };
    let pick = |rng: &mut StdRng| -> ComplexMatrix {
        match family % 5 {
            // dense: full algebra
            0 => random_matrix(rng, d, d),
            // diagonal
            1 => ComplexMatrix::from_fn(d, d, |r, col| if r == col { random_complex(rng) } else { c(0.0, 0.0) }),
            // block diagonal with blocks [0, split) and [split, d)
            2 => ComplexMatrix::from_fn(d, d, |r, col| {
                if (r < split) == (col < split) { random_complex(rng) } else { c(0.0, 0.0) }
            }),
            // upper triangular
            3 => ComplexMatrix::from_fn(d, d, |r, col| if r <= col { random_complex(rng) } else { c(0.0, 0.0) }),
            // strictly upper triangular (nilpotent)
            _ => ComplexMatrix::from_fn(d, d, |r, col| if r < col { random_complex(rng) } else { c(0.0, 0.0) }),
        }
    };
    vec![pick(rng), pick(rng)]
}

/// Dimension of the span of all generator words of length ≤ `max_len`.
pub fn word_span_rank(generators: &[ComplexMatrix], max_len: usize) -> usize {
    let ws: Vec<Vec<Complex64>> = words(generators, max_len).iter().map(vec_of).collect();
    gaussian_rank(&ws, 1e-10)
}
