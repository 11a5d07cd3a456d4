//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use alloc::vec::Vec;

use super::matrix::{ComplexMatrix, C64};
use crate::{Error, Result};

/// Input must be Hermitian to this tolerance.
pub const HERMITIAN_INPUT_TOLERANCE: f64 = 1e-9;

/// Sweeps stop once the off-diagonal Frobenius norm drops below this
/// (relative to `max(1, ‖M‖_F)`).
const OFF_DIAGONAL_TARGET: f64 = 1e-13;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order, with eigenvectors as matching columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let lambda = ComplexMatrix::diagonal(&self.eigenvalues);
        v.matmul(&lambda).matmul(&v.adjoint())
    }

    /// Applies `f` to the eigenvalues: `V f(Λ) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        let v = &self.eigenvectors;
        v.matmul(&ComplexMatrix::diagonal(&mapped)).matmul(&v.adjoint())
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_INPUT_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Full spectral decomposition of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    check_hermitian(m)?;
    let (values, vectors) = jacobi(m, true);
    let vectors = vectors.expect("vectors requested");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let n = values.len();
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Eigenvalues only, descending. 1×1 and 2×2 inputs use closed forms.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let mut values = match m.rows() {
        0 => Vec::new(),
        1 => alloc::vec![m[(0, 0)].re],
        2 => {
            let a = m[(0, 0)].re;
            let d = m[(1, 1)].re;
            let b = m[(0, 1)];
            let mean = 0.5 * (a + d);
            let radius = libm::sqrt(0.25 * (a - d) * (a - d) + b.norm_sqr());
            alloc::vec![mean + radius, mean - radius]
        }
        _ => jacobi(m, false).0,
    };
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    libm::sqrt(s)
}

/// Unitary Jacobi rotations `A ← W† A W` on index pairs (p, q), where
/// `W = diag(1, e^{-iα}) R(θ)` first removes the phase of `a_pq` and then
/// applies the real symmetric Jacobi rotation.
fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = m.rows();
    // Hermitian part, so tiny input asymmetry cannot leak into the result.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let target = OFF_DIAGONAL_TARGET * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r; // e^{iα}
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + libm::sqrt(theta * theta + 1.0))
                } else {
                    -1.0 / (-theta + libm::sqrt(theta * theta + 1.0))
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                let e = phase.conj(); // e^{-iα}

                // Columns: col_p' = c col_p - s e col_q, col_q' = s col_p + c e col_q.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * e * s;
                    a[(k, q)] = akp * s + akq * e * c;
                }
                // Rows: row_p' = c row_p - s e* row_q, row_q' = s row_p + c e* row_q.
                let ec = phase;
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * ec * s;
                    a[(q, k)] = apk * s + aqk * ec * c;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * e * s;
                        v[(k, q)] = vkp * s + vkq * e * c;
                    }
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}
