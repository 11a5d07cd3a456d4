use alloc::vec::Vec;

use super::eig::hermitian_eigenvalues;
use super::matrix::{projector, tensor, ComplexMatrix, C64};
use super::{entropy_term, STATE_TOLERANCE};
use crate::{Error, Result};

/// A validated density operator on a product of subsystems.
///
/// Invariants (checked by [`DensityMatrix::new`] at 1e-10): Hermitian, unit
/// trace, positive semidefinite, and `dims` multiplies out to the matrix size.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_dims(&matrix, &dims)?;
        let deviation = matrix.hermitian_deviation();
        if deviation > STATE_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > STATE_TOLERANCE {
            return Err(Error::TraceNotUnit { trace: trace.re });
        }
        let min_eigenvalue = hermitian_eigenvalues(&matrix)?.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -STATE_TOLERANCE {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix, dims })
    }

    /// Skips the invariant checks; for outputs of operations that preserve them.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        Self { matrix, dims }
    }

    /// `|ψ⟩⟨ψ|` for a normalized vector.
    pub fn from_pure(psi: &[C64], dims: Vec<usize>) -> Result<Self> {
        let norm = libm::sqrt(psi.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if (norm - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        let m = projector(psi);
        check_dims(&m, &dims)?;
        Ok(Self { matrix: m, dims })
    }

    /// `I/d` on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let d: usize = dims.iter().product();
        Self { matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64), dims }
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    #[inline]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `ρ ⊗ σ`, subsystems concatenated.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::new_unchecked(tensor(&self.matrix, &other.matrix), dims)
    }

    /// `U ρ U†` for a unitary `U` of matching size.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || u.cols() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.rows() });
        }
        Ok(Self::new_unchecked(self.matrix.conjugate_by(u), self.dims.clone()))
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation_pure(&self, psi: &[C64]) -> f64 {
        let rho_psi = self.matrix.apply(psi);
        psi.iter().zip(&rho_psi).map(|(a, b)| a.conj() * b).sum::<C64>().re
    }

    /// Reduced state on the subsystems in `keep` (kept in their original order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        if let Some(&index) = keep.iter().find(|&&k| k >= n) {
            return Err(Error::SubsystemOutOfRange { index, count: n });
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let traced: Vec<usize> = (0..n).filter(|k| !kept.contains(k)).collect();

        let strides = strides(&self.dims);
        let kept_dims: Vec<usize> = kept.iter().map(|&k| self.dims[k]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&k| self.dims[k]).collect();
        let kept_offsets = offsets(&kept, &kept_dims, &strides);
        let traced_offsets = offsets(&traced, &traced_dims, &strides);

        let dk = kept_offsets.len();
        let mut out = ComplexMatrix::zeros(dk, dk);
        for (i, &ri) in kept_offsets.iter().enumerate() {
            for (j, &cj) in kept_offsets.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &t in &traced_offsets {
                    acc += self.matrix[(ri + t, cj + t)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self::new_unchecked(out, kept_dims))
    }

    /// Partial transpose on the listed subsystems.
    pub fn partial_transpose(&self, subsystems: &[usize]) -> Result<ComplexMatrix> {
        let n = self.dims.len();
        if let Some(&index) = subsystems.iter().find(|&&k| k >= n) {
            return Err(Error::SubsystemOutOfRange { index, count: n });
        }
        let d = self.dim();
        let strides = strides(&self.dims);
        let mut out = ComplexMatrix::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                let (mut r2, mut c2) = (r, c);
                for &k in subsystems {
                    let rk = (r / strides[k]) % self.dims[k];
                    let ck = (c / strides[k]) % self.dims[k];
                    r2 = r2 - rk * strides[k] + ck * strides[k];
                    c2 = c2 - ck * strides[k] + rk * strides[k];
                }
                out[(r2, c2)] = self.matrix[(r, c)];
            }
        }
        Ok(out)
    }
}

fn check_dims(matrix: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument("subsystem dimensions must be positive"));
    }
    let product: usize = dims.iter().product();
    if product != matrix.rows() {
        return Err(Error::DimensionMismatch { expected: matrix.rows(), found: product });
    }
    Ok(())
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = alloc::vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Flat-index offsets of every multi-index over `subsystems`, in row-major order.
fn offsets(subsystems: &[usize], sub_dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0usize];
    for (&k, &d) in subsystems.iter().zip(sub_dims) {
        out = out.iter().flat_map(|&base| (0..d).map(move |x| base + x * strides[k])).collect();
    }
    out
}

/// Von Neumann entropy in bits. Eigenvalues in `[-1e-10, 0)` are treated as
/// zero; anything more negative is rejected.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of_matrix(rho.matrix())
}

pub(crate) fn entropy_of_matrix(m: &ComplexMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(m)?;
    entropy_of_spectrum(&values)
}

pub(crate) fn entropy_of_spectrum(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &x in values {
        if x < -STATE_TOLERANCE {
            return Err(Error::NotPositive { min_eigenvalue: x });
        }
        s += entropy_term(x);
    }
    Ok(s)
}

impl From<DensityMatrix> for ComplexMatrix {
    fn from(rho: DensityMatrix) -> Self {
        rho.matrix
    }
}
