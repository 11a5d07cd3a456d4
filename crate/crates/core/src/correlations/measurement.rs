use alloc::vec::Vec;

use crate::linalg::{
    entropy_term, hermitian_eigenvalues, projector, ComplexMatrix, DensityMatrix, C64, STATE_TOLERANCE,
};
use crate::{Error, Result};

/// Outcomes with probability below this are dropped from the conditional entropy.
pub const NULL_OUTCOME_PROBABILITY: f64 = 1e-14;

/// A rank-one projective measurement `{|v_k⟩⟨v_k|}` on subsystem B.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    vectors: Vec<Vec<C64>>,
    angles: Option<(f64, f64)>,
}

impl MeasurementBasis {
    /// Qubit basis along the Bloch direction `(θ, φ)`:
    /// `|+n⟩ = (cos θ/2, e^{iφ} sin θ/2)`, `|−n⟩ = (sin θ/2, −e^{iφ} cos θ/2)`.
    pub fn qubit(theta: f64, phi: f64) -> Self {
        let (c, s) = (libm::cos(0.5 * theta), libm::sin(0.5 * theta));
        let e = C64::from_polar(1.0, phi);
        let plus = alloc::vec![C64::new(c, 0.0), e * s];
        let minus = alloc::vec![C64::new(s, 0.0), -e * c];
        Self { vectors: alloc::vec![plus, minus], angles: Some((theta, phi)) }
    }

    /// `{|i⟩⟨i|}`.
    pub fn computational(d: usize) -> Self {
        let vectors = (0..d).map(|i| (0..d).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect();
        Self { vectors, angles: (d == 2).then_some((0.0, 0.0)) }
    }

    /// Basis from the columns of a unitary; rejects non-unitary input.
    pub fn from_unitary(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::NotSquare { rows: u.rows(), cols: u.cols() });
        }
        let gram = u.adjoint().matmul(u);
        let deviation = gram.max_abs_diff(&ComplexMatrix::identity(u.rows()));
        if deviation > STATE_TOLERANCE {
            return Err(Error::InvalidArgument("measurement basis is not orthonormal"));
        }
        Ok(Self::from_unitary_unchecked(u))
    }

    pub(crate) fn from_unitary_unchecked(u: &ComplexMatrix) -> Self {
        Self { vectors: (0..u.cols()).map(|j| u.column(j)).collect(), angles: None }
    }

    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    /// Bloch angles `(θ, φ)` when the basis was built from them.
    pub fn angles(&self) -> Option<(f64, f64)> {
        self.angles
    }

    pub fn projectors(&self) -> Vec<ComplexMatrix> {
        self.vectors.iter().map(|v| projector(v)).collect()
    }
}

pub(crate) fn split_dims(rho: &DensityMatrix) -> Result<(usize, usize)> {
    match rho.dims() {
        &[da, db] => Ok((da, db)),
        _ => Err(Error::NotBipartite),
    }
}

/// `⟨v|_B ρ |v⟩_B`, the unnormalized post-measurement state of A.
pub(crate) fn conditional_block(rho: &ComplexMatrix, da: usize, db: usize, v: &[C64]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(da, da);
    for a in 0..da {
        for a2 in 0..da {
            let mut acc = C64::new(0.0, 0.0);
            for b in 0..db {
                let vb = v[b].conj();
                if vb.re == 0.0 && vb.im == 0.0 {
                    continue;
                }
                let mut inner = C64::new(0.0, 0.0);
                for b2 in 0..db {
                    inner += rho[(a * db + b, a2 * db + b2)] * v[b2];
                }
                acc += vb * inner;
            }
            out[(a, a2)] = acc;
        }
    }
    out
}

/// `Σ_k p_k S(ρ_k)` for vectors of an orthonormal basis on B, skipping
/// outcomes with `p_k < 1e-14`.
pub(crate) fn conditional_entropy_raw(rho: &ComplexMatrix, da: usize, db: usize, vectors: &[Vec<C64>]) -> Result<f64> {
    let mut total = 0.0;
    for v in vectors {
        let block = conditional_block(rho, da, db, v);
        let p = block.trace().re;
        if p < NULL_OUTCOME_PROBABILITY {
            continue;
        }
        // S(σ/p) weighted by p equals -Σ μ log(μ/p) over eigenvalues μ of σ.
        let mut s = 0.0;
        for mu in hermitian_eigenvalues(&block)? {
            let x = mu / p;
            if x < -STATE_TOLERANCE {
                return Err(Error::NotPositive { min_eigenvalue: x });
            }
            s += entropy_term(x);
        }
        total += p * s;
    }
    Ok(total)
}

/// Entropy of A conditioned on the outcome of `basis` measured on B.
pub fn conditional_entropy(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<f64> {
    let (da, db) = split_dims(rho)?;
    if basis.dim() != db {
        return Err(Error::DimensionMismatch { expected: db, found: basis.dim() });
    }
    conditional_entropy_raw(rho.matrix(), da, db, basis.vectors())
}
