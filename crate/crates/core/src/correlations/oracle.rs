//! Exhaustive grid evaluation of the classical correlation for qubit B.
//!
//! This deliberately takes the long way round: explicit projectors
//! `(I⊗Π) ρ (I⊗Π)`, a generic partial trace and a full entropy evaluation,
//! so that it shares nothing with the optimizer's contraction path beyond the
//! eigensolver.

use core::f64::consts::PI;

use super::measurement::{split_dims, MeasurementBasis, NULL_OUTCOME_PROBABILITY};
use crate::linalg::{tensor, von_neumann_entropy, ComplexMatrix, DensityMatrix};
use crate::{Error, Result};

/// `θ_i = π i / theta` (`i < theta`), `φ_j = 2π j / phi` (`j < phi`).
/// Doubling both counts gives a superset of points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridResolution {
    pub theta: usize,
    pub phi: usize,
}

/// Grid maximum of `S(ρ_A) − S(A|{Π})`; a lower bound on the classical
/// correlation that converges as the grid is refined.
pub fn brute_force_oracle(rho: &DensityMatrix, grid: GridResolution) -> Result<f64> {
    let (da, db) = split_dims(rho)?;
    if db != 2 {
        return Err(Error::UnsupportedDimension(db));
    }
    if grid.theta == 0 || grid.phi == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive"));
    }
    let sa = von_neumann_entropy(&rho.partial_trace(&[0])?)?;
    let id_a = ComplexMatrix::identity(da);
    let mut best = f64::NEG_INFINITY;
    for i in 0..grid.theta {
        let theta = PI * i as f64 / grid.theta as f64;
        for j in 0..grid.phi {
            let phi = 2.0 * PI * j as f64 / grid.phi as f64;
            let mut conditional = 0.0;
            for pi_k in MeasurementBasis::qubit(theta, phi).projectors() {
                let lifted = tensor(&id_a, &pi_k);
                let branch = lifted.matmul(rho.matrix()).matmul(&lifted);
                let p = branch.trace().re;
                if p < NULL_OUTCOME_PROBABILITY {
                    continue;
                }
                let normalized = DensityMatrix::new_unchecked(branch.scale_real(1.0 / p), rho.dims().to_vec());
                conditional += p * von_neumann_entropy(&normalized.partial_trace(&[0])?)?;
            }
            best = best.max(sa - conditional);
        }
    }
    Ok(best)
}
