//! Bell, Werner and Bell-diagonal two-qubit states.
//!
//! Bell states are `β_ab = (|0,b⟩ + (-1)^a |1,1⊕b⟩)/√2` in the computational
//! order `|00⟩, |01⟩, |10⟩, |11⟩`. A Bell-diagonal state is written either by
//! its weights `λ_ab` or by its correlation coordinates
//! `ρ = ¼(I + Σ_j c_j σ_j⊗σ_j)`; the two are related by
//! `λ_ab = ¼(1 + (-1)^a c1 − (-1)^(a+b) c2 + (-1)^b c3)`.

use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{projector, tensor, ComplexMatrix, DensityMatrix, C64, STATE_TOLERANCE};
use crate::{Error, Result};

/// Tolerance for the Bell-diagonal test in [`c_from_state`].
pub const BELL_DIAGONAL_TOLERANCE: f64 = 1e-9;

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2")
}

pub fn pauli_y() -> ComplexMatrix {
    let z = C64::new(0.0, 0.0);
    ComplexMatrix::new(2, 2, vec![z, C64::new(0.0, -1.0), C64::new(0.0, 1.0), z]).expect("2x2")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("2x2")
}

/// `[σx, σy, σz]`.
pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// The Bell vector `β_ab`.
pub fn bell_state(a: u8, b: u8) -> [C64; 4] {
    assert!(a < 2 && b < 2, "Bell indices are bits");
    let mut v = [C64::new(0.0, 0.0); 4];
    let b = b as usize;
    v[b] = C64::new(FRAC_1_SQRT_2, 0.0);
    let sign = if a == 0 { 1.0 } else { -1.0 };
    v[2 + (1 - b)] = C64::new(sign * FRAC_1_SQRT_2, 0.0);
    v
}

/// Index of `β_ab` in the fixed Bell ordering `β00, β01, β10, β11`.
#[inline]
pub const fn bell_index(a: u8, b: u8) -> usize {
    2 * a as usize + b as usize
}

/// Columns `β00, β01, β10, β11`.
pub fn bell_basis() -> ComplexMatrix {
    let cols = [bell_state(0, 0), bell_state(0, 1), bell_state(1, 0), bell_state(1, 1)];
    ComplexMatrix::from_fn(4, 4, |i, j| cols[j][i])
}

/// Correlation coordinates `(c1, c2, c3)` of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVector {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl CVector {
    /// Validating constructor: all four Bell weights must lie in
    /// `[-1e-10, 1 + 1e-10]`.
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = Self { c1, c2, c3 };
        let w = c.weights();
        let min_weight = w.iter().copied().fold(f64::INFINITY, f64::min);
        let max_weight = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !(min_weight >= -STATE_TOLERANCE && max_weight <= 1.0 + STATE_TOLERANCE) {
            return Err(Error::UnphysicalCVector { min_weight });
        }
        Ok(c)
    }

    /// Werner state `werner(F)` has `c_j = (1 − 4F)/3` for every j.
    pub fn werner(f: f64) -> Self {
        let x = (1.0 - 4.0 * f) / 3.0;
        Self { c1: x, c2: x, c3: x }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// `max |c_j|`.
    pub fn max_abs(&self) -> f64 {
        self.c1.abs().max(self.c2.abs()).max(self.c3.abs())
    }

    /// Bell weights `λ_ab` in the order `β00, β01, β10, β11`.
    pub fn weights(&self) -> [f64; 4] {
        let mut w = [0.0; 4];
        for a in 0..2u8 {
            for b in 0..2u8 {
                let sa = if a == 0 { 1.0 } else { -1.0 };
                let sb = if b == 0 { 1.0 } else { -1.0 };
                w[bell_index(a, b)] = 0.25 * (1.0 + sa * self.c1 - sa * sb * self.c2 + sb * self.c3);
            }
        }
        w
    }
}

/// Bell-diagonal state by its weights `λ_ab`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalState {
    weights: [f64; 4],
}

impl BellDiagonalState {
    /// Weights in `β00, β01, β10, β11` order; each in `[0,1]`, summing to 1 (1e-10).
    pub fn new(weights: [f64; 4]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::TraceNotUnit { trace: total });
        }
        if let Some(&w) = weights.iter().find(|&&w| !(-STATE_TOLERANCE..=1.0 + STATE_TOLERANCE).contains(&w)) {
            return Err(Error::NotPositive { min_eigenvalue: w });
        }
        Ok(Self { weights })
    }

    pub fn weight(&self, a: u8, b: u8) -> f64 {
        self.weights[bell_index(a, b)]
    }

    pub fn weights(&self) -> [f64; 4] {
        self.weights
    }

    /// `c1 = λ00 + λ01 − λ10 − λ11`, `c2 = −λ00 + λ01 + λ10 − λ11`,
    /// `c3 = λ00 − λ01 + λ10 − λ11`.
    pub fn c_vector(&self) -> CVector {
        let [w00, w01, w10, w11] = self.weights;
        CVector { c1: w00 + w01 - w10 - w11, c2: -w00 + w01 + w10 - w11, c3: w00 - w01 + w10 - w11 }
    }

    pub fn from_c(c: &CVector) -> Result<Self> {
        Self::new(CVector::new(c.c1, c.c2, c.c3)?.weights())
    }

    pub fn to_density(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4, 4);
        for a in 0..2u8 {
            for b in 0..2u8 {
                let p = projector(&bell_state(a, b)).scale_real(self.weight(a, b));
                m = &m + &p;
            }
        }
        DensityMatrix::new_unchecked(m, vec![2, 2])
    }
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    Ok(())
}

/// `F |β11⟩⟨β11| + (1−F)/3 (|β01⟩⟨β01| + |β10⟩⟨β10| + |β00⟩⟨β00|)`.
pub fn werner(f: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::FidelityOutOfRange(f));
    }
    let q = (1.0 - f) / 3.0;
    Ok(BellDiagonalState { weights: [q, q, q, f] }.to_density())
}

/// `¼(I + Σ_j c_j σ_j⊗σ_j)`; errors if any Bell weight is below −1e-10.
pub fn bell_diagonal_from_c(c: &CVector) -> Result<DensityMatrix> {
    let c = CVector::new(c.c1, c.c2, c.c3)?;
    let mut m = ComplexMatrix::identity(4);
    for (cj, s) in c.as_array().iter().zip(paulis()) {
        m = &m + &tensor(&s, &s).scale_real(*cj);
    }
    Ok(DensityMatrix::new_unchecked(m.scale_real(0.25), vec![2, 2]))
}

/// `ρ` expressed in the Bell basis, `B† ρ B`.
pub fn in_bell_basis(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    require_two_qubits(rho)?;
    let b = bell_basis();
    Ok(b.adjoint().matmul(rho.matrix()).matmul(&b))
}

/// Bell weights of a two-qubit state, after checking it is Bell-diagonal.
pub fn bell_weights(rho: &DensityMatrix) -> Result<BellDiagonalState> {
    let m = in_bell_basis(rho)?;
    let mut max_off_diagonal = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                max_off_diagonal = max_off_diagonal.max(m[(i, j)].norm());
            }
        }
    }
    if max_off_diagonal > BELL_DIAGONAL_TOLERANCE {
        return Err(Error::NotBellDiagonal { max_off_diagonal });
    }
    Ok(BellDiagonalState { weights: [m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re] })
}

/// Singlet fidelity `⟨β11|ρ|β11⟩` of any two-qubit state.
pub fn singlet_fidelity(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    Ok(rho.expectation_pure(&bell_state(1, 1)))
}

/// `c_j = Tr(ρ σ_j⊗σ_j)` for a Bell-diagonal two-qubit state.
pub fn c_from_state(rho: &DensityMatrix) -> Result<CVector> {
    bell_weights(rho)?;
    let c: Vec<f64> = paulis().iter().map(|s| rho.matrix().matmul(&tensor(s, s)).trace().re).collect();
    Ok(CVector { c1: c[0], c2: c[1], c3: c[2] })
}
