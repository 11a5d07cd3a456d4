//! A higher-dimensional family with computable, additive discord.
//!
//! States are parametrized through their purification
//! `|ψ⟩_ABC = Σ_i λ_i |a_i⟩|i⟩|b_i⟩`, which gives
//! `ρ_AB = Σ_ij λ_i λ_j ⟨b_j|b_i⟩ |a_i⟩|i⟩⟨a_j|⟨j|` and the separable
//! `ρ_AC = Σ_i λ_i² |a_i⟩⟨a_i| ⊗ |b_i⟩⟨b_i|`. Measuring B in `{|i⟩}` leaves A
//! pure, so `C(ρ_AB) = S(ρ_A)` and `D(ρ_AB) = S(ρ_B) − S(ρ_AB)`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::correlations::{classical_correlation_numeric_with, discord_numeric_with, OptimizerConfig};
use crate::linalg::{
    binary_entropy, hermitian_eig, hermitian_eigenvalues, tensor, von_neumann_entropy, ComplexMatrix, DensityMatrix,
    C64, STATE_TOLERANCE,
};
use crate::random::{random_pure_state, random_simplex_point};
use crate::states::pauli_y;
use crate::{Error, Result};

/// Largest supported dimension for each of A, B and C.
pub const MAX_SUBSYSTEM_DIM: usize = 4;

/// `(λ_i, |a_i⟩, |b_i⟩)` for `i < d_B`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassStateSpec {
    weights: Vec<f64>,
    a_vectors: Vec<Vec<C64>>,
    b_vectors: Vec<Vec<C64>>,
}

fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn basis_vector(d: usize, k: usize) -> Vec<C64> {
    (0..d).map(|i| C64::new(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
}

impl ClassStateSpec {
    /// Requires `Σ λ_i² = 1`, nonnegative `λ_i`, normalized vectors of
    /// consistent length, and every dimension in `1..=4`.
    pub fn new(weights: Vec<f64>, a_vectors: Vec<Vec<C64>>, b_vectors: Vec<Vec<C64>>) -> Result<Self> {
        let db = weights.len();
        if db == 0 || a_vectors.len() != db || b_vectors.len() != db {
            return Err(Error::InvalidArgument("need one a- and b-vector per weight"));
        }
        let da = a_vectors[0].len();
        let dc = b_vectors[0].len();
        for d in [da, db, dc] {
            if d == 0 || d > MAX_SUBSYSTEM_DIM {
                return Err(Error::UnsupportedDimension(d));
            }
        }
        if a_vectors.iter().any(|v| v.len() != da) {
            return Err(Error::DimensionMismatch {
                expected: da,
                found: a_vectors.iter().map(Vec::len).find(|&l| l != da).unwrap_or(da),
            });
        }
        if b_vectors.iter().any(|v| v.len() != dc) {
            return Err(Error::DimensionMismatch {
                expected: dc,
                found: b_vectors.iter().map(Vec::len).find(|&l| l != dc).unwrap_or(dc),
            });
        }
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::InvalidArgument("weights must be nonnegative"));
        }
        let total: f64 = weights.iter().map(|w| w * w).sum();
        if (total - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::NotNormalized { norm: libm::sqrt(total) });
        }
        for v in a_vectors.iter().chain(&b_vectors) {
            let n = norm(v);
            if (n - 1.0).abs() > STATE_TOLERANCE {
                return Err(Error::NotNormalized { norm: n });
            }
        }
        Ok(Self { weights, a_vectors, b_vectors })
    }

    /// Random member: `λ_i²` uniform on the simplex, Haar-random `|a_i⟩`, `|b_i⟩`.
    pub fn random<R: Rng + ?Sized>(da: usize, db: usize, dc: usize, rng: &mut R) -> Result<Self> {
        for d in [da, db, dc] {
            if d == 0 || d > MAX_SUBSYSTEM_DIM {
                return Err(Error::UnsupportedDimension(d));
            }
        }
        let weights = random_simplex_point(db, rng).into_iter().map(libm::sqrt).collect();
        let a_vectors = (0..db).map(|_| random_pure_state(da, rng)).collect();
        let b_vectors = (0..db).map(|_| random_pure_state(dc, rng)).collect();
        Self::new(weights, a_vectors, b_vectors)
    }

    /// `λ = (1, 0, …)` with every vector `|0⟩`: a product pure state.
    pub fn product(da: usize, db: usize, dc: usize) -> Result<Self> {
        let mut weights = vec![0.0; db];
        if let Some(w) = weights.first_mut() {
            *w = 1.0;
        }
        Self::new(weights, vec![basis_vector(da, 0); db], vec![basis_vector(dc, 0); db])
    }

    /// `(d_A, d_B, d_C)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.a_vectors[0].len(), self.weights.len(), self.b_vectors[0].len())
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn a_vectors(&self) -> &[Vec<C64>] {
        &self.a_vectors
    }

    pub fn b_vectors(&self) -> &[Vec<C64>] {
        &self.b_vectors
    }

    /// Coefficients `p_ij = λ_i λ_j ⟨b_j|b_i⟩` of `|a_i⟩|i⟩⟨a_j|⟨j|`.
    pub fn coefficients(&self) -> ComplexMatrix {
        let db = self.weights.len();
        ComplexMatrix::from_fn(db, db, |i, j| {
            inner(&self.b_vectors[j], &self.b_vectors[i]) * (self.weights[i] * self.weights[j])
        })
    }
}

/// `Σ_i λ_i |a_i⟩|i⟩|b_i⟩` on `A ⊗ B ⊗ C`.
pub fn purify_class(spec: &ClassStateSpec) -> Vec<C64> {
    let (da, db, dc) = spec.dims();
    let mut psi = vec![C64::new(0.0, 0.0); da * db * dc];
    for i in 0..db {
        let l = spec.weights[i];
        for a in 0..da {
            for c in 0..dc {
                psi[(a * db + i) * dc + c] += spec.a_vectors[i][a] * spec.b_vectors[i][c] * l;
            }
        }
    }
    psi
}

/// `ρ_AB = Σ_ij p_ij |a_i⟩|i⟩⟨a_j|⟨j|`, built directly from the coefficients.
pub fn build_class_state(spec: &ClassStateSpec) -> DensityMatrix {
    let (da, db, _) = spec.dims();
    let p = spec.coefficients();
    let d = da * db;
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..db {
        for j in 0..db {
            let pij = p[(i, j)];
            for a in 0..da {
                for a2 in 0..da {
                    m[(a * db + i, a2 * db + j)] = pij * spec.a_vectors[i][a] * spec.a_vectors[j][a2].conj();
                }
            }
        }
    }
    DensityMatrix::new_unchecked(m, vec![da, db])
}

/// `D(ρ_AB) = S(ρ_B) − S(ρ_AB)`.
pub fn discord_class_analytic(spec: &ClassStateSpec) -> Result<f64> {
    let rho = build_class_state(spec);
    Ok(von_neumann_entropy(&rho.partial_trace(&[1])?)? - von_neumann_entropy(&rho)?)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    Ok(())
}

/// Wootters concurrence: `max(0, λ1 − λ2 − λ3 − λ4)` where `λ_i²` are the
/// eigenvalues of `√ρ ρ̃ √ρ` and `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let yy = tensor(&pauli_y(), &pauli_y());
    let flipped = yy.matmul(&rho.matrix().conj()).matmul(&yy);
    let sqrt_rho = hermitian_eig(rho.matrix())?.map(|x| libm::sqrt(x.max(0.0)));
    let m = sqrt_rho.matmul(&flipped).matmul(&sqrt_rho);
    let m = ComplexMatrix::from_fn(4, 4, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let l: Vec<f64> = hermitian_eigenvalues(&m)?.into_iter().map(|x| libm::sqrt(x.max(0.0))).collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Two-qubit entanglement of formation, `h((1 + √(1 − C²))/2)`.
pub fn entanglement_of_formation_2q(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence(rho)?.min(1.0);
    Ok(binary_entropy(0.5 * (1.0 + libm::sqrt(1.0 - c * c))))
}

/// Terms of `D(ρ_AB) = E_F(ρ_AC) + S(A|C)` for a pure three-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct KoashiWinterTerms {
    pub discord_ab: f64,
    pub entanglement_of_formation_ac: f64,
    /// `S(ρ_AC) − S(ρ_C)`.
    pub conditional_entropy_ac: f64,
    pub residual: f64,
}

pub fn koashi_winter_check(psi: &[C64]) -> Result<KoashiWinterTerms> {
    koashi_winter_check_with(psi, &OptimizerConfig::default())
}

pub fn koashi_winter_check_with(psi: &[C64], config: &OptimizerConfig) -> Result<KoashiWinterTerms> {
    if psi.len() != 8 {
        return Err(Error::DimensionMismatch { expected: 8, found: psi.len() });
    }
    let abc = DensityMatrix::from_pure(psi, vec![2, 2, 2])?;
    let ab = abc.partial_trace(&[0, 1])?;
    let ac = abc.partial_trace(&[0, 2])?;
    let c = abc.partial_trace(&[2])?;
    let discord_ab = discord_numeric_with(&ab, config)?.discord;
    let entanglement_of_formation_ac = entanglement_of_formation_2q(&ac)?;
    let conditional_entropy_ac = von_neumann_entropy(&ac)? - von_neumann_entropy(&c)?;
    let residual = (discord_ab - entanglement_of_formation_ac - conditional_entropy_ac).abs();
    Ok(KoashiWinterTerms { discord_ab, entanglement_of_formation_ac, conditional_entropy_ac, residual })
}

/// Peres test on `ρ_AC`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptCheck {
    pub is_ppt: bool,
    pub min_eigenvalue: f64,
}

/// `ρ_AC` obtained by tracing B out of the purification.
pub fn reduced_ac(spec: &ClassStateSpec) -> Result<DensityMatrix> {
    let (da, db, dc) = spec.dims();
    DensityMatrix::from_pure(&purify_class(spec), vec![da, db, dc])?.partial_trace(&[0, 2])
}

/// Partial transpose of `ρ_AC` on C; PPT means min eigenvalue ≥ −1e-10.
pub fn separability_check_ac(spec: &ClassStateSpec) -> Result<PptCheck> {
    let ac = reduced_ac(spec)?;
    let pt = ac.partial_transpose(&[1])?;
    let min_eigenvalue = hermitian_eigenvalues(&pt)?.last().copied().unwrap_or(0.0);
    Ok(PptCheck { is_ppt: min_eigenvalue >= -STATE_TOLERANCE, min_eigenvalue })
}

/// Single- and n-copy discord of a class state plus the checks behind the
/// additivity argument.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityReport {
    pub n: usize,
    pub discord_single: f64,
    /// `n (S(ρ_B) − S(ρ_AB))`; entropies are additive on tensor powers.
    pub discord_n_copies: f64,
    pub classical_correlation_numeric: f64,
    pub entropy_a: f64,
    /// Concurrence formula when `ρ_AC` is two-qubit, otherwise 0 (the state is
    /// a product-state mixture by construction; see `ac_separability`).
    pub entanglement_of_formation_ac: f64,
    pub ac_separability: PptCheck,
    /// `|D − E_F(ρ_AC) − S(A|C)|`.
    pub monogamy_residual: f64,
}

pub fn additivity_report(spec: &ClassStateSpec, n: usize) -> Result<AdditivityReport> {
    additivity_report_with(spec, n, &OptimizerConfig::default())
}

pub fn additivity_report_with(spec: &ClassStateSpec, n: usize, config: &OptimizerConfig) -> Result<AdditivityReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("copy count must be at least 1"));
    }
    let (da, _, dc) = spec.dims();
    let rho = build_class_state(spec);
    let entropy_ab = von_neumann_entropy(&rho)?;
    let entropy_a = von_neumann_entropy(&rho.partial_trace(&[0])?)?;
    let entropy_b = von_neumann_entropy(&rho.partial_trace(&[1])?)?;
    let discord_single = entropy_b - entropy_ab;
    let discord_n_copies = n as f64 * entropy_b - n as f64 * entropy_ab;

    let classical_correlation_numeric = classical_correlation_numeric_with(&rho, config)?.value;

    let ac = reduced_ac(spec)?;
    let ac_separability = separability_check_ac(spec)?;
    let entanglement_of_formation_ac = if da == 2 && dc == 2 { entanglement_of_formation_2q(&ac)? } else { 0.0 };
    let entropy_ac = von_neumann_entropy(&ac)?;
    let entropy_c = von_neumann_entropy(&ac.partial_trace(&[1])?)?;
    let monogamy_residual = (discord_single - entanglement_of_formation_ac - (entropy_ac - entropy_c)).abs();

    Ok(AdditivityReport {
        n,
        discord_single,
        discord_n_copies,
        classical_correlation_numeric,
        entropy_a,
        entanglement_of_formation_ac,
        ac_separability,
        monogamy_residual,
    })
}
