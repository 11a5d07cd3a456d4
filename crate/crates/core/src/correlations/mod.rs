//! Total, classical and quantum correlations of bipartite states.
//!
//! The measurement always acts on subsystem B and the conditional entropy is
//! that of A: `C(ρ_AB) = max_{Π} [S(ρ_A) − Σ_k p_k S(ρ_k)]`, with
//! `ρ_k = Tr_B(Π_k ρ Π_k)/p_k`. Discord is `D = I − C`.

mod measurement;
mod optimize;
mod oracle;

use alloc::vec::Vec;

use crate::linalg::{shannon_entropy, von_neumann_entropy, DensityMatrix};
use crate::states::CVector;
use crate::{Error, Result};

pub use measurement::{conditional_entropy, MeasurementBasis, NULL_OUTCOME_PROBABILITY};
pub use optimize::{OptimizerConfig, OptimizerDiagnostics, SearchPath};
pub use oracle::{brute_force_oracle, GridResolution};

/// Split of a multipartite state's subsystems into A and its complement B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Bipartition {
    /// `a` lists the subsystems of A among `count`; B gets the rest. Both
    /// sides must be nonempty.
    pub fn new(a: &[usize], count: usize) -> Result<Self> {
        if let Some(&index) = a.iter().find(|&&k| k >= count) {
            return Err(Error::SubsystemOutOfRange { index, count });
        }
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        let b: Vec<usize> = (0..count).filter(|k| !a.contains(k)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::NotBipartite);
        }
        Ok(Self { a, b })
    }

    /// First subsystem versus second, for two-party states.
    pub fn standard() -> Self {
        Self { a: alloc::vec![0], b: alloc::vec![1] }
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }
}

/// `I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB)` in bits.
pub fn mutual_information(rho: &DensityMatrix, parts: &Bipartition) -> Result<f64> {
    let count = rho.dims().len();
    if parts.a.iter().chain(&parts.b).any(|&k| k >= count) || parts.a.len() + parts.b.len() != count {
        return Err(Error::NotBipartite);
    }
    let sa = von_neumann_entropy(&rho.partial_trace(&parts.a)?)?;
    let sb = von_neumann_entropy(&rho.partial_trace(&parts.b)?)?;
    Ok(sa + sb - von_neumann_entropy(rho)?)
}

/// Optimized classical correlation together with the maximizing basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCorrelation {
    pub value: f64,
    pub basis: MeasurementBasis,
    pub diagnostics: OptimizerDiagnostics,
}

/// Mutual information, classical correlation and discord of one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
    /// `None` for closed-form evaluations.
    pub optimizer: Option<OptimizerDiagnostics>,
}

impl CorrelationReport {
    /// Builds a report with `discord = I − C`.
    pub fn from_parts(
        mutual_information: f64,
        classical_correlation: f64,
        optimizer: Option<OptimizerDiagnostics>,
    ) -> Self {
        Self {
            mutual_information,
            classical_correlation,
            discord: mutual_information - classical_correlation,
            optimizer,
        }
    }
}

/// [`classical_correlation_numeric_with`] using the default configuration.
pub fn classical_correlation_numeric(rho: &DensityMatrix) -> Result<ClassicalCorrelation> {
    classical_correlation_numeric_with(rho, &OptimizerConfig::default())
}

/// Maximizes `S(ρ_A) − S(A|{Π_k})` over projective measurements on B.
///
/// `d_B = 2` uses the Bloch-sphere grid and Nelder–Mead; `d_B ∈ {3, 4}` uses
/// seeded Haar sampling with Givens refinement (accurate to about 1e-3).
pub fn classical_correlation_numeric_with(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
) -> Result<ClassicalCorrelation> {
    let (da, db) = measurement::split_dims(rho)?;
    let sa = von_neumann_entropy(&rho.partial_trace(&[0])?)?;
    let min = optimize::minimize_conditional_entropy(rho.matrix(), da, db, config)?;
    Ok(ClassicalCorrelation { value: sa - min.value, basis: min.basis, diagnostics: min.diagnostics })
}

/// `I`, numerically optimized `C`, and `D = I − C`.
pub fn discord_numeric(rho: &DensityMatrix) -> Result<CorrelationReport> {
    discord_numeric_with(rho, &OptimizerConfig::default())
}

pub fn discord_numeric_with(rho: &DensityMatrix, config: &OptimizerConfig) -> Result<CorrelationReport> {
    let c = classical_correlation_numeric_with(rho, config)?;
    let i = mutual_information(rho, &Bipartition::standard())?;
    Ok(CorrelationReport::from_parts(i, c.value, Some(c.diagnostics)))
}

/// `u/2 · log2 u`, zero at `u = 0`.
fn half_u_log_u(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        0.5 * u * libm::log2(u)
    }
}

/// `u log2 u`, zero at `u = 0`.
fn u_log_u(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        u * libm::log2(u)
    }
}

/// `C = (1−c)/2 log2(1−c) + (1+c)/2 log2(1+c)` with `c = max |c_j|`.
pub fn classical_correlation_analytic(c: &CVector) -> f64 {
    let m = c.max_abs();
    half_u_log_u(1.0 - m) + half_u_log_u(1.0 + m)
}

/// Mutual information of a Bell-diagonal state: both marginals are `I/2`,
/// so `I = 2 − H(λ)`.
pub fn mutual_information_bell_diagonal(c: &CVector) -> f64 {
    2.0 - shannon_entropy(&c.weights())
}

/// Closed-form discord of a Bell-diagonal state.
pub fn discord_bell_diagonal(c: &CVector) -> f64 {
    let CVector { c1, c2, c3 } = *c;
    let total = u_log_u(1.0 - c1 - c2 - c3)
        + u_log_u(1.0 - c1 + c2 + c3)
        + u_log_u(1.0 + c1 - c2 + c3)
        + u_log_u(1.0 + c1 + c2 - c3);
    0.25 * total - classical_correlation_analytic(c)
}

/// Closed-form report for a Bell-diagonal state (`optimizer` is `None`).
pub fn analytic_report(c: &CVector) -> CorrelationReport {
    CorrelationReport::from_parts(mutual_information_bell_diagonal(c), classical_correlation_analytic(c), None)
}
