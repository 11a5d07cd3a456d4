//! One round of BBPSSW purification on Werner pairs, simulated on the full
//! four-qubit density matrix.
//!
//! Subsystem order for two pairs is `A0 B0 A1 B1`; pair 0 controls and pair 1
//! is the target of the bilateral CNOT, and pair 1 is then measured in the
//! computational basis. The round is
//! `σ_y ⊗ I → bilateral CNOT → keep on coincidence → σ_y ⊗ I → twirl`.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::correlations::{analytic_report, CorrelationReport};
use crate::linalg::{tensor, ComplexMatrix, DensityMatrix, C64};
use crate::random::{haar_unitary, rng_from_seed};
use crate::states::{c_from_state, pauli_y, singlet_fidelity, werner, BellDiagonalState};
use crate::{Error, Result};

/// Success probabilities below this are treated as conditioning on a null event.
pub const NULL_EVENT_PROBABILITY: f64 = 1e-14;

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() != [2, 2] {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    Ok(())
}

/// `(σ_y ⊗ I) ρ (σ_y ⊗ I)†`: swaps the Bell weights β11↔β00 and β01↔β10.
pub fn unilateral_sigma_y(rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubits(rho)?;
    rho.evolve(&tensor(&pauli_y(), &ComplexMatrix::identity(2)))
}

/// Permutation matrix of a CNOT on `n` qubits (qubit 0 most significant).
pub fn cnot(n: usize, control: usize, target: usize) -> ComplexMatrix {
    assert!(control < n && target < n && control != target);
    let d = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let mut m = ComplexMatrix::zeros(d, d);
    for x in 0..d {
        let y = if x & bit(control) != 0 { x ^ bit(target) } else { x };
        m[(y, x)] = C64::new(1.0, 0.0);
    }
    m
}

/// `CNOT(A0→A1) · CNOT(B0→B1)` on `A0 B0 A1 B1`.
pub fn bilateral_cnot_gate() -> ComplexMatrix {
    cnot(4, 0, 2).matmul(&cnot(4, 1, 3))
}

/// `U (ρ0 ⊗ ρ1) U†` with the bilateral CNOT, pair 0 as control.
pub fn bilateral_cnot(pair0: &DensityMatrix, pair1: &DensityMatrix) -> Result<DensityMatrix> {
    require_two_qubits(pair0)?;
    require_two_qubits(pair1)?;
    pair0.tensor(pair1).evolve(&bilateral_cnot_gate())
}

/// Projects `A1 B1` onto the coincident outcomes `|00⟩, |11⟩`, traces out
/// pair 1 and renormalizes. Returns the kept pair and the success probability.
pub fn measure_coincidence(rho4: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    if rho4.dims() != [2, 2, 2, 2] {
        return Err(Error::DimensionMismatch { expected: 16, found: rho4.dim() });
    }
    let id = ComplexMatrix::identity(4);
    let mut kept = ComplexMatrix::zeros(16, 16);
    for outcome in [0usize, 3] {
        let mut p = ComplexMatrix::zeros(4, 4);
        p[(outcome, outcome)] = C64::new(1.0, 0.0);
        let lifted = tensor(&id, &p);
        kept = &kept + &lifted.matmul(rho4.matrix()).matmul(&lifted);
    }
    let probability = kept.trace().re;
    if probability < NULL_EVENT_PROBABILITY {
        return Err(Error::NullEvent { probability });
    }
    let branch = DensityMatrix::new_unchecked(kept.scale_real(1.0 / probability), vec![2, 2, 2, 2]);
    Ok((branch.partial_trace(&[0, 1])?, probability))
}

/// Bilateral-SU(2) twirl in closed form: keeps `⟨β11|ρ|β11⟩` and spreads the
/// remaining weight evenly over the other three Bell states.
pub fn twirl_to_werner(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let f = singlet_fidelity(rho)?.clamp(0.0, 1.0);
    werner(f)
}

/// Average of `(U⊗U) ρ (U⊗U)†` over `samples` unitaries from `sampler`,
/// which receives the sample index.
pub fn twirl_average(
    rho: &DensityMatrix,
    samples: usize,
    mut sampler: impl FnMut(usize) -> ComplexMatrix,
) -> Result<DensityMatrix> {
    require_two_qubits(rho)?;
    if samples == 0 {
        return Err(Error::InvalidArgument("twirl needs at least one sample"));
    }
    let mut acc = ComplexMatrix::zeros(4, 4);
    for i in 0..samples {
        let u = sampler(i);
        acc = &acc + &rho.matrix().conjugate_by(&tensor(&u, &u));
    }
    Ok(DensityMatrix::new_unchecked(acc.scale_real(1.0 / samples as f64), vec![2, 2]))
}

/// Monte-Carlo bilateral twirl with Haar-random `U`; sample `i` draws from a
/// generator seeded with `seed + i`, so results do not depend on scheduling.
pub fn twirl_monte_carlo(rho: &DensityMatrix, samples: usize, seed: u64) -> Result<DensityMatrix> {
    twirl_average(rho, samples, |i| haar_unitary(2, &mut rng_from_seed(seed.wrapping_add(i as u64))))
}

/// Same as [`twirl_monte_carlo`] but drawing from a caller's generator.
pub fn twirl_with_rng<R: Rng + ?Sized>(rho: &DensityMatrix, samples: usize, rng: &mut R) -> Result<DensityMatrix> {
    twirl_average(rho, samples, |_| haar_unitary(2, rng))
}

/// Closed-form Bell weights of the kept pair for two Werner(F) inputs after
/// the first σ_y step, in `β00, β01, β10, β11` order.
pub fn intermediate_weights(f: f64) -> [f64; 4] {
    let n = 8.0 * f * f - 4.0 * f + 5.0;
    let minor = (2.0 * f * f - 4.0 * f + 2.0) / n;
    [(10.0 * f * f - 2.0 * f + 1.0) / n, minor, (6.0 * f - 6.0 * f * f) / n, minor]
}

/// Coincidence probability for two Werner(F) pairs, `(8F² − 4F + 5)/9`.
pub fn coincidence_probability(f: f64) -> f64 {
    (8.0 * f * f - 4.0 * f + 5.0) / 9.0
}

/// Output fidelity of a full round, `F′ = (10F² − 2F + 1)/(8F² − 4F + 5)`.
pub fn purified_fidelity(f: f64) -> f64 {
    (10.0 * f * f - 2.0 * f + 1.0) / (8.0 * f * f - 4.0 * f + 5.0)
}

/// Fidelity after twirling the kept pair without the second σ_y,
/// `F″ = (2F² − 4F + 2)/(8F² − 4F + 5)`.
pub fn direct_twirl_fidelity(f: f64) -> f64 {
    (2.0 * f * f - 4.0 * f + 2.0) / (8.0 * f * f - 4.0 * f + 5.0)
}

/// Intermediate states of one simulated round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundStates {
    pub input: DensityMatrix,
    /// Kept pair right after post-selection.
    pub intermediate: DensityMatrix,
    /// σ_y then twirl: the next round's input.
    pub final_state: DensityMatrix,
    /// Twirl applied to the kept pair directly.
    pub direct_twirl: DensityMatrix,
    pub success_probability: f64,
}

/// Runs the round on two copies of `Werner(F)`.
pub fn simulate_round(f: f64) -> Result<RoundStates> {
    let input = werner(f)?;
    let rotated = unilateral_sigma_y(&input)?;
    let four = bilateral_cnot(&rotated, &rotated)?;
    let (intermediate, success_probability) = measure_coincidence(&four)?;
    let final_state = twirl_to_werner(&unilateral_sigma_y(&intermediate)?)?;
    let direct_twirl = twirl_to_werner(&intermediate)?;
    Ok(RoundStates { input, intermediate, final_state, direct_twirl, success_probability })
}

/// Correlations of a Bell-diagonal two-qubit state via the closed forms.
pub fn bell_diagonal_report(rho: &DensityMatrix) -> Result<CorrelationReport> {
    Ok(analytic_report(&c_from_state(rho)?))
}

/// One round's fidelities, success probability and correlations.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub f_in: f64,
    pub f_out: f64,
    pub p_success: f64,
    pub input: CorrelationReport,
    pub intermediate: CorrelationReport,
    pub final_state: CorrelationReport,
}

pub fn bbpssw_round(f: f64) -> Result<RoundRecord> {
    let s = simulate_round(f)?;
    Ok(RoundRecord {
        f_in: f,
        f_out: singlet_fidelity(&s.final_state)?,
        p_success: s.success_probability,
        input: bell_diagonal_report(&s.input)?,
        intermediate: bell_diagonal_report(&s.intermediate)?,
        final_state: bell_diagonal_report(&s.final_state)?,
    })
}

/// Rounds in order plus the expected fraction of pairs surviving.
#[derive(Debug, Clone, PartialEq)]
pub struct PurificationTrace {
    pub rounds: Vec<RoundRecord>,
    /// `Π p_success/2`: each round consumes two pairs for at most one.
    pub cumulative_yield: f64,
}

impl PurificationTrace {
    /// `F0, F1, …, Fn`.
    pub fn fidelities(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.rounds.first().map(|r| r.f_in).into_iter().collect();
        out.extend(self.rounds.iter().map(|r| r.f_out));
        out
    }
}

/// Chains `rounds` rounds starting from `Werner(F0)`.
pub fn iterate(f0: f64, rounds: usize) -> Result<PurificationTrace> {
    if rounds == 0 {
        return Err(Error::InvalidArgument("at least one round is required"));
    }
    let mut f = f0;
    let mut records = Vec::with_capacity(rounds);
    let mut cumulative_yield = 1.0;
    for _ in 0..rounds {
        let record = bbpssw_round(f)?;
        cumulative_yield *= record.p_success / 2.0;
        f = record.f_out.clamp(0.0, 1.0);
        records.push(record);
    }
    Ok(PurificationTrace { rounds: records, cumulative_yield })
}

/// Bell weights of the closed-form kept pair, as a state.
pub fn intermediate_state(f: f64) -> Result<BellDiagonalState> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::FidelityOutOfRange(f));
    }
    BellDiagonalState::new(intermediate_weights(f))
}
