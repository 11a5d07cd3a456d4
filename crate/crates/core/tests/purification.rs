use proptest::prelude::*;
use qdiscord_core::correlations::{analytic_report, discord_bell_diagonal};
use qdiscord_core::linalg::{ComplexMatrix, DensityMatrix, C64};
use qdiscord_core::purification::*;
use qdiscord_core::random::{random_simplex_point, rng_from_seed};
use qdiscord_core::states::{
    bell_state, bell_weights, c_from_state, singlet_fidelity, werner, BellDiagonalState, CVector,
};

/// Kept-pair weights by Bell-label bookkeeping, no matrices involved.
///
/// σ_y on one side flips both labels of every pair. The bilateral CNOT sends
/// `(a1,b1)⊗(a2,b2)` to `(a1⊕a2, b1)⊗(a2, b1⊕b2)`, and a coincidence on the
/// target means `b1 = b2`.
fn combinatorial_kept_pair(w: [f64; 4]) -> ([f64; 4], f64) {
    let flipped = |a: usize, b: usize| w[2 * (a ^ 1) + (b ^ 1)];
    let mut out = [0.0; 4];
    for a1 in 0..2 {
        for a2 in 0..2 {
            for b in 0..2 {
                out[2 * (a1 ^ a2) + b] += flipped(a1, b) * flipped(a2, b);
            }
        }
    }
    let p: f64 = out.iter().sum();
    (out.map(|x| x / p), p)
}

fn werner_weights(f: f64) -> [f64; 4] {
    let r = (1.0 - f) / 3.0;
    [r, r, r, f]
}

fn fidelity_grid() -> impl Iterator<Item = f64> {
    (0..=10).map(|i| i as f64 / 10.0)
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn kept_pair_weights_three_ways() {
    for f in fidelity_grid().chain([0.123, 0.577, 0.999]) {
        let closed = intermediate_weights(f);
        let (combinatorial, p) = combinatorial_kept_pair(werner_weights(f));
        let sim = simulate_round(f).unwrap();
        let simulated = bell_weights(&sim.intermediate).unwrap().weights();
        assert!(close(&closed, &combinatorial, 1e-12), "F={f}");
        assert!(close(&closed, &simulated, 1e-12), "F={f}: {closed:?} vs {simulated:?}");
        assert!((sim.success_probability - p).abs() <= 1e-12);
        assert!((coincidence_probability(f) - (8.0 * f * f - 4.0 * f + 5.0) / 9.0).abs() <= 1e-15);
        assert!((sim.success_probability - coincidence_probability(f)).abs() <= 1e-12);
    }
}

#[test]
fn kept_pair_c_vector() {
    for f in fidelity_grid() {
        let n = 8.0 * f * f - 4.0 * f + 5.0;
        let c1 = (16.0 * f * f - 8.0 * f + 1.0) / n;
        let expected = [c1, -c1, (12.0 * f - 3.0) / n];
        let closed = intermediate_state(f).unwrap().c_vector().as_array();
        let simulated = c_from_state(&simulate_round(f).unwrap().intermediate).unwrap().as_array();
        assert!(close(&closed, &expected, 1e-12), "F={f}");
        assert!(close(&simulated, &expected, 1e-12), "F={f}");
    }
    let c = intermediate_state(1.0).unwrap().c_vector();
    assert!(close(&c.as_array(), &[1.0, -1.0, 1.0], 1e-15));
}

#[test]
fn intermediate_state_rejects_out_of_range() {
    assert!(intermediate_state(1.5).is_err());
    assert!(intermediate_state(-0.1).is_err());
}

#[test]
fn bilateral_cnot_on_bell_products() {
    // Full 16-case table against the label rule.
    for s in 0..4usize {
        for t in 0..4usize {
            let pair =
                |k: usize| DensityMatrix::from_pure(&bell_state((k >> 1) as u8, (k & 1) as u8), vec![2, 2]).unwrap();
            let out = bilateral_cnot(&pair(s), &pair(t)).unwrap();
            let (a1, b1, a2, b2) = (s >> 1, s & 1, t >> 1, t & 1);
            let src = bell_state((a1 ^ a2) as u8, b1 as u8);
            let tgt = bell_state(a2 as u8, (b1 ^ b2) as u8);
            // Output ordering is A0 B0 A1 B1, i.e. source ⊗ target.
            let mut psi = vec![C64::new(0.0, 0.0); 16];
            for i in 0..4 {
                for j in 0..4 {
                    psi[4 * i + j] = src[i] * tgt[j];
                }
            }
            let fid = out.expectation_pure(&psi);
            assert!((fid - 1.0).abs() < 1e-12, "s={s} t={t}");
        }
    }
}

#[test]
fn coincidence_of_perfect_pairs() {
    let b00 = DensityMatrix::from_pure(&bell_state(0, 0), vec![2, 2]).unwrap();
    let four = bilateral_cnot(&b00, &b00).unwrap();
    let (kept, p) = measure_coincidence(&four).unwrap();
    assert!((p - 1.0).abs() < 1e-12);
    assert!((bell_weights(&kept).unwrap().weight(0, 0) - 1.0).abs() < 1e-12);
}

#[test]
fn twirl_examples() {
    for f in [0.3, 0.6, 0.75, 0.9] {
        let kept = simulate_round(f).unwrap();
        assert!((singlet_fidelity(&kept.final_state).unwrap() - purified_fidelity(f)).abs() < 1e-12);
        assert!((singlet_fidelity(&kept.direct_twirl).unwrap() - direct_twirl_fidelity(f)).abs() < 1e-12);
        let w = werner(f).unwrap();
        let twice = twirl_to_werner(&twirl_to_werner(&w).unwrap()).unwrap();
        assert!(twice.matrix().max_abs_diff(w.matrix()) < 1e-15);
    }
}

#[test]
fn fidelity_recurrence_fixed_points() {
    for f in [0.25, 0.5, 1.0] {
        assert!((purified_fidelity(f) - f).abs() < 1e-12);
    }
    assert!((purified_fidelity(0.75) - 0.788_461_538_461_538_5).abs() < 1e-15);
    for i in 1..100 {
        let f = 0.5 + 0.5 * i as f64 / 100.0;
        assert!(purified_fidelity(f) > f, "F={f}");
    }
}

#[test]
fn monte_carlo_twirl_matches_closed_form() {
    let kept = simulate_round(0.7).unwrap().intermediate;
    let mc = twirl_monte_carlo(&kept, 100_000, 7).unwrap();
    let exact = twirl_to_werner(&kept).unwrap();
    let err = mc.matrix().max_abs_diff(exact.matrix());
    assert!(err < 5e-3, "{err}");
    // Each U⊗U conjugation fixes the singlet weight exactly.
    let fid = singlet_fidelity(&mc).unwrap();
    assert!((fid - singlet_fidelity(&kept).unwrap()).abs() < 1e-12);
}

#[test]
fn monte_carlo_twirl_is_seeded() {
    let w = werner(0.6).unwrap();
    let a = twirl_monte_carlo(&w, 50, 3).unwrap();
    let b = twirl_monte_carlo(&w, 50, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn identity_sampler_leaves_state_alone() {
    let rho = simulate_round(0.8).unwrap().intermediate;
    let out = twirl_average(&rho, 5, |_| ComplexMatrix::identity(2)).unwrap();
    assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
}

#[test]
fn round_examples() {
    for f in [0.5, 1.0] {
        assert!((bbpssw_round(f).unwrap().f_out - f).abs() < 1e-12);
    }
    let r = bbpssw_round(0.75).unwrap();
    assert!((r.f_out - 0.788_461_538_461_538_5).abs() < 1e-12);
    assert!((r.p_success - coincidence_probability(0.75)).abs() < 1e-12);
    assert!(bbpssw_round(1.2).is_err());
}

#[test]
fn iteration_examples() {
    let fs = iterate(0.6, 6).unwrap().fidelities();
    assert_eq!(fs.len(), 7);
    assert!(fs.windows(2).all(|w| w[1] > w[0]));
    assert!(fs.iter().all(|&f| f < 1.0));

    let flat = iterate(0.25, 4).unwrap().fidelities();
    assert!(flat.iter().all(|f| (f - 0.25).abs() < 1e-12));

    let perfect = iterate(1.0, 5).unwrap();
    assert!((perfect.cumulative_yield - 0.5f64.powi(5)).abs() < 1e-14);
    assert!(iterate(0.7, 0).is_err());
}

#[test]
fn analytic_orderings_on_a_grid() {
    for i in 1..100 {
        let f = 0.5 + 0.005 * i as f64;
        let rho = analytic_report(&CVector::werner(f));
        let kept = analytic_report(&intermediate_state(f).unwrap().c_vector());
        let out = analytic_report(&CVector::werner(purified_fidelity(f)));
        let direct = analytic_report(&CVector::werner(direct_twirl_fidelity(f)));
        assert!(out.discord > rho.discord && out.discord > kept.discord, "F={f}");
        assert!(kept.discord < rho.discord, "F={f}");
        assert!(direct.discord < out.discord, "F={f}");
        assert!(out.mutual_information > rho.mutual_information);
        assert!(out.classical_correlation > rho.classical_correlation);
    }
}

fn random_bell_diagonal(seed: u64) -> BellDiagonalState {
    let w = random_simplex_point(4, &mut rng_from_seed(seed));
    BellDiagonalState::new([w[0], w[1], w[2], w[3]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_on_arbitrary_bell_diagonal_inputs(seed in any::<u64>()) {
        // Bell-diagonal inputs other than Werner still follow the label rule.
        let s = random_bell_diagonal(seed);
        let rho = s.to_density();
        let four = bilateral_cnot(&unilateral_sigma_y(&rho).unwrap(), &unilateral_sigma_y(&rho).unwrap()).unwrap();
        let (kept, p) = measure_coincidence(&four).unwrap();
        let (expected, p_expected) = combinatorial_kept_pair(s.weights());
        prop_assert!((p - p_expected).abs() <= 1e-12);
        prop_assert!(close(&bell_weights(&kept).unwrap().weights(), &expected, 1e-12));
    }

    #[test]
    fn twirl_keeps_singlet_weight(seed in any::<u64>()) {
        let rho = random_bell_diagonal(seed).to_density();
        let t = twirl_to_werner(&rho).unwrap();
        prop_assert!((singlet_fidelity(&t).unwrap() - singlet_fidelity(&rho).unwrap()).abs() <= 1e-12);
        let w = bell_weights(&t).unwrap().weights();
        prop_assert!((w[0] - w[1]).abs() <= 1e-12 && (w[1] - w[2]).abs() <= 1e-12);
    }

    #[test]
    fn sigma_y_is_an_involution(seed in any::<u64>()) {
        let rho = random_bell_diagonal(seed).to_density();
        let back = unilateral_sigma_y(&unilateral_sigma_y(&rho).unwrap()).unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) <= 1e-14);
    }

    #[test]
    fn purification_gains_discord_above_half(f in 0.5001f64..0.9999) {
        let before = discord_bell_diagonal(&CVector::werner(f));
        let after = discord_bell_diagonal(&CVector::werner(purified_fidelity(f)));
        prop_assert!(after > before);
        prop_assert!(purified_fidelity(f) > f);
    }

    #[test]
    fn success_probability_in_range(f in 0.0f64..=1.0) {
        let p = coincidence_probability(f);
        prop_assert!(p > 0.0 && p <= 1.0 + 1e-15);
    }
}
