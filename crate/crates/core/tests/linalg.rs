use proptest::prelude::*;
use qdiscord_core::linalg::*;
use qdiscord_core::random::{haar_unitary, random_density_matrix, rng_from_seed};
use qdiscord_core::states::{bell_state, werner};
use qdiscord_core::Error;

/// Entrywise Kronecker definition, written out with explicit index arithmetic.
fn kron_oracle(a: &ComplexMatrix, b: &ComplexMatrix) -> Vec<Vec<C64>> {
    let mut out = vec![vec![C64::new(0.0, 0.0); a.cols() * b.cols()]; a.rows() * b.rows()];
    for r in 0..a.rows() * b.rows() {
        for c in 0..a.cols() * b.cols() {
            out[r][c] = a[(r / b.rows(), c / b.cols())] * b[(r % b.rows(), c % b.cols())];
        }
    }
    out
}

fn random_state(d: usize, dims: Vec<usize>, seed: u64) -> DensityMatrix {
    DensityMatrix::new(random_density_matrix(d, &mut rng_from_seed(seed)), dims).unwrap()
}

#[test]
fn tensor_matches_index_oracle() {
    let mut rng = rng_from_seed(21);
    let a = qdiscord_core::random::ginibre(2, 2, &mut rng);
    let b = qdiscord_core::random::ginibre(2, 2, &mut rng);
    let ab = tensor(&a, &b);
    let oracle = kron_oracle(&a, &b);
    for (r, row) in oracle.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            assert!((ab[(r, c)] - z).norm() < 1e-15);
        }
    }
}

#[test]
fn bell_marginal_is_maximally_mixed() {
    let rho = DensityMatrix::from_pure(&bell_state(0, 0), vec![2, 2]).unwrap();
    let a = rho.partial_trace(&[0]).unwrap();
    assert!(a.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
}

#[test]
fn product_state_marginal() {
    let ra = random_state(2, vec![2], 1);
    let rb = random_state(3, vec![3], 2);
    let back = ra.tensor(&rb).partial_trace(&[0]).unwrap();
    assert!(back.matrix().max_abs_diff(ra.matrix()) < 1e-12);
    let back_b = ra.tensor(&rb).partial_trace(&[1]).unwrap();
    assert!(back_b.matrix().max_abs_diff(rb.matrix()) < 1e-12);
}

#[test]
fn werner_marginals_are_maximally_mixed_on_grid() {
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    for i in 0..=20 {
        let w = werner(i as f64 / 20.0).unwrap();
        for k in [0, 1] {
            assert!(w.partial_trace(&[k]).unwrap().matrix().max_abs_diff(&half) < 1e-15);
        }
    }
}

#[test]
fn partial_trace_errors() {
    let rho = werner(0.5).unwrap();
    assert_eq!(rho.partial_trace(&[]), Err(Error::EmptySelection));
    assert_eq!(rho.partial_trace(&[2]), Err(Error::SubsystemOutOfRange { index: 2, count: 2 }));
    assert_eq!(rho.partial_trace(&[0, 1]).unwrap(), rho);
}

#[test]
fn partial_trace_keeps_original_order() {
    let ra = random_state(2, vec![2], 3);
    let rb = random_state(3, vec![3], 4);
    let rc = random_state(2, vec![2], 5);
    let abc = ra.tensor(&rb).tensor(&rc);
    let ac = abc.partial_trace(&[2, 0]).unwrap();
    assert_eq!(ac.dims(), &[2, 2]);
    assert!(ac.matrix().max_abs_diff(ra.tensor(&rc).matrix()) < 1e-12);
}

#[test]
fn werner_spectrum_matches_mixture_weights() {
    for f in [0.1, 0.4, 0.9] {
        let s = hermitian_eig(werner(f).unwrap().matrix()).unwrap();
        let mut expected = vec![f, (1.0 - f) / 3.0, (1.0 - f) / 3.0, (1.0 - f) / 3.0];
        expected.sort_by(|a, b| b.total_cmp(a));
        for (x, y) in s.eigenvalues.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn entropy_examples() {
    let pure = DensityMatrix::from_pure(&bell_state(1, 0), vec![2, 2]).unwrap();
    assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
    let mixed = DensityMatrix::maximally_mixed(vec![2, 2]);
    assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-14);
    // -0.8 log2 0.8 - 3 (0.2/3) log2(0.2/3), evaluated independently.
    let s = von_neumann_entropy(&werner(0.8).unwrap()).unwrap();
    assert!((s - 1.038_920_595_031_593_6).abs() < 1e-12);
    let direct = -0.8 * 0.8f64.log2() - 0.2 * (0.2f64 / 3.0).log2();
    assert!((s - direct).abs() < 1e-12);
}

#[test]
fn entropy_rejects_negative_spectrum() {
    let m = ComplexMatrix::diagonal(&[1.1, -0.1]);
    // Bypass DensityMatrix::new, which would reject this up front.
    assert!(DensityMatrix::new(m.clone(), vec![2]).is_err());
    assert!(matches!(hermitian_eigenvalues(&m), Ok(v) if v[1] < -1e-10));
}

#[test]
fn density_matrix_invariants_are_enforced() {
    let not_herm = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
    assert!(matches!(DensityMatrix::new(not_herm, vec![2]), Err(Error::NotHermitian { .. })));
    let bad_trace = ComplexMatrix::diagonal(&[0.5, 0.6]);
    assert!(matches!(DensityMatrix::new(bad_trace, vec![2]), Err(Error::TraceNotUnit { .. })));
    let bad_dims = ComplexMatrix::diagonal(&[0.5, 0.5]);
    assert!(matches!(DensityMatrix::new(bad_dims, vec![3]), Err(Error::DimensionMismatch { .. })));
}

fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entropy_is_unitarily_invariant(seed in seeds(), d in 2usize..=8) {
        let rho = random_state(d, vec![d], seed);
        let u = haar_unitary(d, &mut rng_from_seed(seed ^ 0xabc));
        let s0 = von_neumann_entropy(&rho).unwrap();
        let s1 = von_neumann_entropy(&rho.evolve(&u).unwrap()).unwrap();
        prop_assert!((s0 - s1).abs() <= 1e-9);
    }

    #[test]
    fn entropy_is_bounded(seed in seeds(), d in 1usize..=16) {
        let s = von_neumann_entropy(&random_state(d, vec![d], seed)).unwrap();
        prop_assert!(s >= -1e-12 && s <= (d as f64).log2() + 1e-9);
    }

    #[test]
    fn partial_trace_preserves_trace(seed in seeds(), keep in prop::sample::subsequence(vec![0usize, 1, 2], 1..=3)) {
        let rho = random_state(12, vec![2, 3, 2], seed);
        let r = rho.partial_trace(&keep).unwrap();
        prop_assert!((r.matrix().trace().re - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn tensor_is_associative(seed in seeds()) {
        let mut rng = rng_from_seed(seed);
        let a = qdiscord_core::random::ginibre(2, 3, &mut rng);
        let b = qdiscord_core::random::ginibre(3, 2, &mut rng);
        let c = qdiscord_core::random::ginibre(2, 2, &mut rng);
        let left = tensor(&tensor(&a, &b), &c);
        let right = tensor(&a, &tensor(&b, &c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn partial_trace_of_tensor_returns_first_factor(seed in seeds(), da in 1usize..=4, db in 1usize..=4) {
        let rho = random_state(da, vec![da], seed);
        let sigma = random_state(db, vec![db], seed.wrapping_add(1));
        let back = rho.tensor(&sigma).partial_trace(&[0]).unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()) <= 1e-10);
    }
}
