//! Seedable samplers for unitaries and states.
//!
//! Every sampler takes a caller-supplied RNG; the crate itself uses
//! [`rand_chacha::ChaCha8Rng`] seeded from `u64` wherever a seed is exposed.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};

/// Deterministic RNG for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian with `E|z|² = 1`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

/// `d × d` matrix of i.i.d. complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal absorbed into Q. Modified Gram–Schmidt leaves R's diagonal
/// real and positive, which is exactly that phase fix.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    loop {
        let g = ginibre(d, d, rng);
        if let Some(q) = gram_schmidt_columns(&g) {
            return q;
        }
    }
}

/// Orthonormalizes the columns in order; `None` on (numerical) rank loss.
pub fn gram_schmidt_columns(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut columns: Vec<Vec<C64>> = (0..cols).map(|j| m.column(j)).collect();
    for j in 0..cols {
        for k in 0..j {
            let (done, rest) = columns.split_at_mut(j);
            let qk = &done[k];
            let proj: C64 = qk.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, q) in rest[0].iter_mut().zip(qk) {
                *x -= proj * q;
            }
        }
        let norm = libm::sqrt(columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm < 1e-12 {
            return None;
        }
        for x in columns[j].iter_mut() {
            *x /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(rows, cols, |i, j| columns[j][i]))
}

/// Haar-random pure state of dimension `d`.
pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm > 1e-12 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random Hermitian matrix with Gaussian entries (GUE-like, unnormalized).
pub fn random_hermitian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let gh = g.adjoint();
    (&g + &gh).scale_real(0.5)
}

/// Full-rank random density matrix `G G† / Tr(G G†)` (Hilbert–Schmidt measure).
pub fn random_density_matrix<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let m = g.matmul(&g.adjoint());
    let tr = m.trace().re;
    let mut out = m.scale_real(1.0 / tr);
    // exact Hermitian symmetry
    for i in 0..d {
        out[(i, i)].im = 0.0;
        for j in i + 1..d {
            out[(j, i)] = out[(i, j)].conj();
        }
    }
    out
}

/// Uniformly distributed point on the probability simplex with `n` vertices.
pub fn random_simplex_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| -libm::log(1.0 - rng.random::<f64>())).collect();
    let total: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= total;
    }
    w
}
