//! Dense complex linear algebra for dimensions up to 32.
//!
//! Subsystems are ordered big-endian: the first entry of a dimension list is
//! the most significant factor of the row/column index.

mod density;
mod eig;
mod matrix;

pub use density::{von_neumann_entropy, DensityMatrix};
pub use eig::{hermitian_eig, hermitian_eigenvalues, Spectrum};
pub use matrix::{ket_kron, projector, tensor, ComplexMatrix, C64};

/// Absolute tolerance for the Hermitian, trace and positivity invariants.
pub const STATE_TOLERANCE: f64 = 1e-10;

/// `-x log2 x` with `0 log 0 = 0`; nonpositive arguments contribute zero.
#[inline]
pub fn entropy_term(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * libm::log2(x)
    }
}

/// Shannon entropy in bits of a list of probabilities.
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    probabilities.iter().map(|&p| entropy_term(p)).sum()
}

/// Binary entropy `h(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_term(p) + entropy_term(1.0 - p)
}
