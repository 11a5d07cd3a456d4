//! Quantum discord, classical correlation and mutual information for small
//! bipartite states, together with an exact density-matrix simulation of the
//! BBPSSW entanglement-purification round.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; randomized routines take an explicit seed or RNG.
//!
//! Layout:
//!
//! - [`linalg`]: dense complex matrices, Kronecker products, partial traces,
//!   Hermitian eigendecomposition and von Neumann entropy.
//! - [`states`]: Bell, Werner and Bell-diagonal states and the `c`-vector
//!   coordinates of the latter.
//! - [`correlations`]: mutual information, classical correlation (closed form
//!   and numerical optimization over projective measurements) and discord.
//! - [`purification`]: the σ_y / bilateral-CNOT / coincidence round and the
//!   twirl channels that return the state to Werner form.
//! - [`koashi`]: a higher-dimensional family with additive discord and the
//!   Koashi–Winter monogamy identity.
//! - [`curves`]: the per-fidelity correlation curves for ρ, ρ′, χ and χ′.
//!
//! All entropies are in bits.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod correlations;
pub mod curves;
mod error;
pub mod koashi;
pub mod linalg;
pub mod purification;
pub mod random;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum, C64};
