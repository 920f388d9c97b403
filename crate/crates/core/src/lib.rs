//! Exact computations with complete simplicial multi-fans: volume
//! polynomials, Duistermaat-Heckman functions, Poincaré duality algebras of
//! volume polynomials, and recognition of volume polynomials.
//!
//! Everything is exact over the rationals; the only floating-point code is the
//! Monte-Carlo volume estimator in [`polytope`].
//!
//! Vertex slots are 0-based throughout this crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod multifan;
pub mod polytope;
pub mod recognize;
pub mod simplicial;
pub mod volume;

pub use error::{Error, Result};
pub use multifan::MultiFan;

use rand::SeedableRng;

/// Deterministic generator used for every randomized step.
pub type DetRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> DetRng {
    DetRng::seed_from_u64(seed)
}
