//! Exact comodule computations for SL₂ over the integers and its localizations.

pub mod comodule;
pub mod error;
pub mod homological;
pub mod hopf;
pub mod isotest;
pub mod json;
pub mod ktheory;
pub mod lattice;
pub mod matrix;
pub mod morphism;
pub mod par;
pub mod rings;
pub mod snf;
pub mod solve;
pub mod weights;

pub use error::{Error, Result};

/// Seed for sampled checks unless overridden by `SL2COMOD_SEED`.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn seed_from_env() -> u64 {
    std::env::var("SL2COMOD_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub use rings::{BaseRing, RingScalar};
