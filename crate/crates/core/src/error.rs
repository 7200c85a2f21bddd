use thiserror::Error;

use crate::rings::BaseRing;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("no canonical map from {from} to {to}")]
    NoCanonicalMap { from: BaseRing, to: BaseRing },

    #[error("incompatible comodules: {0}")]
    Incompatible(String),

    #[error("comodule axiom failure: {0}")]
    AxiomFailure(String),

    #[error("lattice is not saturated (index {index})")]
    NotSaturated { index: String },

    #[error("lattice is not a subcomodule: {0}")]
    NotSubcomodule(String),

    #[error("no weight decomposition: {0}")]
    NoWeightDecomposition(String),

    #[error("character is not symmetric under q <-> 1/q: {0}")]
    NonSymmetricCharacter(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
