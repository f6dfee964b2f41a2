use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty domain: {0}")]
    EmptyDomain(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("requested accuracy {requested:e} unreachable with {available} terms (best {achievable:e})")]
    Accuracy {
        requested: f64,
        achievable: f64,
        available: usize,
    },
    #[error("grid of {grid} samples aliases a series truncated at {terms} terms")]
    Aliasing { grid: usize, terms: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("degenerate scan: {0}")]
    DegenerateScan(String),
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("derivative of order {order} unavailable: {reason}")]
    DerivativeUnavailable { order: u32, reason: String },
    #[error("not applicable: {0}")]
    Inapplicable(String),
    #[error("malformed file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
