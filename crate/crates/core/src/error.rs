//! Error types shared across the crate.

use thiserror::Error;

/// Errors reported by algebra construction, evaluation, and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller supplied data that does not describe a valid object
    /// (bad parameters, malformed generators, unparsable input, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A point was queried that lies outside the domain closure of a
    /// partial permutation.
    #[error("point {x} is outside the domain of the generator")]
    OutsideDomain { x: i64 },

    /// The pair of points does not index a crossing of the generator.
    #[error("({i}, {j}) is not a crossing of the generator")]
    NotACrossing { i: i64, j: i64 },

    /// Two states cannot be connected by any positive domain, so the
    /// requested comparison or count is undefined.
    #[error("no connecting domain between the given generators")]
    NoConnectingDomain,

    /// An internal invariant failed.  This always indicates a bug in the
    /// library (or a violated structural identity), never bad user input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// Internal invariant violations exit with 3; every user-facing
    /// error (bad input, io, json, domain errors) exits with 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
