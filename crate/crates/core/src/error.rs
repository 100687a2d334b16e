use thiserror::Error;

/// Errors raised by the polyhedral toolkit.
///
/// Most operations are total over well-formed input; the variants below cover
/// malformed input, preconditions the caller violated, and guard limits.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("polyhedron is infeasible: {0}")]
    Infeasible(String),

    #[error("polyhedron is unbounded: {0}")]
    Unbounded(String),

    #[error("polyhedron has a nontrivial lineality space and no vertices")]
    NotPointed,

    #[error("limit exceeded: {what} requires {needed}, limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("simplex iteration cap of {0} reached")]
    IterationLimit(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
