use thiserror::Error;

use crate::homomorphism::VertexMap;

/// Errors raised by the hypergraph, polynomial and search operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported uniformity: expected r = {expected}, got r = {found}")]
    UnsupportedUniformity { expected: usize, found: usize },

    #[error("{what} has {size} vertices, above the configured bound of {bound}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("budget exceeded for {what}: needs {needed}, cap is {cap}")]
    Budget {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("polynomial is not symmetric in X{i} and X{j}; witness term {witness:?}")]
    Asymmetric {
        i: usize,
        j: usize,
        witness: Vec<usize>,
    },

    #[error("p4 + p5 differs from the X_iX_j coefficient p3 of the decomposition")]
    SplitMismatch,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Enumeration hit its limit; `partial` holds what was found so far.
    #[error("enumeration limit of {limit} reached")]
    EnumerationLimit {
        limit: usize,
        partial: Vec<VertexMap>,
    },
}

impl Error {
    /// Short machine-readable tag, used by the CLI's error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::UnsupportedUniformity { .. } => "unsupported-uniformity",
            Error::SizeLimit { .. } => "size-limit",
            Error::Budget { .. } => "budget",
            Error::Asymmetric { .. } => "asymmetry",
            Error::SplitMismatch => "split-mismatch",
            Error::Precondition(_) => "precondition",
            Error::Parse { .. } => "parse",
            Error::Overflow(_) => "overflow",
            Error::EnumerationLimit { .. } => "enumeration-limit",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
