use std::fmt;

use thiserror::Error;

/// Which resource ceiling a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    Degree,
    BasisSize,
    Pairs,
    Products,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resource::Degree => "polynomial degree",
            Resource::BasisSize => "basis size",
            Resource::Pairs => "pair count",
            Resource::Products => "product count",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("syntax error at offset {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("exponent exceeds the ring limit of {limit}")]
    ExponentOverflow { limit: u32 },

    #[error("resource limit exceeded: {resource} above {limit}")]
    ResourceLimit { resource: Resource, limit: usize },

    #[error("the system is not autonomous")]
    NonAutonomous,

    #[error("complete integrability is only defined for systems without constraints")]
    ConstraintsPresent,

    #[error("index {index} out of range (expected < {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("chain step {step}: {source}")]
    ChainStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True when the error (or the error it wraps) is a resource ceiling,
    /// including the exponent bound of a ring.
    pub fn is_resource_limit(&self) -> bool {
        match self {
            Error::ResourceLimit { .. } | Error::ExponentOverflow { .. } => true,
            Error::ChainStep { source, .. } => source.is_resource_limit(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
