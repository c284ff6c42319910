use thiserror::Error;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The entries of an exponent vector do not sum to its length.
    #[error("exponent vector of length {len} has degree {degree}, expected {len}")]
    InvalidDegree { len: usize, degree: usize },

    #[error("exponent {value} at position {position} is outside 0..=2")]
    InvalidEntry { position: usize, value: u32 },

    #[error("cannot parse exponent vector: {0}")]
    Parse(String),

    #[error("block profile (m={m}, l={l}, r={r}) has 2m+l+r != i={i}")]
    InvalidProfile { m: u32, l: u32, r: u32, i: u32 },

    #[error("{what} of size {size} exceeds the limit {limit}")]
    ResourceLimit {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("evaluation point repeats the coordinate {0}")]
    DegeneratePoint(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
