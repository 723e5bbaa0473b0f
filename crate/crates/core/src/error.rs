use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("malformed coweight: {0}")]
    MalformedCoweight(String),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("invalid parahoric type: {0}")]
    InvalidParahoric(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("{what} = {value} out of range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },

    #[error("element {0} is not admissible")]
    NotAdmissible(String),

    #[error("multiplicities are only computed at Iwahori level")]
    NotIwahori,

    #[error("coefficient representation is not pure of weight {expected} (central weight {found})")]
    NotPure { expected: i64, found: i64 },

    #[error("gamma0 is not a symplectic similitude: {0}")]
    InvalidGamma0(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
