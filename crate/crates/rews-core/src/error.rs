use thiserror::Error;

/// Errors produced by state construction, analysis, and reporting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("qubit count {n} out of range (must be 1..={max})")]
    QubitCount { n: u32, max: u32 },

    #[error("sign vector length {actual} does not match 2^{n} = {expected}")]
    LengthMismatch { n: u32, expected: u64, actual: u64 },

    #[error("{what} is limited to n <= {max} (got n = {n}); use random sampling for larger n")]
    AnalysisLimit {
        what: &'static str,
        n: u32,
        max: u32,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid qubit subset {detail}")]
    InvalidSubset { detail: String },

    #[error("invalid qubit permutation: {detail}")]
    InvalidPermutation { detail: String },

    #[error("affine mask {mask:#b} has bits outside the {n} qubit positions")]
    AffineMask { mask: u32, n: u32 },

    #[error("states have different qubit counts ({left} vs {right})")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("k = {k} out of range 1..={limit} for an {n}-qubit state")]
    KOutOfRange { k: u32, limit: u32, n: u32 },

    #[error("structural degree {degree} is not in the {expected} range for n = {n}")]
    DegreeOutOfClass {
        n: u32,
        degree: u64,
        expected: &'static str,
    },

    #[error("unknown verification check id {id:?}")]
    UnknownCheck { id: String },

    #[error("check {id} is not runnable at n = {n}: {detail}")]
    CheckUnsupported {
        id: &'static str,
        n: u32,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
