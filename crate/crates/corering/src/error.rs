use thiserror::Error;

/// Errors for every fallible operation in the crate.
///
/// The variants are grouped by where they arise: element construction and
/// parsing, carrier mismatches, enumeration limits, and inverse
/// nonexistence. Inverse-nonexistence variants carry a human-readable
/// reason so callers can surface *why* (e.g. "index > 1").
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} entries for a {dim}x{dim} element, got {got}")]
    DimensionMismatch {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("scalar not valid in the declared domain: {0}")]
    NonCanonicalScalar(String),
    #[error("modulus must be an integer >= 2 and present exactly for Z_n carriers")]
    ModulusOutOfRange,
    #[error("invalid involution for this carrier: {0}")]
    InvalidInvolution(String),
    #[error("operands belong to different carriers")]
    SpecMismatch,
    #[error("carrier is infinite; this operation needs a finite carrier")]
    InfiniteCarrier,
    #[error("carrier has {size} elements, above the enumeration bound {bound}")]
    CarrierTooLarge { size: u64, bound: u64 },

    #[error("element is not core invertible: {0}")]
    NotCoreInvertible(String),
    #[error("element is not Moore-Penrose invertible")]
    NotMpInvertible,
    #[error("element has no {{1,3}}-inverse")]
    NoOneThreeInverse,
    #[error("element is not group invertible (Drazin index {0})")]
    NotGroupInvertible(u32),
    #[error("element is not Drazin invertible")]
    NotDrazinInvertible,
    #[error("element is not weighted-core invertible: {0}")]
    NotWeightedCoreInvertible(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
