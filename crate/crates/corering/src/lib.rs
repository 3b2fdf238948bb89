//! Exact-arithmetic generalized inverses in concrete rings with
//! involution, plus mechanical checkers for a family of forward-order
//! laws of the core inverse and tooling that mines finite carriers for
//! witnesses and counterexamples.
//!
//! The carriers are square matrices over exact rationals, Gaussian
//! rationals, or integers mod n (`dim = 1` gives scalar rings). All
//! arithmetic is exact; every inverse returned has its defining
//! equations re-verified, and every law verdict records the truth value
//! of each hypothesis so bulk scans can account for vacuity.

pub mod annihil;
pub mod carrier;
pub mod error;
pub mod format;
pub mod geninv;
pub mod laws;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod search;

pub use carrier::{CarrierSpec, Involution, RingElement, ScalarDomain};
pub use error::{Error, Result};

/// Enumeration and sampling bounds shared by the scan-based operations.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest finite carrier (element count) that may be enumerated.
    pub enumeration_bound: u64,
    /// Carrier size up to which quantified checks (forall b, c ...) run
    /// exhaustively; larger carriers fall back to seeded sampling.
    pub quantifier_bound: u64,
    /// Sample count used when a quantified check falls back to sampling.
    pub sample_count: u64,
    /// Seed for sampled quantifier checks.
    pub sample_seed: u64,
    /// Witness list cap in mining reports.
    pub witness_cap: usize,
    /// Counterexample list cap in mining reports.
    pub counterexample_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            // 6561 = 9^4 admits every M_2(Z_n) up to n = 9.
            enumeration_bound: 6561,
            quantifier_bound: 4096,
            sample_count: 4096,
            sample_seed: 0x5EED_CAFE,
            witness_cap: 32,
            counterexample_cap: 1024,
        }
    }
}
