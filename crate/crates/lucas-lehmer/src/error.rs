//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building forms, field data, bounds or
/// solution sets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The index is excluded by the hypotheses (`n <= 4` or `n = 6`).
    #[error("index n = {0} is excluded: forms are only defined for n > 4, n != 6")]
    ExcludedIndex(u32),
    /// The index is valid but outside the catalogue this operation supports.
    #[error("index n = {n} is not supported by {what}")]
    UnsupportedIndex { n: u32, what: &'static str },
    /// A right-hand side that is not admissible for the index.
    #[error("right-hand side {k} is not admissible for n = {n}")]
    InadmissibleRhs { n: u32, k: i64 },
    /// Requested working precision is below the supported floor.
    #[error("precision of {requested} digits is below the floor of {floor} digits")]
    PrecisionTooLow { requested: u32, floor: u32 },
    /// A numerical procedure could not certify its result even after
    /// raising the working precision up to the cap.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    /// A precondition of an operation is violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Lattice vectors are linearly dependent.
    #[error("lattice basis is degenerate (dependent columns)")]
    DependentBasis,
    /// Division by an element that is not a unit of the order.
    #[error("division by a non-unit")]
    NonUnit,
    /// The lattice-lemma hypothesis kept failing after enlarging `c0`.
    #[error("bound reduction failed: {0}")]
    ReductionFailed(String),
    /// An internal consistency check failed; indicates a data or logic bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that signal an unsupported request rather than a
    /// failed internal check.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::ExcludedIndex(_)
                | Error::UnsupportedIndex { .. }
                | Error::InadmissibleRhs { .. }
                | Error::PrecisionTooLow { .. }
                | Error::InvalidInput(_)
        )
    }
}
