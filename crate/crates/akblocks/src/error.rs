//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors reported by the combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A numeric parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Two objects with incompatible ranks or levels were combined.
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    /// A charge lies outside the region an operation requires.
    #[error("charge {0:?} is not in the required domain")]
    ChargeOutsideDomain(Vec<i64>),
    /// An operation restricted to core blocks received a non-core block.
    #[error("block is not a core block (moving vector {0:?})")]
    NotCoreBlock(Vec<usize>),
    /// An enumeration or basis computation exceeded its configured budget.
    #[error("budget of {budget} exceeded while {context}")]
    BudgetExceeded { budget: usize, context: String },
    /// A β-set or tableau does not have the shape an operation requires.
    #[error("shape precondition failed: {0}")]
    Shape(String),
    /// A hypothesis of a reduction cannot be met for the given block.
    #[error("not applicable: {0}")]
    NotApplicable(String),
    /// Intermediate values left the 64-bit range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// An internal consistency check failed.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, Error>;
