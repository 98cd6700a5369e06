//! Error types shared across the toolkit.

use crate::remainder::ConditionReport;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input text (zero tables, numeric fields).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally valid input violating a table invariant. `index` is 1-based.
    #[error("validation error at index {index}: {msg}")]
    Validation { index: usize, msg: String },

    /// Binary cache with bad magic, version, or layout.
    #[error("cache format error: {0}")]
    Format(String),

    /// Binary cache failing its checksum or internal consistency checks.
    #[error("cache corruption: {0}")]
    Corruption(String),

    /// An operation precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A plain bad argument (non-positive step, zero bins, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Theorem hypotheses failed; carries the full evaluated report.
    #[error("conditions failed:\n{0}")]
    Conditions(ConditionReport),

    /// The extended-precision recheck disagreed with the fast path.
    #[error("recheck failure: {0}")]
    Recheck(String),

    /// A ground-truth inequality was violated: sieve or formula bug.
    #[error("oracle violation: {0}")]
    OracleViolation(String),

    /// Input outside the supported range (sieve limit, quadrature domain).
    #[error("out of range: {0}")]
    Range(String),

    /// Scan refinement window shrank below a useful width.
    #[error("refinement window exhausted: width {0:e} below 1e-12")]
    WindowExhausted(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
