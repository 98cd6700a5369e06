//! Certified localization of `pi(x) > li(x)` crossover intervals.
//!
//! The toolkit evaluates the truncated explicit-formula sum `H(T, alpha, omega)`
//! over a table of Riemann zero ordinates, bounds every remainder term of the
//! smoothed explicit-formula identity, and combines them into machine-checkable
//! certificates: if the margin
//!
//! ```text
//! delta = H - (1 + s1 + s2 + ... + s6) - zero_accuracy - machine
//! ```
//!
//! is positive, then `pi(x) > li(x)` somewhere in `[exp(omega-eta), exp(omega+eta)]`,
//! with an explicit lower bound on `pi - li` and on the number of consecutive
//! integers keeping the sign. A desk-scale oracle (sieves, logarithmic integral,
//! direct quadrature of the smoothed identity) validates the whole pipeline at
//! heights where `pi(x)` can still be computed exactly.

pub mod arb;
pub mod certifier;
pub mod error;
pub mod explicit_sum;
pub mod oracle;
pub mod remainder;
pub mod report;
pub mod scan;
pub mod sum;
pub mod zero_table;

pub use certifier::{certify, Certificate, ErrorBudgets, LogMagnitude, Rejection, Verdict};
pub use error::Error;
pub use explicit_sum::{evaluate_H, term, SumResult};
pub use remainder::{
    check_conditions, compute_remainder, ConditionReport, LehmanParams, Mode, RemainderBreakdown,
};
pub use zero_table::ZeroTable;

/// Crate version string embedded in reports and certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
