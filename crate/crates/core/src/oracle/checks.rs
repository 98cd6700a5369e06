//! Ground-truth checks against the sieve: the weighted prime count `J(x)`,
//! classical `pi(x)` inequality sweeps, and the end-to-end identity gap
//! between the direct integral and the zero-sum route.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explicit_sum::{evaluate_H, zero_accuracy_bound, SumResult};
use crate::oracle::integrals::{direct_i, DirectIResult};
use crate::oracle::sieve::SievePi;
use crate::remainder::{check_conditions, compute_remainder, LehmanParams, Mode};
use crate::zero_table::ZeroTable;

/// Exact `floor(x^{1/k})` for integer `x`, immune to `powf` rounding.
fn integer_kth_root(x: u64, k: u32) -> u64 {
    if k == 1 {
        return x;
    }
    let mut n = (x as f64).powf(1.0 / k as f64).floor() as u64;
    let pow = |b: u64| -> u128 { (0..k).try_fold(1u128, |a, _| a.checked_mul(b as u128)).unwrap_or(u128::MAX) };
    while pow(n + 1) <= x as u128 {
        n += 1;
    }
    while n > 0 && pow(n) > x as u128 {
        n -= 1;
    }
    n
}

/// `J(x) = sum_{k >= 1, x^{1/k} >= 2} (1/k) pi(x^{1/k})`; at most
/// `log2(x)` terms survive.
pub fn j_of_x(pi: &SievePi, x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Argument(format!("J(x) requires x >= 2, got {x}")));
    }
    if x > pi.limit() as f64 {
        return Err(Error::Range(format!(
            "J({x}) exceeds sieve limit {}",
            pi.limit()
        )));
    }
    let m = x.floor() as u64;
    let mut total = 0.0;
    for k in 1u32.. {
        let root = integer_kth_root(m, k);
        if root < 2 {
            break;
        }
        total += pi.query_u64(root) as f64 / k as f64;
    }
    Ok(total)
}

/// Result of an exhaustive inequality sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub x_lo: u64,
    pub x_hi: u64,
    pub checked: u64,
    /// Smallest `rhs - pi(x)` slack observed and where.
    pub min_slack: f64,
    pub argmin: u64,
}

/// Verifies `pi(x) < x / (ln x - 1 - (ln x)^{-1/2})` at every integer in
/// `[x_lo, x_hi]` (valid from 6 up). A violation is a hard failure: it
/// signals a sieve or formula bug.
pub fn panaitopol_check(pi: &SievePi, x_lo: u64, x_hi: u64) -> Result<SweepReport> {
    if x_lo < 6 || x_lo > x_hi {
        return Err(Error::Argument(format!(
            "sweep range must satisfy 6 <= x_lo <= x_hi, got [{x_lo}, {x_hi}]"
        )));
    }
    if x_hi > pi.limit() {
        return Err(Error::Range(format!(
            "sweep end {x_hi} exceeds sieve limit {}",
            pi.limit()
        )));
    }
    let mut count = pi.query_u64(x_lo - 1);
    let mut min_slack = f64::INFINITY;
    let mut argmin = x_lo;
    for n in x_lo..=x_hi {
        if pi.is_prime(n) {
            count += 1;
        }
        let ln = (n as f64).ln();
        let bound = n as f64 / (ln - 1.0 - 1.0 / ln.sqrt());
        let slack = bound - count as f64;
        if !(slack > 0.0) {
            return Err(Error::OracleViolation(format!(
                "pi({n}) = {count} >= {bound} (Panaitopol)"
            )));
        }
        if slack < min_slack {
            min_slack = slack;
            argmin = n;
        }
    }
    Ok(SweepReport {
        x_lo,
        x_hi,
        checked: x_hi - x_lo + 1,
        min_slack,
        argmin,
    })
}

/// Verifies the two classical bounds
/// `|pi(x) - x/ln x| < (3/2) x / ln^2 x` and `pi(x) < 0.62753 * 2x / ln x`
/// at every integer in `[max(x_lo, 17), x_hi]`.
pub fn rs_bound_check(pi: &SievePi, x_lo: u64, x_hi: u64) -> Result<SweepReport> {
    let x_lo = x_lo.max(17);
    if x_lo > x_hi {
        return Err(Error::Argument(format!(
            "sweep range empty after clamping to 17: [{x_lo}, {x_hi}]"
        )));
    }
    if x_hi > pi.limit() {
        return Err(Error::Range(format!(
            "sweep end {x_hi} exceeds sieve limit {}",
            pi.limit()
        )));
    }
    let mut count = pi.query_u64(x_lo - 1);
    let mut min_slack = f64::INFINITY;
    let mut argmin = x_lo;
    for n in x_lo..=x_hi {
        if pi.is_prime(n) {
            count += 1;
        }
        let x = n as f64;
        let ln = x.ln();
        let theta1_bound = 1.5 * x / (ln * ln);
        let dev = (count as f64 - x / ln).abs();
        if !(dev < theta1_bound) {
            return Err(Error::OracleViolation(format!(
                "|pi({n}) - x/ln x| = {dev} >= {theta1_bound} (theta1 form)"
            )));
        }
        let theta2_bound = 0.62753 * 2.0 * x / ln;
        if !((count as f64) < theta2_bound) {
            return Err(Error::OracleViolation(format!(
                "pi({n}) = {count} >= {theta2_bound} (theta2 form)"
            )));
        }
        let slack = (theta1_bound - dev).min(theta2_bound - count as f64);
        if slack < min_slack {
            min_slack = slack;
            argmin = n;
        }
    }
    Ok(SweepReport {
        x_lo,
        x_hi,
        checked: x_hi - x_lo + 1,
        min_slack,
        argmin,
    })
}

/// End-to-end identity check at desk scale:
/// `|I_direct - (-1 + H)| <= remainder total + zero accuracy + quadrature error`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapReport {
    pub direct: DirectIResult,
    pub h: SumResult,
    pub remainder_total: f64,
    pub zero_accuracy: f64,
    pub gap: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Computes the gap between the quadrature route and the zero-sum route.
/// Original mode only (the refined leading term needs `omega - eta > 727`,
/// far beyond any sieve).
pub fn identity_gap(table: &ZeroTable, pi: &SievePi, params: &LehmanParams) -> Result<GapReport> {
    if params.mode != Mode::Original {
        return Err(Error::Precondition(
            "identity gap runs in original mode".into(),
        ));
    }
    let report = check_conditions(params);
    if !report.pass {
        return Err(Error::Conditions(report));
    }
    if params.t_height > table.gamma_max() {
        return Err(Error::Precondition(format!(
            "truncation height {} exceeds the table's top zero {}",
            params.t_height,
            table.gamma_max()
        )));
    }

    let breakdown = compute_remainder(params)?;
    let h = evaluate_H(table, params.alpha, params.omega, params.t_height)?;
    let zero_accuracy = zero_accuracy_bound(table, params.alpha, params.omega)?;
    let direct = direct_i(pi, params.omega, params.eta, params.alpha, 64)?;

    let gap = (direct.value - (-1.0 + h.h_value)).abs();
    let bound = breakdown.total_bound + zero_accuracy + direct.error_estimate;
    Ok(GapReport {
        pass: gap <= bound,
        gap,
        bound,
        remainder_total: breakdown.total_bound,
        zero_accuracy,
        direct,
        h,
    })
}
