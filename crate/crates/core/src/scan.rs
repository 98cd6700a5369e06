//! Grid scanning and refinement over the certification parameter space.
//!
//! The objective (margin as a function of omega) is a sum of cosines; no
//! gradient structure survives, so the search is plain grid evaluation plus
//! window shrinking around the incumbent, mirroring repeated subdivision.
//! Grid points are independent and may evaluate in parallel; reports assemble
//! in grid order, ties break toward smaller omega.

use serde::{Deserialize, Serialize};

use crate::certifier::{certify, ErrorBudgets, Verdict};
use crate::error::{Error, Result};
use crate::remainder::{check_conditions, LehmanParams, Mode};
use crate::zero_table::ZeroTable;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanVerdict {
    Certified,
    Rejected,
    ConditionsFailed { detail: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanEntry {
    pub omega: f64,
    pub h_value: Option<f64>,
    pub total_bound: Option<f64>,
    /// Margin when computable; condition failures leave it absent.
    pub margin: Option<f64>,
    pub verdict: ScanVerdict,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub eta: f64,
    pub alpha: f64,
    pub a_height: f64,
    pub t_height: f64,
    pub mode: Mode,
    pub entries: Vec<ScanEntry>,
    /// Index of the maximal margin (smaller omega wins ties); absent only
    /// when no entry produced a margin.
    pub best: Option<usize>,
}

impl ScanReport {
    pub fn best_entry(&self) -> Option<&ScanEntry> {
        self.best.map(|i| &self.entries[i])
    }

    /// CSV rows `(omega, h, total_bound, margin)` for external plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("omega,h,total_bound,margin\n");
        for e in &self.entries {
            let fmt = |v: Option<f64>| v.map(|x| format!("{x:.17e}")).unwrap_or_default();
            out.push_str(&format!(
                "{:.17e},{},{},{}\n",
                e.omega,
                fmt(e.h_value),
                fmt(e.total_bound),
                fmt(e.margin)
            ));
        }
        out
    }
}

/// Suggested `(alpha, eta, a_height)` with the inequality that produced each.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeuristicParams {
    pub alpha: f64,
    pub eta: f64,
    pub a_height: f64,
    pub t_height: f64,
    pub rationale: Vec<String>,
}

/// Order-of-magnitude parameter selection for a table of `n_zeros` zeros and
/// a target omega.
///
/// alpha: makes the `s5` damping factor comparable to the leading term;
/// A: order `sqrt(alpha omega)` (controls `s6`, keeps `alpha <= A^2`);
/// eta: smallest value with `alpha eta >= 2 A` that also keeps `s4` negligible.
pub fn heuristic_params(n_zeros: u64, omega_hint: f64) -> Result<HeuristicParams> {
    if n_zeros == 0 {
        return Err(Error::Argument("n_zeros must be positive".into()));
    }
    if !(omega_hint > 1.0) {
        return Err(Error::Argument(format!(
            "omega_hint must exceed 1, got {omega_hint}"
        )));
    }
    let mut rationale = Vec::new();

    // Height of the n-th zero from the zero-counting asymptotic
    // N(T) = T/2pi (ln(T/2pi) - 1) + 7/8, inverted by Newton.
    let n = n_zeros as f64;
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut t = two_pi * n / (n.ln().max(1.0));
    for _ in 0..60 {
        let x = t / two_pi;
        let f = x * (x.ln() - 1.0) + 0.875 - n;
        let df = x.ln().max(0.05) / two_pi;
        let step = f / df;
        t = (t - step).max(7.0);
        if step.abs() < 1e-9 * t {
            break;
        }
    }
    rationale.push(format!(
        "T ~ {t:.4e}: height of zero #{n_zeros} from the counting asymptotic"
    ));

    // s5 damping comparable to the leading term: T^2/(2 alpha) ~ ln(omega/2.1111),
    // floored at 5 so the factor never collapses for small omega.
    let leading = 2.1111 / omega_hint;
    let exponent_target = (1.0 / leading).ln().max(5.0);
    let alpha = t * t / (2.0 * exponent_target);
    rationale.push(format!(
        "alpha ~ {alpha:.4e}: sets exp(-T^2/2alpha) = e^-{exponent_target:.3}, the order of the leading term"
    ));

    let a_height = (alpha * omega_hint).sqrt();
    rationale.push(format!(
        "A ~ {a_height:.4e}: order sqrt(alpha*omega), keeping s6 controlled with alpha <= A^2"
    ));

    let eta_chain = 2.0 * a_height / alpha;
    // s4 = 0.08 sqrt(alpha) e^{-alpha eta^2/2} below table-scale: push it three
    // orders under the leading term.
    let s4_target = leading * 1e-3;
    let eta_s4 = (2.0 * (0.08 * alpha.sqrt() / s4_target).ln().max(0.0) / alpha).sqrt();
    let mut eta = eta_chain.max(eta_s4);
    rationale.push(format!(
        "eta ~ {eta:.4e}: max(alpha*eta >= 2A -> {eta_chain:.3e}, s4 control -> {eta_s4:.3e})"
    ));
    if eta > omega_hint / 2.0 {
        eta = omega_hint / 2.0;
        rationale.push(format!(
            "eta clamped to omega/2 = {eta:.4e}; the chain cannot hold at this scale"
        ));
    }

    Ok(HeuristicParams {
        alpha,
        eta,
        a_height,
        t_height: t,
        rationale,
    })
}

#[allow(clippy::too_many_arguments)]
pub fn scan_omega(
    table: &ZeroTable,
    omega_range: (f64, f64),
    step: f64,
    eta: f64,
    alpha: f64,
    a_height: f64,
    budgets: &ErrorBudgets,
    mode: Mode,
) -> Result<ScanReport> {
    let (lo, hi) = omega_range;
    if !(step > 0.0) {
        return Err(Error::Argument(format!("step must be positive, got {step}")));
    }
    if !(hi >= lo) {
        return Err(Error::Argument(format!("empty omega range [{lo}, {hi}]")));
    }
    budgets.validate()?;

    // Truncation height: the whole table, capped at the verified height.
    let t_height = if table.is_empty() {
        a_height.min(100.0)
    } else {
        table.gamma_max().min(a_height)
    };

    let params_at = |omega: f64| -> Result<LehmanParams> {
        LehmanParams::new(omega, eta, alpha, a_height, t_height, mode)
    };
    for endpoint in [lo, hi] {
        let p = params_at(endpoint)?;
        let report = check_conditions(&p);
        if !report.pass {
            return Err(Error::Conditions(report));
        }
    }

    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    let entries: Vec<ScanEntry> = {
        use rayon::prelude::*;
        (0..count)
            .into_par_iter()
            .map(|i| {
                let omega = lo + i as f64 * step;
                let params = match params_at(omega) {
                    Ok(p) => p,
                    Err(e) => {
                        return ScanEntry {
                            omega,
                            h_value: None,
                            total_bound: None,
                            margin: None,
                            verdict: ScanVerdict::ConditionsFailed {
                                detail: e.to_string(),
                            },
                        }
                    }
                };
                match certify(table, &params, budgets) {
                    Ok(Verdict::Certified(c)) => ScanEntry {
                        omega,
                        h_value: Some(c.h.h_value),
                        total_bound: Some(c.breakdown.total_bound),
                        margin: Some(c.margin_delta),
                        verdict: ScanVerdict::Certified,
                    },
                    Ok(Verdict::Rejected(r)) => ScanEntry {
                        omega,
                        h_value: Some(r.h.h_value),
                        total_bound: Some(r.breakdown.total_bound),
                        margin: Some(r.margin_delta),
                        verdict: ScanVerdict::Rejected,
                    },
                    Err(e) => ScanEntry {
                        omega,
                        h_value: None,
                        total_bound: None,
                        margin: None,
                        verdict: ScanVerdict::ConditionsFailed {
                            detail: e.to_string(),
                        },
                    },
                }
            })
            .collect()
    };

    let mut best: Option<usize> = None;
    for (i, e) in entries.iter().enumerate() {
        if let Some(m) = e.margin {
            // strict > keeps the earliest (smallest omega) among ties
            if best.is_none() || m > entries[best.unwrap()].margin.unwrap() {
                best = Some(i);
            }
        }
    }

    Ok(ScanReport {
        lo,
        hi,
        step,
        eta,
        alpha,
        a_height,
        t_height,
        mode,
        entries,
        best,
    })
}

/// Re-scans a window of width `(hi-lo)*shrink` centered on the incumbent with
/// step scaled by the same factor. The incumbent omega lies on the new grid,
/// so the best margin never decreases.
pub fn refine(
    table: &ZeroTable,
    report: &ScanReport,
    shrink: f64,
    budgets: &ErrorBudgets,
    mode: Mode,
) -> Result<ScanReport> {
    if !(shrink > 0.0 && shrink < 1.0) {
        return Err(Error::Argument(format!(
            "shrink must lie in (0,1), got {shrink}"
        )));
    }
    let best = report
        .best
        .ok_or_else(|| Error::Argument("cannot refine a report with no evaluated margins".into()))?;
    let center = report.entries[best].omega;
    let width = (report.hi - report.lo) * shrink;
    if width < 1e-12 {
        return Err(Error::WindowExhausted(width));
    }
    let step = report.step * shrink;
    let half_steps = ((width / 2.0) / step).floor();
    let lo = center - half_steps * step;
    let hi = center + half_steps * step;
    scan_omega(
        table,
        (lo, hi),
        step,
        report.eta,
        report.alpha,
        report.a_height,
        budgets,
        mode,
    )
}
