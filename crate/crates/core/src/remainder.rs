//! Remainder terms of the smoothed explicit-formula identity.
//!
//! For parameters `(omega, eta, alpha, A, T)` satisfying the hypotheses
//! checked by [`check_conditions`], the identity
//! `I(omega,eta) = -1 + H(T,alpha,omega) + R` holds with
//! `|R| <= s1 + s2 + s3 + s4 + s5 + s6`. The refined variant replaces the
//! leading constant 3.05 by 2.1111 when `omega - eta > 727`; under RH the
//! parameter chain and `s6` drop ("rh" mode).
//!
//! Terms like `s3 ~ 10^-746` underflow f64, so every term is computed in log
//! space first ("log" in the formulas is the natural logarithm); linear values
//! are attached only when representable.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Leading-term constant of the original estimate.
pub const LEADING_ORIGINAL: f64 = 3.05;
/// Refined leading-term constant, valid for `omega - eta > 727`.
pub const LEADING_REFINED: f64 = 2.1111;

/// Linear values below this log10 magnitude are reported as underflowed.
const UNDERFLOW_LOG10: f64 = -300.0;
/// Directed upper bound standing in for an underflowed term in totals.
const UNDERFLOW_CAP: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Original,
    Refined,
    Rh,
}

impl Mode {
    pub fn leading_constant(self) -> f64 {
        match self {
            Mode::Original => LEADING_ORIGINAL,
            Mode::Refined | Mode::Rh => LEADING_REFINED,
        }
    }

    /// Lower bound the mode imposes on `omega - eta`.
    pub fn omega_eta_floor(self) -> f64 {
        match self {
            Mode::Original => 1.0,
            Mode::Refined | Mode::Rh => 727.0,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Original => write!(f, "original"),
            Mode::Refined => write!(f, "refined"),
            Mode::Rh => write!(f, "rh"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Mode::Original),
            "refined" => Ok(Mode::Refined),
            "rh" => Ok(Mode::Rh),
            other => Err(Error::Argument(format!(
                "unknown mode {other:?} (expected original|refined|rh)"
            ))),
        }
    }
}

/// Parameter block for one certification attempt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LehmanParams {
    /// Center of the log-interval.
    pub omega: f64,
    /// Half-width of the log-interval.
    pub eta: f64,
    /// Gaussian kernel concentration.
    pub alpha: f64,
    /// Height below which all zeros are verified on the critical line.
    pub a_height: f64,
    /// Truncation height of the zero sum.
    pub t_height: f64,
    pub mode: Mode,
}

impl LehmanParams {
    pub fn new(
        omega: f64,
        eta: f64,
        alpha: f64,
        a_height: f64,
        t_height: f64,
        mode: Mode,
    ) -> Result<Self> {
        let p = Self {
            omega,
            eta,
            alpha,
            a_height,
            t_height,
            mode,
        };
        p.validate_positive()?;
        Ok(p)
    }

    pub fn validate_positive(&self) -> Result<()> {
        for (name, v) in [
            ("omega", self.omega),
            ("eta", self.eta),
            ("alpha", self.alpha),
            ("A", self.a_height),
            ("T", self.t_height),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Argument(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// One evaluated hypothesis, both sides included.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub lhs: f64,
    pub relation: String,
    pub rhs: f64,
    pub pass: bool,
    /// Required for the mode; advisory checks never fail the report.
    pub required: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub mode: Mode,
    pub checks: Vec<ConditionCheck>,
    pub pass: bool,
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {:e} {} {:e}{}",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.lhs,
                c.relation,
                c.rhs,
                if c.required { "" } else { " (advisory)" }
            )?;
        }
        write!(f, "  overall: {}", if self.pass { "pass" } else { "fail" })
    }
}

/// Evaluates every theorem hypothesis for the mode, reporting both sides.
/// Failures are data, not errors.
pub fn check_conditions(params: &LehmanParams) -> ConditionReport {
    let LehmanParams {
        omega,
        eta,
        alpha,
        a_height: a,
        t_height: t,
        mode,
    } = *params;

    let chain_required = mode != Mode::Rh;
    let floor = mode.omega_eta_floor();
    let mut checks = Vec::new();
    let mut push = |name: &str, lhs: f64, relation: &str, rhs: f64, required: bool| {
        let pass = match relation {
            "<" => lhs < rhs,
            "<=" => lhs <= rhs,
            ">" => lhs > rhs,
            other => unreachable!("relation {other}"),
        };
        checks.push(ConditionCheck {
            name: name.into(),
            lhs,
            relation: relation.into(),
            rhs,
            pass,
            required,
        });
    };

    push("omega_minus_eta_floor", omega - eta, ">", floor, true);
    push("two_over_a_le_2a_over_alpha", 2.0 / a, "<=", 2.0 * a / alpha, chain_required);
    // Kept visible in rh mode as an advisory check on eta.
    push("2a_over_alpha_le_eta", 2.0 * a / alpha, "<=", eta, chain_required);
    push("eta_le_half_omega", eta, "<=", omega / 2.0, chain_required);
    push("t_above_2_pi_e", 2.0 * PI * std::f64::consts::E, "<", t, true);
    push("t_le_a", t, "<=", a, chain_required);

    let pass = checks.iter().all(|c| c.pass || !c.required);
    ConditionReport {
        mode,
        checks,
        pass,
    }
}

/// One remainder term: log10 magnitude always, linear value when representable.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TermRecord {
    pub log10: f64,
    /// `None` marks underflow (log10 below -300).
    pub value: Option<f64>,
}

impl TermRecord {
    fn from_ln(ln_value: f64) -> Self {
        let log10 = ln_value / std::f64::consts::LN_10;
        let value = (log10 > UNDERFLOW_LOG10).then(|| 10f64.powf(log10));
        TermRecord { log10, value }
    }

    /// Contribution to totals: linear value, or the directed round-up for
    /// underflowed terms.
    pub fn bound_contribution(&self) -> f64 {
        self.value.unwrap_or(UNDERFLOW_CAP)
    }
}

/// All remainder terms for one parameter block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RemainderBreakdown {
    pub mode: Mode,
    /// `s1` (original) or `s1'` (refined/rh).
    pub leading: TermRecord,
    pub s2: TermRecord,
    pub s3: TermRecord,
    pub s4: TermRecord,
    pub s5: TermRecord,
    /// Omitted under RH.
    pub s6: Option<TermRecord>,
    /// Sum of linear values, underflowed terms rounded up.
    pub total_bound: f64,
}

impl RemainderBreakdown {
    pub fn terms(&self) -> Vec<(&'static str, TermRecord)> {
        let leading_name = match self.mode {
            Mode::Original => "s1",
            Mode::Refined | Mode::Rh => "s1p",
        };
        let mut v = vec![
            (leading_name, self.leading),
            ("s2", self.s2),
            ("s3", self.s3),
            ("s4", self.s4),
            ("s5", self.s5),
        ];
        if let Some(s6) = self.s6 {
            v.push(("s6", s6));
        }
        v
    }
}

/// Leading term `c/(omega - eta)` with the mode's constant and domain check.
pub fn leading_term(omega: f64, eta: f64, mode: Mode) -> Result<f64> {
    let floor = mode.omega_eta_floor();
    let span = omega - eta;
    if !(span > floor) {
        return Err(Error::Precondition(format!(
            "{mode} leading term requires omega - eta > {floor}, got {span}"
        )));
    }
    Ok(mode.leading_constant() / span)
}

/// Natural-log magnitudes of each term, assembled into a breakdown.
/// Fails (carrying the evaluated report) when the mode's hypotheses fail.
pub fn compute_remainder(params: &LehmanParams) -> Result<RemainderBreakdown> {
    params.validate_positive()?;
    let report = check_conditions(params);
    if !report.pass {
        return Err(Error::Conditions(report));
    }

    let LehmanParams {
        omega,
        eta,
        alpha,
        a_height: a,
        t_height: t,
        mode,
    } = *params;

    let leading = TermRecord::from_ln(mode.leading_constant().ln() - (omega - eta).ln());

    // s2 = 4 (omega+eta) e^{-(omega-eta)/6}
    let s2 = TermRecord::from_ln((4.0 * (omega + eta)).ln() - (omega - eta) / 6.0);

    // s3 = 2 e^{-alpha eta^2/2} / (sqrt(2 pi alpha) eta)
    let gauss_exponent = -alpha * eta * eta / 2.0;
    let s3 = TermRecord::from_ln(2f64.ln() - 0.5 * (2.0 * PI * alpha).ln() - eta.ln() + gauss_exponent);

    // s4 = 0.08 sqrt(alpha) e^{-alpha eta^2/2}
    let s4 = TermRecord::from_ln(0.08f64.ln() + 0.5 * alpha.ln() + gauss_exponent);

    // s5 = e^{-T^2/2alpha} { alpha/(pi T^2) log(T/2pi) + 8 log T / T + 4 alpha / T^3 }
    let brace = alpha / (PI * t * t) * (t / (2.0 * PI)).ln() + 8.0 * t.ln() / t
        + 4.0 * alpha / (t * t * t);
    let s5 = TermRecord::from_ln(-t * t / (2.0 * alpha) + brace.ln());

    // s6 = A log A e^{-A^2/2alpha + (omega+eta)/2} { 4 alpha^{-1/2} + 15 eta }
    let s6 = (mode != Mode::Rh).then(|| {
        TermRecord::from_ln(
            (a * a.ln()).ln() - a * a / (2.0 * alpha)
                + (omega + eta) / 2.0
                + (4.0 / alpha.sqrt() + 15.0 * eta).ln(),
        )
    });

    let mut total = crate::sum::Neumaier::new();
    for term in [Some(leading), Some(s2), Some(s3), Some(s4), Some(s5), s6]
        .into_iter()
        .flatten()
    {
        total.add(term.bound_contribution());
    }

    Ok(RemainderBreakdown {
        mode,
        leading,
        s2,
        s3,
        s4,
        s5,
        s6,
        total_bound: total.value(),
    })
}

/// `F(y) = (y^3 + y^2)/(y^3 - y - 1)`, defined above the real root of the
/// denominator (~1.3247).
pub fn f_of_y(y: f64) -> Result<f64> {
    let den = y * y * y - y - 1.0;
    if !(den > 0.0) {
        return Err(Error::Argument(format!(
            "F(y) requires y above the real root of y^3 - y - 1 (~1.3247), got {y}"
        )));
    }
    Ok((y * y * y + y * y) / den)
}

/// Refined leading-term constant `2 F(sqrt(u_min/2))`; below 2.1111 at 727.
pub fn theta1_coefficient(u_min: f64) -> Result<f64> {
    if !(u_min >= 727.0) {
        return Err(Error::Argument(format!(
            "theta1 coefficient requires u_min >= 727, got {u_min}"
        )));
    }
    f_of_y((u_min / 2.0).sqrt()).map(|f| 2.0 * f)
}

/// Parameters from the refined-mode reproduction run, used across tests.
#[cfg(test)]
pub(crate) fn paper_params() -> LehmanParams {
    LehmanParams::new(
        727.952018,
        0.00016,
        1.34e11,
        1.022e7,
        1131944.47182487,
        Mode::Refined,
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions_pass_at_reference_params() {
        let report = check_conditions(&paper_params());
        assert!(report.pass, "{report}");
        let by_name = |n: &str| {
            report
                .checks
                .iter()
                .find(|c| c.name == n)
                .unwrap_or_else(|| panic!("missing check {n}"))
        };
        let c = by_name("two_over_a_le_2a_over_alpha");
        assert!((c.lhs - 1.9569e-7).abs() / 1.9569e-7 < 1e-3);
        assert!((c.rhs - 1.5254e-4).abs() / 1.5254e-4 < 1e-3);
        let c = by_name("2a_over_alpha_le_eta");
        assert!((c.rhs - 1.6e-4).abs() < 1e-9);
        let c = by_name("eta_le_half_omega");
        assert!((c.rhs - 363.976009).abs() < 1e-6);
        let c = by_name("t_above_2_pi_e");
        assert!((c.lhs - 17.0795).abs() < 1e-4);
    }

    #[test]
    fn eta_equal_omega_fails_chain() {
        let mut p = paper_params();
        p.eta = p.omega;
        let report = check_conditions(&p);
        assert!(!report.pass);
        let c = report
            .checks
            .iter()
            .find(|c| c.name == "eta_le_half_omega")
            .unwrap();
        assert!(!c.pass);
    }

    #[test]
    fn rh_mode_waives_the_chain() {
        // Arbitrary alpha/A violating the chain; rh only needs the floor and T.
        let p = LehmanParams::new(728.0, 0.5, 10.0, 1.0, 100.0, Mode::Rh).unwrap();
        let report = check_conditions(&p);
        assert!(report.pass, "{report}");
        // The eta check is still visible, as advisory.
        let c = report
            .checks
            .iter()
            .find(|c| c.name == "2a_over_alpha_le_eta")
            .unwrap();
        assert!(!c.required);
    }

    #[test]
    fn leading_term_values() {
        // refined at the reference parameters
        let v = leading_term(727.952018, 0.00016, Mode::Refined).unwrap();
        assert!((v - 2.1111 / 727.951858).abs() < 1e-15);
        assert!(v < 0.002901);
        // original at the earlier published selection
        let v = leading_term(727.95209, 0.002, Mode::Original).unwrap();
        assert!((v - 3.05 / 727.95009).abs() < 1e-15);
        assert!((v - 0.00418985).abs() < 1e-8);
        // refined domain violation
        let err = leading_term(500.0, 0.1, Mode::Refined).unwrap_err();
        assert!(err.to_string().contains("727"), "{err}");
    }

    #[test]
    fn remainder_at_reference_params() {
        let b = compute_remainder(&paper_params()).unwrap();
        assert!(b.leading.value.unwrap() < 0.002901);
        assert!(b.s2.log10 < -49.0);
        assert!(b.s3.log10 < -746.0);
        assert!(b.s3.value.is_none());
        assert!(b.s4.log10 < -740.0);
        assert!(b.s4.value.is_none());
        assert!(b.s5.value.unwrap() < 0.003380);
        assert!(b.s6.unwrap().log10 < -5.0);
        // s5's exponential factor: T^2/(2 alpha) ~ 4.781, e^{-..} ~ 8.39e-3
        let p = paper_params();
        let factor = (-p.t_height * p.t_height / (2.0 * p.alpha)).exp();
        assert!((factor - 8.38791114957e-3).abs() < 1e-12, "factor {factor}");
        // total dominated by leading + s5
        assert!(b.total_bound > 0.00628 && b.total_bound < 0.00630);
        for (_, t) in b.terms() {
            assert!(b.total_bound >= t.bound_contribution());
        }
    }

    #[test]
    fn s3_s4_log_magnitudes_decrease_in_eta() {
        let mut prev_s3 = f64::INFINITY;
        let mut prev_s4 = f64::INFINITY;
        for k in 0..20 {
            let mut p = paper_params();
            p.eta = 0.00016 * (1.0 + k as f64 * 0.5);
            if !check_conditions(&p).pass {
                continue;
            }
            let b = compute_remainder(&p).unwrap();
            assert!(b.s3.log10 < prev_s3);
            assert!(b.s4.log10 < prev_s4);
            prev_s3 = b.s3.log10;
            prev_s4 = b.s4.log10;
        }
    }

    #[test]
    fn s6_log_magnitude_monotone_over_a_sweep() {
        // A in [1.0e7, 1.1e7] at the reference alpha/omega/eta: A^2/(2 alpha)
        // grows faster than log(A log A), so s6 decreases.
        let mut prev = f64::INFINITY;
        for k in 0..=20 {
            let mut p = paper_params();
            p.a_height = 1.0e7 + k as f64 * 5e4;
            if !check_conditions(&p).pass {
                continue;
            }
            let b = compute_remainder(&p).unwrap();
            let s6 = b.s6.unwrap().log10;
            assert!(s6 < prev, "A={} s6={} prev={}", p.a_height, s6, prev);
            prev = s6;
        }
    }

    #[test]
    fn log_linear_consistency() {
        // Direct linear evaluation agrees with 10^log10 whenever representable.
        let p = paper_params();
        let b = compute_remainder(&p).unwrap();
        let direct_leading = 2.1111 / (p.omega - p.eta);
        assert!((direct_leading - 10f64.powf(b.leading.log10)).abs() / direct_leading < 1e-10);
        let direct_s2 = 4.0 * (p.omega + p.eta) * (-(p.omega - p.eta) / 6.0).exp();
        assert!((direct_s2 - 10f64.powf(b.s2.log10)).abs() / direct_s2 < 1e-10);
        let t = p.t_height;
        let direct_s5 = (-t * t / (2.0 * p.alpha)).exp()
            * (p.alpha / (PI * t * t) * (t / (2.0 * PI)).ln() + 8.0 * t.ln() / t
                + 4.0 * p.alpha / (t * t * t));
        assert!((direct_s5 - 10f64.powf(b.s5.log10)).abs() / direct_s5 < 1e-10);
        let direct_s6 = p.a_height
            * p.a_height.ln()
            * (-p.a_height * p.a_height / (2.0 * p.alpha) + (p.omega + p.eta) / 2.0).exp()
            * (4.0 / p.alpha.sqrt() + 15.0 * p.eta);
        assert!(
            (direct_s6 - 10f64.powf(b.s6.unwrap().log10)).abs() / direct_s6 < 1e-10
        );
    }

    #[test]
    fn rh_total_is_refined_total_minus_s6() {
        let mut p = paper_params();
        let refined = compute_remainder(&p).unwrap();
        p.mode = Mode::Rh;
        let rh = compute_remainder(&p).unwrap();
        assert!(rh.s6.is_none());
        let s6 = refined.s6.unwrap().bound_contribution();
        assert!((refined.total_bound - s6 - rh.total_bound).abs() < 1e-18);
    }

    #[test]
    fn refined_leading_below_original() {
        let mut p = paper_params();
        let refined = compute_remainder(&p).unwrap();
        p.mode = Mode::Original;
        let original = compute_remainder(&p).unwrap();
        assert!(refined.leading.value.unwrap() < original.leading.value.unwrap());
        assert!(refined.total_bound < original.total_bound);
    }

    #[test]
    fn f_of_y_values_and_monotonicity() {
        assert_eq!(f_of_y(2.0).unwrap(), 2.4);
        assert!(f_of_y(1.3).is_err());
        let mut prev = f64::INFINITY;
        let mut y = 1.5;
        while y <= 100.0 {
            let f = f_of_y(y).unwrap();
            assert!(f < prev && f > 1.0, "F({y}) = {f}");
            prev = f;
            y *= 1.17;
        }
    }

    #[test]
    fn theta1_coefficient_below_refined_constant() {
        let c = theta1_coefficient(727.0).unwrap();
        assert!(c < 2.1111, "coefficient {c}");
        assert!((c - 2.11105).abs() < 1e-4);
        assert!(theta1_coefficient(500.0).is_err());
    }

    #[test]
    fn failed_conditions_carry_report() {
        let mut p = paper_params();
        p.eta = 400.0; // violates eta <= omega/2 and the floor
        match compute_remainder(&p) {
            Err(Error::Conditions(report)) => assert!(!report.pass),
            other => panic!("expected condition error, got {other:?}"),
        }
    }
}
