//! Machine-readable report assembly for the CLI.
//!
//! One schema for certify/recheck outcomes:
//! `{"h": .., "terms": {"s1p": {"log10": .., "value": ..}, ..}, "margin": ..,
//!   "interval": [u_lo, u_hi], "pi_li_lower_bound_log10": ..,
//!   "run_length_log10": .., "conditions": [..], "fingerprint": ..}`
//! plus the full input echo (params, budgets, version). Quantities that can
//! underflow f64 appear only as log10 (`value` is null).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::certifier::{ErrorBudgets, RecheckReport, Verdict};
use crate::remainder::{check_conditions, ConditionCheck, LehmanParams, RemainderBreakdown, TermRecord};
use crate::zero_table::TableFingerprint;

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub verdict: String,
    pub version: String,
    pub h: f64,
    pub terms: BTreeMap<String, TermRecord>,
    pub total_bound: f64,
    pub margin: f64,
    pub interval: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pi_li_lower_bound_log10: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run_length_log10: Option<f64>,
    pub conditions: Vec<ConditionCheck>,
    pub fingerprint: TableFingerprint,
    pub params: LehmanParams,
    pub budgets: ErrorBudgets,
    pub zero_accuracy_bound: f64,
    pub terms_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recheck: Option<RecheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

fn term_map(breakdown: &RemainderBreakdown) -> BTreeMap<String, TermRecord> {
    breakdown
        .terms()
        .into_iter()
        .map(|(name, record)| (name.to_string(), record))
        .collect()
}

pub fn timestamp() -> Option<u64> {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs())
}

impl CertifyReport {
    pub fn from_verdict(verdict: &Verdict, deterministic: bool) -> Self {
        let generated_at_unix = if deterministic { None } else { timestamp() };
        match verdict {
            Verdict::Certified(c) => CertifyReport {
                verdict: "certified".into(),
                version: crate::VERSION.into(),
                h: c.h.h_value,
                terms: term_map(&c.breakdown),
                total_bound: c.breakdown.total_bound,
                margin: c.margin_delta,
                interval: [c.u_lo, c.u_hi],
                pi_li_lower_bound_log10: Some(c.pi_li_lower_bound.log10),
                run_length_log10: Some(c.run_length.log10),
                conditions: check_conditions(&c.params).checks,
                fingerprint: c.fingerprint,
                params: c.params,
                budgets: c.budgets,
                zero_accuracy_bound: c.h.zero_accuracy_bound,
                terms_used: c.h.terms_used,
                recheck: c.recheck.clone(),
                generated_at_unix,
            },
            Verdict::Rejected(r) => CertifyReport {
                verdict: "rejected".into(),
                version: crate::VERSION.into(),
                h: r.h.h_value,
                terms: term_map(&r.breakdown),
                total_bound: r.breakdown.total_bound,
                margin: r.margin_delta,
                interval: [r.params.omega - r.params.eta, r.params.omega + r.params.eta],
                pi_li_lower_bound_log10: None,
                run_length_log10: None,
                conditions: check_conditions(&r.params).checks,
                fingerprint: r.fingerprint,
                params: r.params,
                budgets: r.budgets,
                zero_accuracy_bound: r.h.zero_accuracy_bound,
                terms_used: r.h.terms_used,
                recheck: None,
                generated_at_unix,
            },
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("verdict:  {}\n", self.verdict));
        out.push_str(&format!("H:        {:.12}\n", self.h));
        for (name, t) in &self.terms {
            match t.value {
                Some(v) => out.push_str(&format!("{name:>6}:   {v:.6e} (log10 {:.4})\n", t.log10)),
                None => out.push_str(&format!("{name:>6}:   underflow (log10 {:.4})\n", t.log10)),
            }
        }
        out.push_str(&format!("total:    {:.6e}\n", self.total_bound));
        out.push_str(&format!("margin:   {:.6e}\n", self.margin));
        out.push_str(&format!(
            "interval: [{:.9}, {:.9}]\n",
            self.interval[0], self.interval[1]
        ));
        if let Some(lb) = self.pi_li_lower_bound_log10 {
            out.push_str(&format!("pi-li lower bound: 10^{lb:.4}\n"));
        }
        if let Some(rl) = self.run_length_log10 {
            out.push_str(&format!("run length:        10^{rl:.4}\n"));
        }
        out.push_str(&format!(
            "fingerprint: crc32 {:#010x}, n {}\n",
            self.fingerprint.crc32, self.fingerprint.n
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::certify;
    use crate::remainder::Mode;
    use crate::zero_table::ZeroTable;

    #[test]
    fn schema_keys_present_and_underflow_is_null() {
        let table = ZeroTable::from_gammas(vec![14.134725142, 21.022039639], 1e-9).unwrap();
        let params = LehmanParams::new(
            727.952018,
            0.00016,
            1.34e11,
            1.022e7,
            1131944.47182487,
            Mode::Refined,
        )
        .unwrap();
        let budgets = ErrorBudgets::new(3e-5, 1e-6).unwrap();
        let verdict = certify(&table, &params, &budgets).unwrap();
        let report = CertifyReport::from_verdict(&verdict, true);
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        for key in [
            "h",
            "terms",
            "margin",
            "interval",
            "conditions",
            "fingerprint",
            "params",
            "budgets",
            "version",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        // s3 underflows at these parameters: log10 present, value null
        let s3 = &json["terms"]["s3"];
        assert!(s3["log10"].as_f64().unwrap() < -700.0);
        assert!(s3["value"].is_null());
        assert!(json.get("generated_at_unix").is_none());
    }

    #[test]
    fn deterministic_reports_are_byte_identical() {
        let table = ZeroTable::from_gammas(vec![14.134725142], 1e-9).unwrap();
        let params = LehmanParams::new(
            727.952018,
            0.00016,
            1.34e11,
            1.022e7,
            1131944.47182487,
            Mode::Refined,
        )
        .unwrap();
        let budgets = ErrorBudgets::new(3e-5, 1e-6).unwrap();
        let render = || {
            let verdict = certify(&table, &params, &budgets).unwrap();
            serde_json::to_string(&CertifyReport::from_verdict(&verdict, true)).unwrap()
        };
        assert_eq!(render(), render());
    }
}
