//! The truncated explicit-formula sum `H(T, alpha, omega)` and its accuracy
//! bounds.
//!
//! `H = -sum over 0 < gamma <= T of t(gamma, alpha, omega)` with
//!
//! ```text
//! t = exp(-gamma^2/(2 alpha)) * (cos(omega gamma) + 2 gamma sin(omega gamma)) / (1/4 + gamma^2)
//! ```
//!
//! The phase `omega * gamma` reaches ~8e8 radians, so the product is formed
//! with an exact double-double split and the trig values corrected to first
//! order in the rounding residual; the remaining machine error is covered by
//! the certifier's machine budget and revalidated by the extended-precision
//! recheck.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::{chunked_map_sum, compensated_sum};
use crate::zero_table::ZeroTable;

/// Exact product: returns `(fl(a*b), err)` with `a*b = fl(a*b) + err`.
/// Veltkamp-Dekker split; valid away from overflow (arguments < ~1e150).
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    const SPLIT: f64 = 134_217_729.0; // 2^27 + 1
    let p = a * b;
    let t = SPLIT * a;
    let ah = t - (t - a);
    let al = a - ah;
    let t = SPLIT * b;
    let bh = t - (t - b);
    let bl = b - bh;
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

/// One summand of the explicit-formula sum.
///
/// `|t| <= exp(-gamma^2/(2 alpha)) * (1 + 2 gamma)/(1/4 + gamma^2)`.
#[inline]
pub fn term(gamma: f64, alpha: f64, omega: f64) -> f64 {
    debug_assert!(gamma > 0.0 && alpha > 0.0 && omega >= 0.0);
    let (phi, phi_lo) = two_prod(omega, gamma);
    let (s, c) = (phi.sin(), phi.cos());
    // sin/cos of the exact phase phi + phi_lo, to first order in phi_lo
    let sin_phi = s + phi_lo * c;
    let cos_phi = c - phi_lo * s;
    let g2 = gamma * gamma;
    let damp = (-g2 / (2.0 * alpha)).exp();
    damp * (cos_phi + 2.0 * gamma * sin_phi) / (0.25 + g2)
}

/// Result of one `H` evaluation.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SumResult {
    /// `-sum of t(gamma, alpha, omega)` over the included zeros.
    pub h_value: f64,
    pub terms_used: usize,
    /// Truncation height actually applied.
    pub t_height: f64,
    /// Bound on `|H - H*|` from finite zero accuracy, over the summed prefix.
    pub zero_accuracy_bound: f64,
    pub largest_term_magnitude: f64,
}

/// Evaluates `H(T, alpha, omega)` over all table zeros with `gamma <= t_height`,
/// with deterministic compensated accumulation (bitwise reproducible for any
/// worker count).
///
/// Requires `alpha > t_height`: the zero-accuracy bound's derivative estimate
/// holds for `gamma < alpha` only.
#[allow(non_snake_case)]
pub fn evaluate_H(table: &ZeroTable, alpha: f64, omega: f64, t_height: f64) -> Result<SumResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Argument(format!("alpha must be positive, got {alpha}")));
    }
    if !(omega >= 0.0) {
        return Err(Error::Argument(format!("omega must be >= 0, got {omega}")));
    }
    if alpha <= t_height {
        return Err(Error::Precondition(format!(
            "M-bound inapplicable: alpha ({alpha:e}) must exceed the truncation height ({t_height:e})"
        )));
    }
    let k = table.prefix_len(t_height);
    let gammas = &table.gammas()[..k];
    let (sum, max_abs) = chunked_map_sum(k, |i| term(gammas[i], alpha, omega));
    let accuracy = table.epsilon() * (3.0 * omega + 8.0) * compensated_sum(gammas.iter().map(|g| 1.0 / g));
    Ok(SumResult {
        h_value: -sum,
        terms_used: k,
        t_height,
        zero_accuracy_bound: accuracy,
        largest_term_magnitude: max_abs,
    })
}

/// Whole-table zero-accuracy budget:
/// `epsilon * sum over the table of (3 omega + 8)/gamma_i >= |H - H*|`.
///
/// Always uses the exact constant `3 omega + 8` (no specialization to
/// `omega < 728`). Requires `alpha > gamma_max` so the derivative bound
/// applies to every table zero.
pub fn zero_accuracy_bound(table: &ZeroTable, alpha: f64, omega: f64) -> Result<f64> {
    if !table.is_empty() && alpha <= table.gamma_max() {
        return Err(Error::Precondition(format!(
            "zero-accuracy bound requires alpha ({alpha:e}) > gamma_max ({:e})",
            table.gamma_max()
        )));
    }
    if !(omega >= 0.0) {
        return Err(Error::Argument(format!("omega must be >= 0, got {omega}")));
    }
    Ok(table.epsilon() * (3.0 * omega + 8.0) * table.reciprocal_sum())
}

/// Bound on `|d t / d gamma|`:
/// `M = exp(-gamma^2/(2 alpha)) (2 omega/gamma + omega/gamma^2 + 2/alpha + 2/gamma^3 + 4/gamma^2)`.
///
/// Satisfies `M < (3 omega + 8)/gamma` for `gamma > 14`, `omega >= 1`.
pub fn m_bound(gamma: f64, alpha: f64, omega: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::Argument(format!("gamma must be positive, got {gamma}")));
    }
    if gamma >= alpha {
        return Err(Error::Precondition(format!(
            "M-bound requires gamma ({gamma:e}) < alpha ({alpha:e})"
        )));
    }
    let g2 = gamma * gamma;
    Ok((-g2 / (2.0 * alpha)).exp()
        * (2.0 * omega / gamma + omega / g2 + 2.0 / alpha + 2.0 / (g2 * gamma) + 4.0 / g2))
}

/// Histogram of `{gamma * omega mod 2 pi}`: a diagnostic for the
/// equidistribution heuristic, with no certification role.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeylHistogram {
    pub bins: Vec<u64>,
    /// `max over bins of |count - N/bins| / (N/bins)`; 0 for an empty table.
    pub max_relative_deviation: f64,
}

pub fn weyl_diagnostic(table: &ZeroTable, omega: f64, bins: usize) -> Result<WeylHistogram> {
    if bins == 0 {
        return Err(Error::Argument("bins must be >= 1".into()));
    }
    if !(omega > 0.0) {
        return Err(Error::Argument(format!("omega must be positive, got {omega}")));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut counts = vec![0u64; bins];
    for &g in table.gammas() {
        let (hi, lo) = two_prod(omega, g);
        let mut phi = hi.rem_euclid(two_pi) + lo;
        if phi < 0.0 {
            phi += two_pi;
        } else if phi >= two_pi {
            phi -= two_pi;
        }
        let idx = ((phi / two_pi) * bins as f64) as usize;
        counts[idx.min(bins - 1)] += 1;
    }
    let expected = table.count() as f64 / bins as f64;
    let max_relative_deviation = if table.is_empty() {
        0.0
    } else {
        counts
            .iter()
            .map(|&c| (c as f64 - expected).abs() / expected)
            .fold(0.0, f64::max)
    };
    Ok(WeylHistogram {
        bins: counts,
        max_relative_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arb::Arb;
    use rand::{Rng, SeedableRng};

    fn table(gammas: &[f64]) -> ZeroTable {
        ZeroTable::from_gammas(gammas.to_vec(), 1e-9).unwrap()
    }

    #[test]
    fn omega_zero_collapses_trig() {
        for &(g, a) in &[(14.134725f64, 1.34e11f64), (100.0, 1e6), (2500.0, 1e8)] {
            let expected = (-g * g / (2.0 * a)).exp() / (0.25 + g * g);
            assert_eq!(term(g, a, 0.0), expected);
        }
    }

    #[test]
    fn term_matches_50_digit_oracle() {
        let arb = Arb::new(50);
        let reference = arb.to_f64(&arb.term(14.134725, 1.34e11, 727.952018));
        let fast = term(14.134725, 1.34e11, 727.952018);
        assert!(
            (fast - reference).abs() <= 1e-15 * reference.abs(),
            "fast {fast:e} vs arb {reference:e}"
        );
    }

    #[test]
    fn envelope_bound_random_sweep() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let g: f64 = rng.gen_range(14.01..1.0e6);
            let a: f64 = rng.gen_range(1.0e6..1.0e12);
            let w: f64 = rng.gen_range(0.0..730.0);
            let t = term(g, a, w);
            let envelope = (-g * g / (2.0 * a)).exp() * (1.0 + 2.0 * g) / (0.25 + g * g);
            assert!(t.abs() <= envelope * (1.0 + 1e-12), "g={g} a={a} w={w}");
        }
    }

    #[test]
    fn conjugate_pair_identity_at_50_digits() {
        // The real-term formula equals 2 Re(e^{i omega gamma}/rho * e^{-gamma^2/2alpha});
        // both routes evaluated at 50 digits must agree to 1e-15 relative.
        let arb = Arb::new(50);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let g: f64 = rng.gen_range(14.01..1.0e6);
            let a: f64 = rng.gen_range(1.0e6..1.0e12);
            let w: f64 = rng.gen_range(0.0..730.0);
            let direct = arb.term(g, a, w);
            let conj = arb.term_conjugate_route(g, a, w);
            let diff = arb.to_f64(&arb.sub(&direct, &conj)).abs();
            let scale = arb.to_f64(&direct).abs().max(1e-300);
            assert!(diff <= 1e-15 * scale, "g={g} a={a} w={w} diff={diff:e}");
        }
    }

    #[test]
    fn empty_table_sums_to_zero() {
        let t = table(&[]);
        let r = evaluate_H(&t, 1e6, 10.0, 1e5).unwrap();
        assert_eq!(r.h_value, 0.0);
        assert_eq!(r.terms_used, 0);
    }

    #[test]
    fn single_zero_omega_zero_closed_form() {
        let g = 14.134725;
        let t = table(&[g]);
        let r = evaluate_H(&t, 1e12, 0.0, 100.0).unwrap();
        let expected = -(-g * g / 2e12).exp() / (0.25 + g * g);
        assert_eq!(r.h_value, expected);
        assert!((r.h_value + 0.0049990).abs() < 1e-6);
    }

    #[test]
    fn prefix_consistency() {
        let gammas: Vec<f64> = (0..2000).map(|i| 14.134725 + i as f64 * 0.61).collect();
        let t = table(&gammas);
        let k = 731;
        let full = evaluate_H(&t, 1e7, 5.5, gammas[k - 1]).unwrap();
        let prefix = t.prefix(k).unwrap();
        let pre = evaluate_H(&prefix, 1e7, 5.5, prefix.gamma_max()).unwrap();
        assert_eq!(full.terms_used, k);
        assert_eq!(full.h_value.to_bits(), pre.h_value.to_bits());
    }

    #[test]
    fn alpha_below_t_height_rejected() {
        let t = table(&[14.134725]);
        let err = evaluate_H(&t, 1e3, 1.0, 1e5).unwrap_err();
        assert!(err.to_string().contains("M-bound"), "{err}");
    }

    #[test]
    fn determinism_across_worker_counts() {
        let gammas: Vec<f64> = (0..40_000).map(|i| 14.134725 + i as f64 * 0.13).collect();
        let t = table(&gammas);
        let mut bits = Vec::new();
        for workers in [1usize, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .unwrap();
            let r = pool
                .install(|| evaluate_H(&t, 1e7, 727.952018, 1e6))
                .unwrap();
            bits.push(r.h_value.to_bits());
        }
        assert_eq!(bits[0], bits[1]);
        assert_eq!(bits[0], bits[2]);
    }

    #[test]
    fn zero_accuracy_bound_single_zero() {
        let t = table(&[14.134725]);
        let b = zero_accuracy_bound(&t, 1e6, 727.0).unwrap();
        let expected = 1e-9 * (3.0 * 727.0 + 8.0) / 14.134725;
        assert!((b - expected).abs() < 1e-20);
        assert!((b - 1.549e-7).abs() < 1e-10);
    }

    #[test]
    fn zero_accuracy_bound_epsilon_zero() {
        let t = ZeroTable::from_gammas(vec![14.134725, 21.022039], 0.0).unwrap();
        assert_eq!(zero_accuracy_bound(&t, 1e6, 100.0).unwrap(), 0.0);
    }

    #[test]
    fn zero_accuracy_bound_requires_alpha_above_table() {
        let t = table(&[14.134725, 21.022039]);
        assert!(zero_accuracy_bound(&t, 20.0, 1.0).is_err());
    }

    #[test]
    fn m_bound_below_simplified_constant() {
        let m = m_bound(14.134725, 1.34e11, 727.952018).unwrap();
        assert!(m < (3.0 * 727.952018 + 8.0) / 14.134725);
        // omega = 0 collapse
        let g = 55.0;
        let a = 1e8;
        let m0 = m_bound(g, a, 0.0).unwrap();
        let expected =
            (-g * g / (2.0 * a)).exp() * (2.0 / a + 2.0 / (g * g * g) + 4.0 / (g * g));
        assert!((m0 - expected).abs() < 1e-18);
        assert!(m_bound(10.0, 5.0, 1.0).is_err());
    }

    #[test]
    fn m_bound_property_sweep() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let g: f64 = rng.gen_range(14.001..1e6);
            let a: f64 = rng.gen_range(g * 1.001..1e13);
            let w: f64 = rng.gen_range(1.0..728.0);
            let m = m_bound(g, a, w).unwrap();
            assert!(m < (3.0 * w + 8.0) / g, "g={g} a={a} w={w}");
        }
    }

    #[test]
    fn perturbation_respects_zero_accuracy_bound() {
        // |H(perturbed) - H(original)| <= zero_accuracy_bound at both 1e-9 and 1e-6.
        let gammas: Vec<f64> = (0..5000).map(|i| 14.134725 + i as f64 * 0.47).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for &eps in &[1e-9, 1e-6] {
            let base = ZeroTable::from_gammas(gammas.clone(), eps).unwrap();
            let alpha = 1e7;
            let omega = 432.1;
            let h0 = evaluate_H(&base, alpha, omega, 1e6).unwrap().h_value;
            let bound = zero_accuracy_bound(&base, alpha, omega).unwrap();
            for _ in 0..20 {
                let perturbed: Vec<f64> = gammas
                    .iter()
                    .map(|&g| g + rng.gen_range(-eps..=eps))
                    .collect();
                let pt = ZeroTable::from_gammas(perturbed, eps).unwrap();
                let h1 = evaluate_H(&pt, alpha, omega, 1e6).unwrap().h_value;
                assert!(
                    (h1 - h0).abs() <= bound,
                    "eps={eps} |dH|={:e} bound={bound:e}",
                    (h1 - h0).abs()
                );
            }
        }
    }

    #[test]
    fn weyl_trivial_cases() {
        let single = table(&[14.134725]);
        let h = weyl_diagnostic(&single, 3.0, 16).unwrap();
        assert_eq!(h.bins.iter().sum::<u64>(), 1);
        assert_eq!(h.bins.iter().filter(|&&c| c == 1).count(), 1);

        let many = table(&(0..500).map(|i| 14.134725 + i as f64).collect::<Vec<_>>());
        let h = weyl_diagnostic(&many, 727.952018, 1).unwrap();
        assert_eq!(h.bins, vec![500]);
        assert_eq!(h.max_relative_deviation, 0.0);

        assert!(weyl_diagnostic(&single, 3.0, 0).is_err());
    }
}
