//! Quadrature: Gauss-Legendre rules, the `theta4` tail integral, and the
//! direct evaluation of the smoothed crossover integral
//!
//! ```text
//! I(omega, eta) = int_{omega-eta}^{omega+eta} K(u-omega) u e^{-u/2} (pi(e^u) - li(e^u)) du
//! K(y) = sqrt(alpha/(2 pi)) e^{-alpha y^2 / 2}
//! ```
//!
//! `pi(e^u)` jumps at logarithms of primes, so panels split at every `ln p`
//! in range; inside a panel the integrand is smooth and Gauss rules converge
//! fast. The kernel concentrates the mass in `|u - omega| <~ alpha^{-1/2}`,
//! and the skipped far tail is bounded explicitly and folded into the
//! reported error estimate.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::li::li;
use crate::oracle::sieve::SievePi;
use crate::sum::Neumaier;

/// Nodes/weights on [-1, 1].
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    fn build(n: usize) -> Self {
        // Newton on P_n with the standard cosine initial guess.
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0f64, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Shared rule cache; rules are immutable once built.
pub fn gauss_legendre(n: usize) -> &'static GaussLegendre {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static GaussLegendre>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(n)
        .or_insert_with(|| Box::leak(Box::new(GaussLegendre::build(n))))
}

/// `theta4(x) = int_x^inf du / ((u^2-1) u ln u) - ln 2` for `x > 2`.
///
/// Substituting `u = e^v` gives `int_{ln x}^inf dv / ((e^{2v} - 1) v)`; the
/// integrand decays like `e^{-2v}`, so a finite upper limit with an explicit
/// tail bound reaches 1e-10 absolute comfortably. The value lies in
/// `(-ln 2, 1/2 - ln 2)`.
pub fn theta4(x: f64) -> Result<f64> {
    if !(x > 2.0) {
        return Err(Error::Argument(format!("theta4 requires x > 2, got {x}")));
    }
    let gl = gauss_legendre(32);
    let lo = x.ln();
    let hi = (lo + 12.0).max(18.0); // tail below e^{-36}/36
    let panels = (((hi - lo) * 2.0).ceil() as usize).max(4);
    let width = (hi - lo) / panels as f64;
    let mut acc = Neumaier::new();
    for i in 0..panels {
        let a = lo + i as f64 * width;
        acc.add(gl.integrate(a, a + width, |v| {
            1.0 / ((2.0 * v).exp_m1() * v)
        }));
    }
    Ok(acc.value() - std::f64::consts::LN_2)
}

/// Result of one direct quadrature of `I(omega, eta)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirectIResult {
    pub value: f64,
    /// Explicit bound: panel refinement difference + skipped-tail bound +
    /// accumulation rounding.
    pub error_estimate: f64,
    pub panels: usize,
    /// Integration actually ran over `[support_lo, support_hi]`.
    pub support_lo: f64,
    pub support_hi: f64,
    /// Contribution bound for the kernel tail outside the support window.
    pub tail_bound: f64,
}

/// Direct quadrature of `I(omega, eta)` against the sieve and `li` oracles.
///
/// `nodes` sets the minimum panel budget (>= 64); panels split at every
/// `ln p` for primes `p` in range, each integrated with paired Gauss rules
/// whose difference feeds the error estimate.
pub fn direct_i(
    pi: &SievePi,
    omega: f64,
    eta: f64,
    alpha: f64,
    nodes: usize,
) -> Result<DirectIResult> {
    if nodes < 64 {
        return Err(Error::Argument(format!("nodes must be >= 64, got {nodes}")));
    }
    if !(eta > 0.0) || !(alpha > 0.0) || !(omega > eta) {
        return Err(Error::Argument(format!(
            "direct_i requires omega > eta > 0 and alpha > 0, got omega={omega} eta={eta} alpha={alpha}"
        )));
    }
    let u_lo = omega - eta;
    let u_hi = omega + eta;
    if u_lo < std::f64::consts::LN_2 {
        return Err(Error::Range(format!(
            "exp(omega - eta) = exp({u_lo}) falls below the li oracle domain"
        )));
    }
    if u_hi.exp() > pi.limit() as f64 {
        return Err(Error::Range(format!(
            "exp(omega + eta) = {:e} exceeds sieve limit {}",
            u_hi.exp(),
            pi.limit()
        )));
    }

    // Kernel mass outside |y| > y0 is below e^{-alpha y0^2/2}; with the
    // exponent pinned at 80 the tail bound sits ~30 orders under the result.
    let y0 = (160.0 / alpha).sqrt();
    let support_lo = u_lo.max(omega - y0);
    let support_hi = u_hi.min(omega + y0);

    // Everything outside the window, bounded crudely but rigorously.
    let tail_bound = if support_lo > u_lo || support_hi < u_hi {
        let f_max = u_hi
            * (-u_lo / 2.0).exp()
            * (pi.query(u_hi.exp())? as f64 + li(u_hi.exp())?);
        f_max * (-80.0f64).exp()
    } else {
        0.0
    };

    let kernel_scale = (alpha / (2.0 * std::f64::consts::PI)).sqrt();
    let integrand = |u: f64, pi_rank: f64| -> f64 {
        let y = u - omega;
        let k = kernel_scale * (-alpha * y * y / 2.0).exp();
        k * u * (-u / 2.0).exp() * (pi_rank - li(u.exp()).unwrap_or(f64::NAN))
    };

    // Panel boundaries: logs of primes inside the support window.
    let lo_x = support_lo.exp();
    let hi_x = support_hi.exp();
    let mut boundaries = vec![support_lo];
    pi.for_each_prime_in(lo_x.ceil() as u64, hi_x.floor() as u64, |p| {
        let lp = (p as f64).ln();
        if lp > support_lo && lp < support_hi {
            boundaries.push(lp);
        }
    })?;
    boundaries.push(support_hi);

    // Uniform subdivision on top, honoring the node budget.
    let min_panels = nodes.div_ceil(4);
    if boundaries.len() - 1 < min_panels {
        let mut refined = Vec::with_capacity(min_panels + boundaries.len());
        let per_gap = min_panels.div_ceil(boundaries.len() - 1);
        for w in boundaries.windows(2) {
            let (a, b) = (w[0], w[1]);
            for j in 0..per_gap {
                refined.push(a + (b - a) * j as f64 / per_gap as f64);
            }
        }
        refined.push(support_hi);
        boundaries = refined;
    }

    let coarse = gauss_legendre(4);
    let fine = gauss_legendre(8);
    let mut acc = Neumaier::new();
    let mut refinement = 0.0f64;
    let mut abs_acc = 0.0f64;
    // pi(e^u) is constant strictly inside each panel: rank at the midpoint.
    for w in boundaries.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let mid_x = ((a + b) / 2.0).exp();
        let rank = pi.query(mid_x)? as f64;
        let vf = fine.integrate(a, b, |u| integrand(u, rank));
        let vc = coarse.integrate(a, b, |u| integrand(u, rank));
        acc.add(vf);
        refinement += (vf - vc).abs();
        abs_acc += vf.abs();
    }
    let value = acc.value();
    if !value.is_finite() {
        return Err(Error::Range("integrand left the li oracle domain".into()));
    }
    let error_estimate = refinement + tail_bound + abs_acc * 1e-14 + 1e-16;

    Ok(DirectIResult {
        value,
        error_estimate,
        panels: boundaries.len() - 1,
        support_lo,
        support_hi,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rules_integrate_polynomials_exactly() {
        let gl = gauss_legendre(8);
        // degree 15 is exact for an 8-point rule
        let val = gl.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((val - 1.0 / 16.0).abs() < 1e-14);
        let gl = gauss_legendre(32);
        let val = gl.integrate(-2.0, 3.0, |x| x.exp());
        assert!((val - (3f64.exp() - (-2f64).exp())).abs() < 1e-10);
    }

    #[test]
    fn theta4_limits_and_bounds() {
        // tail vanishes: theta4(1e6) within 1e-10 of -ln 2
        let v = theta4(1e6).unwrap();
        assert!((v + std::f64::consts::LN_2).abs() < 1e-10, "theta4(1e6) = {v}");
        // paper bracket at 2.1
        let v = theta4(2.1).unwrap();
        assert!(v > -0.6932 && v < -0.1932, "theta4(2.1) = {v}");
        assert!(theta4(2.0).is_err());
    }

    #[test]
    fn theta4_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        let mut x = 2.05;
        while x < 1e5 {
            let v = theta4(x).unwrap();
            assert!(v < prev, "theta4({x}) = {v} prev {prev}");
            assert!(v > -std::f64::consts::LN_2 - 1e-12);
            assert!(v < 0.5 - std::f64::consts::LN_2 + 1e-12);
            prev = v;
            x *= 3.7;
        }
    }

    #[test]
    fn direct_i_negative_below_first_crossover() {
        // pi < li throughout desk scale, so I < 0; small-scale variant of the
        // identity check (e^{14.7} ~ 2.4e6).
        let sieve = SievePi::new(2_500_000).unwrap();
        let r = direct_i(&sieve, 14.2, 0.5, 1e6, 64).unwrap();
        assert!(r.value < 0.0, "I = {}", r.value);
        assert!(r.error_estimate <= 1e-6 * r.value.abs() + 1e-9);
    }

    #[test]
    fn doubling_nodes_changes_less_than_estimate() {
        let sieve = SievePi::new(2_500_000).unwrap();
        let a = direct_i(&sieve, 14.2, 0.5, 1e6, 64).unwrap();
        let b = direct_i(&sieve, 14.2, 0.5, 1e6, 128).unwrap();
        assert!(
            (a.value - b.value).abs() <= a.error_estimate,
            "delta {:e} vs estimate {:e}",
            (a.value - b.value).abs(),
            a.error_estimate
        );
    }

    #[test]
    fn kernel_normalization_limit() {
        // For alpha eta^2 >> 1 the kernel mass is ~1 and I ~ F(omega) with
        // F(u) = u e^{-u/2} (pi - li)(e^u); compare within the step size of F.
        let sieve = SievePi::new(1_600_000).unwrap();
        let omega = 14.2;
        let r = direct_i(&sieve, omega, 0.001, 1e8, 64).unwrap();
        let x = omega.exp();
        let f_mid = omega * (-omega / 2.0).exp() * (sieve.query(x).unwrap() as f64 - li(x).unwrap());
        let step = omega * (-omega / 2.0).exp(); // one pi jump
        assert!(
            (r.value - f_mid).abs() < 0.02 * f_mid.abs() + 5.0 * step,
            "I = {} vs F(omega) = {}",
            r.value,
            f_mid
        );
    }

    #[test]
    fn range_and_argument_errors() {
        let sieve = SievePi::new(100_000).unwrap();
        assert!(direct_i(&sieve, 14.2, 0.5, 1e6, 32).is_err()); // nodes < 64
        assert!(direct_i(&sieve, 20.0, 0.5, 1e6, 64).is_err()); // beyond sieve
    }
}
