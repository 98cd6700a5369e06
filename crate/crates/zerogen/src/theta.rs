//! The Riemann-Siegel theta function and Gram points.
//!
//! `theta(t) = t/2 ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3) + 31/(80640 t^5) + ...`
//! The asymptotic tail is below 1e-12 already at t = 14, far below the dd
//! accuracy of the leading terms.

use crate::dd::{ln_dd, two_prod, Dd, PI_OVER_8, TWO_PI};

/// theta(t) in double-double, for t >= 10.
pub fn theta_dd(t: f64) -> Dd {
    let ln_term = ln_dd(t).sub(ln_dd(TWO_PI.hi).add(Dd::new(0.0, ln_dd_two_pi_tail())));
    // t/2 * ln(t/2pi) - t/2 - pi/8
    let half_t = Dd::new(t / 2.0, 0.0);
    let mut acc = half_t.mul(ln_term);
    acc = acc.sub(half_t);
    acc = acc.sub(PI_OVER_8);
    // asymptotic corrections (f64 is plenty; tail below 1e-13 from t = 14)
    let t2 = t * t;
    let corr = 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
        + 127.0 / (430080.0 * t * t2 * t2 * t2);
    acc.add_f64(corr)
}

// ln(2 pi) correction: ln_dd(TWO_PI.hi) is ln of the leading f64 of 2pi;
// adjust by TWO_PI.lo / TWO_PI.hi for the true constant.
fn ln_dd_two_pi_tail() -> f64 {
    TWO_PI.lo / TWO_PI.hi
}

/// theta(t) as f64 (enough for Gram point location).
pub fn theta_f64(t: f64) -> f64 {
    theta_dd(t).value()
}

/// d theta / dt = ln(t/2pi)/2 + O(1/t^2).
pub fn theta_prime(t: f64) -> f64 {
    (t / TWO_PI.hi).ln() / 2.0 - 1.0 / (48.0 * t * t)
}

/// Gram point `g_n`: the solution of `theta(g_n) = n pi`.
pub fn gram_point(n: i64) -> f64 {
    let target = std::f64::consts::PI * n as f64;
    // invert the leading term t/2 (ln(t/2pi) - 1) = target + pi/8
    let c = (target + PI_OVER_8.hi) * 2.0;
    let mut t = if n < 2 { 17.0 + 3.0 * n as f64 } else {
        // t = 2pi e^{1+W(c/(2pi e))} approximated by two log iterations
        let a = c / TWO_PI.hi;
        let mut y = a.max(1.5);
        for _ in 0..40 {
            y = a / (y.ln().max(0.1));
        }
        TWO_PI.hi * y * std::f64::consts::E
    };
    if t < 10.0 {
        t = 10.0;
    }
    for _ in 0..40 {
        let f = theta_f64(t) - target;
        let step = f / theta_prime(t);
        t -= step;
        if step.abs() < 1e-11 * t.abs().max(1.0) {
            break;
        }
    }
    t
}

/// Phase `theta(t) - t ln n`, reduced-ready.
#[inline]
pub fn main_phase(theta: Dd, t: f64, ln_n: Dd) -> Dd {
    let p = two_prod(t, ln_n.hi);
    let t_ln = Dd::new(p.hi, p.lo + t * ln_n.lo);
    theta.sub(t_ln)
}
