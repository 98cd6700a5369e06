//! The logarithmic integral `li(x)` (principal value), two independent ways.
//!
//! Production route: `li(x) = Ei(ln x)` with a convergent series for
//! `ln x <= 50` and a continued fraction above; the switch point is validated
//! by overlap agreement. Oracle route: direct quadrature of the principal
//! value, kept separate so the two can cross-check each other to 1e-12.

use crate::error::{Error, Result};
use crate::oracle::integrals::gauss_legendre;

const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;
/// Branch switch for Ei: series at or below, continued fraction above.
const SERIES_CUTOFF: f64 = 50.0;

/// Exponential integral `Ei(t)` for `t > 0` (principal value).
pub fn ei(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Argument(format!("Ei oracle requires t > 0, got {t}")));
    }
    if t <= SERIES_CUTOFF {
        // Ei(t) = gamma + ln t + sum_{k>=1} t^k / (k k!) -- all terms positive.
        let mut sum = 0.0f64;
        let mut term = 1.0f64;
        for k in 1..400 {
            term *= t / k as f64;
            let contrib = term / k as f64;
            sum += contrib;
            if contrib < sum.abs() * 1e-18 {
                break;
            }
        }
        Ok(EULER_MASCHERONI + t.ln() + sum)
    } else {
        // Ei(t) = e^t / (t - 1 - 1/(t - 3 - 4/(t - 5 - 9/(...)))), modified Lentz.
        let tiny = 1e-300;
        let mut f = t - 1.0;
        if f == 0.0 {
            f = tiny;
        }
        let mut c = f;
        let mut d = 0.0f64;
        for k in 1..200 {
            let a = -((k * k) as f64);
            let b = t - (2 * k + 1) as f64;
            d = b + a * d;
            if d == 0.0 {
                d = tiny;
            }
            c = b + a / c;
            if c == 0.0 {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < 1e-17 {
                break;
            }
        }
        Ok(t.exp() / f)
    }
}

/// `li(x) = Ei(ln x)` for `x >= 2` (domain restricted away from the `x = 1`
/// singularity for oracle use).
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Argument(format!("li oracle requires x >= 2, got {x}")));
    }
    ei(x.ln())
}

/// `log10(li(e^u))` for large `u` where `e^u` overflows f64: from the
/// asymptotic series `li(e^u) = e^u/u (1 + 1!/u + 2!/u^2 + ...)`.
pub fn li_exp_log10(u: f64) -> Result<f64> {
    if !(u > 2.0) {
        return Err(Error::Argument(format!("li_exp_log10 requires u > 2, got {u}")));
    }
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 1..200 {
        let next = term * k as f64 / u;
        if next >= term || next < 1e-18 * sum {
            // truncate at the smallest term
            break;
        }
        term = next;
        sum += term;
    }
    Ok(u / std::f64::consts::LN_10 - u.log10() + sum.log10())
}

/// Quadrature route for `li`, independent of [`li`]:
/// `li(x) = li(2) + int_2^x dt/ln t`, with `li(2)` from the symmetric
/// principal-value pairing around the `t = 1` singularity.
pub fn li_quadrature(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Argument(format!(
            "li quadrature requires x >= 2, got {x}"
        )));
    }
    Ok(li2_quadrature() + integral_2_to_x(x))
}

/// `li(2) = int_0^1 [ 1/ln(1-s) + 1/ln(1+s) ] ds`. The paired integrand
/// extends continuously over `s = 0` (value 1); the log-type decay of the
/// `1/ln(1-s)` branch near `s = 1` is handled by `w = -ln(1-s)`, which turns
/// its tail into `-int e^{-w}/w dw` over a finite range.
fn li2_quadrature() -> f64 {
    let gl = gauss_legendre(64);
    let s0 = 0.9;
    let paired = |s: f64| {
        if s == 0.0 {
            return 1.0;
        }
        1.0 / (1.0 - s).ln() + 1.0 / (1.0 + s).ln()
    };
    let a = gl.integrate(0.0, s0, paired);
    let b = gl.integrate(s0, 1.0, |s| 1.0 / (1.0 + s).ln());
    // int_{s0}^{1} ds/ln(1-s) = -int_{w0}^{inf} e^{-w}/w dw; tail beyond 45
    // is below 1e-21
    let w0 = -(1.0f64 - s0).ln();
    let mut c = 0.0;
    let panels = 12;
    let width = (45.0 - w0) / panels as f64;
    for i in 0..panels {
        let lo = w0 + i as f64 * width;
        c -= gl.integrate(lo, lo + width, |w| (-w).exp() / w);
    }
    a + b + c
}

/// `int_2^x dt/ln t` via `t = e^v`: `int_{ln 2}^{ln x} e^v / v dv`,
/// fixed-order panels of unit log-width.
fn integral_2_to_x(x: f64) -> f64 {
    let gl = gauss_legendre(32);
    let (lo, hi) = (std::f64::consts::LN_2, x.ln());
    let panels = ((hi - lo).ceil() as usize).max(1);
    let width = (hi - lo) / panels as f64;
    let mut acc = crate::sum::Neumaier::new();
    for i in 0..panels {
        let a = lo + i as f64 * width;
        acc.add(gl.integrate(a, a + width, |v| v.exp() / v));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn li_of_two() {
        // classical value li(2) = 1.045163780117...
        let v = li(2.0).unwrap();
        assert!((v - 1.04516378).abs() < 1e-8, "li(2) = {v}");
        let q = li_quadrature(2.0).unwrap();
        assert!((v - q).abs() < 1e-12, "series {v} vs quadrature {q}");
    }

    #[test]
    fn li_below_two_rejected() {
        assert!(li(1.5).is_err());
        assert!(li_quadrature(0.5).is_err());
    }

    #[test]
    fn definitional_identity_at_three_scales() {
        // li(x) - li(2) = int_2^x dt/ln t, both sides independent.
        for &x in &[10.0, 1e3, 1e6] {
            let lhs = li(x).unwrap() - li(2.0).unwrap();
            let rhs = integral_2_to_x(x);
            assert!(
                (lhs - rhs).abs() <= 1e-10 * rhs.abs(),
                "x={x} lhs={lhs} rhs={rhs}"
            );
        }
    }

    #[test]
    fn branch_overlap_agreement() {
        // series vs continued fraction, compared through the quadrature route
        // across the t = 50 switch (x = e^t).
        for &t in &[45.0f64, 48.0, 50.0, 52.0, 55.0] {
            let x = t.exp();
            let a = li(x).unwrap();
            let b = li_quadrature(x).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs(), "t={t}: {a:e} vs {b:e}");
        }
    }

    #[test]
    fn asymptotic_head_term_at_u40() {
        let u: f64 = 40.0;
        let v = li(u.exp()).unwrap();
        let head = u.exp() / u;
        assert!(v.is_finite());
        assert!((v - head).abs() / head < 0.05, "li(e^40) = {v:e}, head {head:e}");
    }

    #[test]
    fn log_space_li_matches_linear_range() {
        // the asymptotic truncation error is ~ sqrt(2 pi u) e^{-u}: negligible
        // from u = 40 up
        for &u in &[40.0f64, 300.0, 600.0] {
            let direct = li(u.exp()).unwrap().log10();
            let logged = li_exp_log10(u).unwrap();
            assert!((direct - logged).abs() < 1e-12, "u={u}: {direct} vs {logged}");
        }
        // beyond f64: e^728 overflows, the log-space value must stay finite
        let v = li_exp_log10(727.951858).unwrap();
        assert!((v - (727.951858 / std::f64::consts::LN_10 - 727.951858f64.log10())).abs() < 0.01);
    }
}
