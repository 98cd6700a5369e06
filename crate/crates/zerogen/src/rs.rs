//! `Z(t)` by the Riemann-Siegel formula with four correction terms, for
//! t >= 8000.
//!
//! ```text
//! Z(t) ~ 2 sum_{n<=nu} n^{-1/2} cos(theta(t) - t ln n)
//!      + (-1)^{nu-1} a^{-1/2} [ C0(p) + C1(p)/a + C2(p)/a^2 + C3(p)/a^3 ],
//! a = sqrt(t/2pi), nu = floor(a), p = a - nu.
//! ```
//!
//! With C0..C3 the truncation error decays like t^{-9/4}: ~1e-10 at the
//! 8000 crossover, ~3e-13 at t ~ 1e6. Phases are carried in double-double,
//! so formula truncation dominates everything else.

use std::sync::OnceLock;

use crate::dd::{ln_dd, reduce_two_pi, Dd, TWO_PI};
use crate::tables::{C0, C1, C2, C3};
use crate::theta::{main_phase, theta_dd};

/// Main-sum term cap: nu <= sqrt(t_max/2pi); generous for t up to 1.6e6.
const MAX_NU: usize = 520;

struct Tables {
    ln_n: Vec<Dd>,
    inv_sqrt_n: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut ln_n = Vec::with_capacity(MAX_NU + 1);
        let mut inv_sqrt_n = Vec::with_capacity(MAX_NU + 1);
        ln_n.push(Dd::from_f64(0.0));
        inv_sqrt_n.push(0.0);
        for n in 1..=MAX_NU {
            ln_n.push(ln_dd(n as f64));
            inv_sqrt_n.push(1.0 / (n as f64).sqrt());
        }
        Tables { ln_n, inv_sqrt_n }
    })
}

fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let mut b1 = 0.0f64;
    let mut b2 = 0.0f64;
    for &c in coeffs.iter().skip(1).rev() {
        let next = 2.0 * x * b1 - b2 + c;
        b2 = b1;
        b1 = next;
    }
    x * b1 - b2 + coeffs[0]
}

/// Riemann-Siegel Z(t); valid for t within the table cap (~1.7e6).
pub fn z_rs(t: f64) -> f64 {
    let tabs = tables();
    let a = Dd::from_f64(t).div(TWO_PI).sqrt();
    let nu_f = a.floor();
    let nu = nu_f as usize;
    assert!(
        (1..=MAX_NU).contains(&nu),
        "t = {t} outside the Riemann-Siegel table range"
    );
    let p = a.add_f64(-nu_f).value();

    let theta = theta_dd(t);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=nu {
        let phase = reduce_two_pi(main_phase(theta, t, tabs.ln_n[n]));
        let term = tabs.inv_sqrt_n[n] * phase.cos();
        // Neumaier accumulation
        let s = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - s) + term
        } else {
            (term - s) + sum
        };
        sum = s;
    }
    let main = 2.0 * (sum + comp);

    let x = 2.0 * p - 1.0;
    let inv_a = 1.0 / a.value();
    let corr = clenshaw(&C0, x)
        + inv_a * (clenshaw(&C1, x) + inv_a * (clenshaw(&C2, x) + inv_a * clenshaw(&C3, x)));
    let sign = if nu % 2 == 1 { 1.0 } else { -1.0 };
    main + sign * corr / a.value().sqrt()
}

/// Dispatch: Euler-Maclaurin below the crossover, Riemann-Siegel above.
pub const EM_CUTOFF: f64 = 8000.0;

pub fn z(t: f64) -> f64 {
    if t < EM_CUTOFF {
        crate::zeta_em::z_em(t)
    } else {
        z_rs(t)
    }
}
