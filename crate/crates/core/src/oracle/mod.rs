//! Desk-scale ground truth: exact prime counting, the logarithmic integral,
//! direct quadrature of the smoothed identity, and classical inequality
//! sweeps that validate the explicit-formula pipeline end to end.

pub mod checks;
pub mod integrals;
pub mod li;
pub mod sieve;

pub use checks::{identity_gap, j_of_x, panaitopol_check, rs_bound_check, GapReport, SweepReport};
pub use integrals::{direct_i, gauss_legendre, theta4, DirectIResult};
pub use li::{li, li_exp_log10, li_quadrature};
pub use sieve::{simple_pi, SievePi};

/// Sample of `(u, F(u))` with `F(u) = u e^{-u/2} (pi - li)(e^u)`, for CSV dumps.
pub fn f_samples(pi: &SievePi, u_lo: f64, u_hi: f64, count: usize) -> crate::error::Result<Vec<(f64, f64)>> {
    if count < 2 || !(u_hi > u_lo) {
        return Err(crate::error::Error::Argument(
            "need at least two sample points over a nonempty range".into(),
        ));
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let u = u_lo + (u_hi - u_lo) * i as f64 / (count - 1) as f64;
        let x = u.exp();
        let f = u * (-u / 2.0).exp() * (pi.query(x)? as f64 - li::li(x)?);
        out.push((u, f));
    }
    Ok(out)
}
