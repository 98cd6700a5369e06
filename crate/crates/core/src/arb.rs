//! Extended-precision arithmetic for the recheck path and test oracles.
//!
//! Thin wrapper over `astro-float` pinning one working precision (in decimal
//! digits) and one rounding mode. Every certificate-relevant quantity can be
//! re-evaluated through this module at >= 30 digits with correctly rounded
//! elementary functions, independently of the f64 fast path.
//!
//! [`Arb`] is cheap to construct and deliberately `!Sync` (the constants cache
//! is mutable); parallel code builds one per worker.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

/// Fixed-precision arbitrary-precision context.
pub struct Arb {
    p: usize,
    digits: usize,
    cc: RefCell<Consts>,
}

impl Arb {
    /// A context carrying at least `digits` decimal digits of working precision.
    pub fn new(digits: usize) -> Self {
        // log2(10) = 3.3219...; pad with guard bits and round up to the word size.
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32;
        let p = bits.next_multiple_of(64);
        Self {
            p,
            digits,
            cc: RefCell::new(Consts::new().expect("constants cache")),
        }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// Exact conversion; every f64 is representable.
    pub fn f(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    pub fn from_i64(&self, x: i64) -> BigFloat {
        BigFloat::from_i64(x, self.p)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc.borrow_mut())
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        a.ln(self.p, RM, &mut self.cc.borrow_mut())
    }

    pub fn sin(&self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc.borrow_mut())
    }

    pub fn cos(&self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc.borrow_mut())
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    pub fn pi(&self) -> BigFloat {
        self.cc.borrow_mut().pi(self.p, RM)
    }

    pub fn ln_10(&self) -> BigFloat {
        self.cc.borrow_mut().ln_10(self.p, RM)
    }

    pub fn log10(&self, a: &BigFloat) -> BigFloat {
        self.div(&self.ln(a), &self.ln_10())
    }

    /// Nearest f64 (via full-precision decimal formatting, which f64 parsing
    /// rounds correctly).
    pub fn to_f64(&self, a: &BigFloat) -> f64 {
        if a.is_nan() {
            return f64::NAN;
        }
        if a.is_inf_pos() {
            return f64::INFINITY;
        }
        if a.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        format!("{a}").parse::<f64>().unwrap_or(f64::NAN)
    }

    /// 50-digit-quality reciprocal rounded to f64, used as a one-line oracle.
    pub fn recip_f64(&self, x: f64) -> f64 {
        self.to_f64(&self.div(&self.f(1.0), &self.f(x)))
    }

    /// The explicit-formula term
    /// `t = exp(-gamma^2/(2 alpha)) * (cos(omega gamma) + 2 gamma sin(omega gamma)) / (1/4 + gamma^2)`
    /// evaluated entirely at this precision.
    pub fn term(&self, gamma: f64, alpha: f64, omega: f64) -> BigFloat {
        let g = self.f(gamma);
        let g2 = self.mul(&g, &g);
        let expo = self.exp(&self.div(&g2.neg(), &self.f(2.0 * alpha)));
        let phase = self.mul(&self.f(omega), &g);
        let s = self.sin(&phase);
        let c = self.cos(&phase);
        let num = self.add(&c, &self.mul(&self.mul(&self.f(2.0), &g), &s));
        let den = self.add(&self.f(0.25), &g2);
        self.mul(&expo, &self.div(&num, &den))
    }

    /// Same quantity through the conjugate-pair route:
    /// `2 Re(e^{i omega gamma} / rho) * exp(-gamma^2/(2 alpha))`, `rho = 1/2 + i gamma`,
    /// with the complex division carried out explicitly.
    pub fn term_conjugate_route(&self, gamma: f64, alpha: f64, omega: f64) -> BigFloat {
        let g = self.f(gamma);
        let phase = self.mul(&self.f(omega), &g);
        let (c, s) = (self.cos(&phase), self.sin(&phase));
        // e^{i phi} / rho = e^{i phi} * conj(rho) / |rho|^2
        let half = self.f(0.5);
        let rho_sq = self.add(&self.mul(&half, &half), &self.mul(&g, &g));
        let re = self.div(&self.add(&self.mul(&c, &half), &self.mul(&s, &g)), &rho_sq);
        let g2 = self.mul(&g, &g);
        let expo = self.exp(&self.div(&g2.neg(), &self.f(2.0 * alpha)));
        self.mul(&self.mul(&self.f(2.0), &re), &expo)
    }

    /// `-sum of term(gamma_i)` over `gamma_i <= t_height`, sequential, fixed order.
    pub fn h_value(&self, gammas: &[f64], alpha: f64, omega: f64, t_height: f64) -> BigFloat {
        let mut acc = self.f(0.0);
        for &g in gammas.iter().take_while(|&&g| g <= t_height) {
            acc = self.add(&acc, &self.term(g, alpha, omega));
        }
        acc.neg()
    }

    /// `2 F(sqrt(u_min/2))` with `F(y) = (y^3+y^2)/(y^3-y-1)`: the refined
    /// leading-term constant, at this precision.
    pub fn theta1_coefficient(&self, u_min: f64) -> BigFloat {
        let y = self.sqrt(&self.div(&self.f(u_min), &self.f(2.0)));
        let y2 = self.mul(&y, &y);
        let y3 = self.mul(&y2, &y);
        let num = self.add(&y3, &y2);
        let den = self.sub(&self.sub(&y3, &y), &self.f(1.0));
        self.mul(&self.f(2.0), &self.div(&num, &den))
    }
}

/// Parallel arb evaluation of `H` with deterministic chunking, mirroring the
/// fast path's partition. Each worker owns its own [`Arb`]; partial sums merge
/// in ascending chunk order at full precision.
pub fn h_value_parallel(digits: usize, gammas: &[f64], alpha: f64, omega: f64) -> BigFloat {
    use rayon::prelude::*;
    let chunk = crate::sum::CHUNK;
    let partials: Vec<BigFloat> = gammas
        .par_chunks(chunk)
        .map(|gs| {
            let arb = Arb::new(digits);
            let mut acc = arb.f(0.0);
            for &g in gs {
                acc = arb.add(&acc, &arb.term(g, alpha, omega));
            }
            acc
        })
        .collect();
    let arb = Arb::new(digits);
    let mut total = arb.f(0.0);
    for part in &partials {
        total = arb.add(&total, part);
    }
    total.neg()
}

/// Sign-aware helper: true when `a` is strictly negative.
pub fn is_negative(a: &BigFloat) -> bool {
    a.sign() == Some(Sign::Neg) && !a.is_zero()
}
