//! Minimal double-double arithmetic for phase computations.
//!
//! Phases `theta(t) - t ln n` reach ~7e6 radians; plain f64 products would
//! inject ~1e-9 rad of rounding into every cosine. Carrying the phase as an
//! unevaluated sum of two f64 keeps it to ~1e-22 before reduction mod 2 pi.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two arbitrary f64 (Knuth).
#[inline]
pub fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

/// Error-free sum assuming `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let err = b - (s - a);
    Dd { hi: s, lo: err }
}

/// Error-free product (Veltkamp-Dekker split; arguments below ~1e150).
#[inline]
pub fn two_prod(a: f64, b: f64) -> Dd {
    const SPLIT: f64 = 134_217_729.0; // 2^27 + 1
    let p = a * b;
    let t = SPLIT * a;
    let ah = t - (t - a);
    let al = a - ah;
    let t = SPLIT * b;
    let bh = t - (t - b);
    let bl = b - bh;
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    Dd { hi: p, lo: err }
}

impl Dd {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        quick_two_sum(s.hi, lo)
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Dd {
        let s = two_sum(self.hi, x);
        quick_two_sum(s.hi, s.lo + self.lo)
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        quick_two_sum(p.hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let p = two_prod(self.hi, x);
        quick_two_sum(p.hi, p.lo + self.lo * x)
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        quick_two_sum(q1, q2).add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        self.div(Dd::from_f64(x))
    }

    pub fn sqrt(self) -> Dd {
        let y = self.hi.sqrt();
        if y == 0.0 {
            return Dd::from_f64(0.0);
        }
        // one dd Newton step: y + (self - y^2) / (2y)
        let y_dd = Dd::from_f64(y);
        let r = self.sub(y_dd.mul(y_dd));
        y_dd.add(r.div_f64(2.0 * y))
    }

    pub fn floor(self) -> f64 {
        let f = self.hi.floor();
        if f == self.hi {
            // hi integral: lo decides
            f + self.lo.floor()
        } else {
            f
        }
    }
}

/// 2 pi to double-double precision.
pub const TWO_PI: Dd = Dd::new(6.283185307179586, 2.4492935982947064e-16);
/// pi / 8.
pub const PI_OVER_8: Dd = Dd::new(0.39269908169872414, 1.5308084989341915e-17);
/// ln 2.
pub const LN_2: Dd = Dd::new(0.6931471805599453, 2.3190468138462996e-17);
/// 1 / (2 pi), leading f64 only (used for quotient guesses).
pub const INV_TWO_PI: f64 = 0.15915494309189535;

/// `ln x` to double-double accuracy for an exact f64 input.
///
/// Splits `x = m 2^e` with `m` in `[sqrt(1/2), sqrt(2))` and sums the atanh
/// series of `ln m` in dd arithmetic.
pub fn ln_dd(x: f64) -> Dd {
    assert!(x > 0.0 && x.is_finite());
    let mut e = 0i32;
    let mut m = x;
    while m >= std::f64::consts::SQRT_2 {
        m *= 0.5;
        e += 1;
    }
    while m < std::f64::consts::FRAC_1_SQRT_2 {
        m *= 2.0;
        e -= 1;
    }
    // z = (m-1)/(m+1), ln m = 2 atanh z = 2(z + z^3/3 + z^5/5 + ...)
    let z = Dd::from_f64(m - 1.0).div(Dd::from_f64(m + 1.0));
    let z2 = z.mul(z);
    let mut term = z;
    let mut acc = z;
    for k in (3..=37).step_by(2) {
        term = term.mul(z2);
        acc = acc.add(term.div_f64(k as f64));
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    LN_2.mul_f64(e as f64).add(acc.mul_f64(2.0))
}

/// Reduces a dd phase into `[0, 2 pi)`, returned as f64 (the dd residual is
/// far below f64 resolution after reduction).
pub fn reduce_two_pi(phase: Dd) -> f64 {
    let q = (phase.hi * INV_TWO_PI).round();
    let r = phase.sub(TWO_PI.mul_f64(q));
    let mut v = r.value();
    if v < 0.0 {
        v += TWO_PI.hi;
    } else if v >= TWO_PI.hi {
        v -= TWO_PI.hi;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_matches_f64_and_refines() {
        for x in [2.0, 3.0, 10.0, 437.0, 1.0000001, 180154.6] {
            let l = ln_dd(x);
            assert!((l.hi - x.ln()).abs() <= 4.0 * f64::EPSILON * x.ln().abs().max(1.0));
            assert!(l.lo.abs() <= l.hi.abs() * f64::EPSILON);
        }
        // ln 2 against the embedded constant
        let l = ln_dd(2.0);
        assert!((l.hi - LN_2.hi).abs() == 0.0 && (l.lo - LN_2.lo).abs() < 1e-30);
    }

    #[test]
    fn product_and_reduction_consistency() {
        // (t * ln n) mod 2pi for a large product, vs a direct high-accuracy check:
        // reduce(a+b) == reduce(a) + b (mod 2pi) for small b
        let t = 1_131_944.4718;
        let ln5 = ln_dd(5.0);
        let p = ln5.mul_f64(t);
        let r = reduce_two_pi(p);
        assert!((0.0..TWO_PI.hi).contains(&r));
        let p_shift = p.add(Dd::from_f64(1.0));
        let r_shift = reduce_two_pi(p_shift);
        let mut d = r_shift - r;
        if d < 0.0 {
            d += TWO_PI.hi;
        }
        assert!((d - 1.0).abs() < 1e-12, "shift consistency {d}");
    }

    #[test]
    fn sqrt_squares_back() {
        for x in [2.0f64, 180154.6, 1e-3] {
            let s = Dd::from_f64(x).sqrt();
            let back = s.mul(s).sub(Dd::from_f64(x));
            assert!(back.value().abs() < 1e-28 * x, "x={x}");
        }
    }

    #[test]
    fn floor_handles_dd_boundaries() {
        assert_eq!(Dd::new(3.0, -1e-20).floor(), 2.0);
        assert_eq!(Dd::new(3.0, 1e-20).floor(), 3.0);
        assert_eq!(Dd::new(3.5, 0.0).floor(), 3.0);
    }
}
