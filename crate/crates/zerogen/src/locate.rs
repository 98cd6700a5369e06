//! Zero localization: Gram blocks, sign-change bracketing, Brent refinement.
//!
//! The n-th Gram point `g_n` is "good" when `(-1)^n Z(g_n) > 0`. Runs of bad
//! Gram points form blocks bounded by good ones; a block spanning k Gram
//! intervals contains exactly k zeros throughout this range (the first
//! failure of that rule lies far above the two-millionth zero), so each
//! block is subdivided until its k sign changes appear.

use crate::rs::z;
use crate::theta::gram_point;

/// Refines a sign-change bracket to ~1e-11 relative width (Brent).
fn brent_zero(mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    assert!(fa * fb <= 0.0, "not a bracket: Z({a}) = {fa}, Z({b}) = {fb}");
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut mflag = true;
    let mut d = 0.0;
    for _ in 0..120 {
        let tol = 2.0 * f64::EPSILON * b.abs() + 5e-12;
        if fb == 0.0 || (b - a).abs() < tol {
            break;
        }
        let mut s = if fa != fc && fb != fc {
            // inverse quadratic interpolation
            a * fb * fc / ((fa - fb) * (fa - fc))
                + b * fa * fc / ((fb - fa) * (fb - fc))
                + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let lo = (3.0 * a + b) / 4.0;
        let between = (lo.min(b)..=lo.max(b)).contains(&s);
        let cond = !between
            || (mflag && (s - b).abs() >= (b - c).abs() / 2.0)
            || (!mflag && (s - b).abs() >= (c - d).abs() / 2.0)
            || (mflag && (b - c).abs() < tol)
            || (!mflag && (c - d).abs() < tol);
        if cond {
            s = (a + b) / 2.0;
            mflag = true;
        } else {
            mflag = false;
        }
        let fs = z(s);
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    (a + b) / 2.0
}

/// All zeros in `(lo, hi)` given `count` are expected there; subdivides until
/// exactly that many sign changes appear. Panics if `depth` subdivision
/// rounds cannot resolve them (out-of-range input or a counting bug).
fn zeros_in_stretch(lo: f64, hi: f64, z_lo: f64, z_hi: f64, count: usize) -> Vec<f64> {
    if count == 0 {
        return Vec::new();
    }
    let mut points_per_gap = if count == 1 { 1 } else { 4 * count };
    for _ in 0..16 {
        // sample grid
        let n = points_per_gap.max(1);
        let mut samples = Vec::with_capacity(n + 1);
        samples.push((lo, z_lo));
        for j in 1..n {
            let t = lo + (hi - lo) * j as f64 / n as f64;
            samples.push((t, z(t)));
        }
        samples.push((hi, z_hi));
        let mut brackets = Vec::new();
        for w in samples.windows(2) {
            if w[0].1 * w[1].1 <= 0.0 && (w[0].1 != 0.0 || w[1].1 != 0.0) {
                brackets.push((w[0], w[1]));
            }
        }
        if brackets.len() >= count {
            assert!(
                brackets.len() == count,
                "found {} sign changes where {} zeros expected in ({lo}, {hi})",
                brackets.len(),
                count
            );
            return brackets
                .into_iter()
                .map(|((a, fa), (b, fb))| brent_zero(a, b, fa, fb))
                .collect();
        }
        points_per_gap *= 3;
    }
    panic!("could not resolve {count} zeros in ({lo}, {hi}); sign changes missing");
}

/// Finds zeros number `first_index + 1 ..` lying in the Gram range
/// `(g_{n_lo}, g_{n_hi}]`, where both endpoints must be good Gram indices.
/// Returns the ordinates in ascending order; the count always equals
/// `n_hi - n_lo`.
pub fn zeros_in_gram_range(n_lo: i64, n_hi: i64) -> Vec<f64> {
    assert!(n_hi > n_lo);
    let mut zeros = Vec::with_capacity((n_hi - n_lo) as usize + 8);
    let mut block_start = n_lo;
    let mut g_start = gram_point(n_lo);
    let mut z_start = z(g_start);
    assert!(
        is_good(n_lo, z_start),
        "g_{n_lo} is not a good Gram point; choose a different chunk boundary"
    );
    let mut n = n_lo + 1;
    while n <= n_hi {
        let g = gram_point(n);
        let zg = z(g);
        if is_good(n, zg) {
            let k = (n - block_start) as usize;
            zeros.extend(zeros_in_stretch(g_start, g, z_start, zg, k));
            block_start = n;
            g_start = g;
            z_start = zg;
        }
        n += 1;
    }
    assert!(
        block_start == n_hi,
        "g_{n_hi} must be good to close the last block"
    );
    zeros
}

/// Gram-point quality: `(-1)^n Z(g_n) > 0`.
pub fn is_good(n: i64, z_at_g: f64) -> bool {
    if n % 2 == 0 {
        z_at_g > 0.0
    } else {
        z_at_g < 0.0
    }
}

/// Smallest good Gram index at or after `n`.
pub fn next_good_index(n: i64) -> i64 {
    let mut k = n;
    loop {
        let g = gram_point(k);
        if is_good(k, z(g)) {
            return k;
        }
        k += 1;
    }
}

/// The first zero (below `g_0`) by direct scan of `[13.5, g_0]`.
pub fn first_zero() -> f64 {
    let g0 = gram_point(0);
    let zeros = zeros_in_stretch(13.5, g0, z(13.5), z(g0), 1);
    zeros[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros_match_published_values() {
        let g1 = first_zero();
        assert!((g1 - 14.134725141734694).abs() < 1e-9, "gamma_1 = {g1:.12}");

        // zeros 2..=21 lie in (g_0, g_20]
        let start = next_good_index(0);
        assert_eq!(start, 0);
        let zs = zeros_in_gram_range(0, 20);
        assert_eq!(zs.len(), 20);
        let published = [
            21.022039638771555,
            25.010857580145688,
            30.424876125859513,
            32.935061587739190,
            37.586178158825671,
        ];
        for (a, b) in zs.iter().zip(published.iter()) {
            assert!((a - b).abs() < 1e-9, "{a:.12} vs {b:.12}");
        }
    }

    #[test]
    fn lehmer_pair_resolved() {
        // The famously close pair near t = 7005 must come out as two zeros.
        let lo = next_good_index(6700);
        let hi = next_good_index(6720);
        let zs = zeros_in_gram_range(lo, hi);
        assert_eq!(zs.len(), (hi - lo) as usize);
        let close: Vec<&f64> = zs.iter().filter(|&&t| (7005.0..7006.0).contains(&t)).collect();
        assert_eq!(close.len(), 2, "Lehmer pair: {close:?}");
        assert!((close[0] - 7005.06286).abs() < 1e-4);
        assert!((close[1] - 7005.10056).abs() < 1e-4);
    }

    #[test]
    fn high_range_block_counts() {
        // around t = 1e6: counts must equal the Gram interval count
        let lo = next_good_index(1_600_000);
        let hi = next_good_index(1_600_120);
        let zs = zeros_in_gram_range(lo, hi);
        assert_eq!(zs.len(), (hi - lo) as usize);
        assert!(zs.windows(2).all(|w| w[0] < w[1]));
    }
}
