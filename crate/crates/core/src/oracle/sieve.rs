//! Exact prime counting by segmented sieve, with O(1) rank queries.
//!
//! Odd numbers only: bit `i` of the map stands for `2i + 1`, set = composite.
//! A per-word cumulative count turns `pi(x)` into one popcount. Desk-scale
//! guidance is `limit <= ~1e9` (the map costs `limit/16` bytes).

use rayon::prelude::*;

use crate::error::{Error, Result};

const WORD_BITS: u64 = 64;
/// Numbers covered per word (odd numbers only).
const WORD_SPAN: u64 = 2 * WORD_BITS;

pub struct SievePi {
    limit: u64,
    /// set bit = composite odd number (index i = number 2i+1); bit for 1 is set.
    bits: Vec<u64>,
    /// cum[w] = count of odd primes in words 0..w.
    cum: Vec<u32>,
    total: u64,
}

impl SievePi {
    /// Sieves `[2, limit]`. Errors on `limit < 2`.
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Argument(format!("sieve limit must be >= 2, got {limit}")));
        }
        let n_bits = (limit + 1) / 2; // odds 1, 3, ..., <= limit
        let n_words = n_bits.div_ceil(WORD_BITS) as usize;
        let mut bits = vec![0u64; n_words];

        // Base odd primes up to sqrt(limit), by a plain in-memory sieve.
        let root = (limit as f64).sqrt() as u64 + 2;
        let base = simple_odd_primes(root);

        // Mark composites segment-by-segment; segments are independent.
        const SEG_WORDS: usize = 1 << 15; // 256 KiB of numbers per segment
        bits.par_chunks_mut(SEG_WORDS).enumerate().for_each(|(seg, words)| {
            let lo_idx = (seg * SEG_WORDS) as u64 * WORD_BITS; // first odd index
            let hi_idx = lo_idx + (words.len() as u64) * WORD_BITS;
            let lo_num = 2 * lo_idx + 1;
            let hi_num = 2 * hi_idx - 1;
            for &p in &base {
                if p * p > hi_num {
                    break;
                }
                // first odd multiple of p at or above max(p*p, lo_num)
                let mut m = p * p;
                if m < lo_num {
                    let k = (lo_num + p - 1) / p;
                    m = p * k.max(p);
                    if m % 2 == 0 {
                        m += p;
                    }
                }
                let mut idx = (m - 1) / 2;
                while idx < hi_idx {
                    words[((idx - lo_idx) / WORD_BITS) as usize] |=
                        1u64 << ((idx - lo_idx) % WORD_BITS);
                    idx += p;
                }
            }
        });

        // 1 is not prime; bits past the limit in the last word count as composite.
        bits[0] |= 1;
        let last_valid = n_bits - 1;
        let last_word = (last_valid / WORD_BITS) as usize;
        let last_bit = last_valid % WORD_BITS;
        if last_bit != WORD_BITS - 1 {
            bits[last_word] |= !0u64 << (last_bit + 1);
        }
        for w in bits.iter_mut().skip(last_word + 1) {
            *w = !0;
        }

        let mut cum = Vec::with_capacity(n_words + 1);
        let mut running: u32 = 0;
        for &w in &bits {
            cum.push(running);
            running += w.count_zeros();
        }
        cum.push(running);
        let total = running as u64 + 1; // the prime 2

        Ok(Self {
            limit,
            bits,
            cum,
            total,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Total prime count up to the limit.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `pi(floor(x))` for real `2 <= x <= limit`.
    pub fn query(&self, x: f64) -> Result<u64> {
        if !(x >= 2.0) {
            return Err(Error::Argument(format!("pi(x) oracle requires x >= 2, got {x}")));
        }
        if x > self.limit as f64 {
            return Err(Error::Range(format!(
                "pi({x}) exceeds sieve limit {}",
                self.limit
            )));
        }
        Ok(self.query_u64(x as u64))
    }

    /// `pi(n)` for `n <= limit`; returns 0 below 2.
    pub fn query_u64(&self, n: u64) -> u64 {
        if n < 2 {
            return 0;
        }
        if n == 2 {
            return 1;
        }
        let i_max = (n.min(self.limit) - 1) / 2; // index of largest odd <= n
        let word = (i_max / WORD_BITS) as usize;
        let bit = i_max % WORD_BITS;
        let mask = if bit == WORD_BITS - 1 {
            !0u64
        } else {
            (1u64 << (bit + 1)) - 1
        };
        let partial = (!self.bits[word] & mask).count_ones();
        1 + self.cum[word] as u64 + partial as u64
    }

    /// True when `n <= limit` is prime.
    pub fn is_prime(&self, n: u64) -> bool {
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 || n > self.limit {
            return false;
        }
        let i = (n - 1) / 2;
        self.bits[(i / WORD_BITS) as usize] & (1 << (i % WORD_BITS)) == 0
    }

    /// Calls `f(p)` for every prime in `[lo, hi]`, ascending.
    pub fn for_each_prime_in<F: FnMut(u64)>(&self, lo: u64, hi: u64, mut f: F) -> Result<()> {
        if hi > self.limit {
            return Err(Error::Range(format!(
                "prime range end {hi} exceeds sieve limit {}",
                self.limit
            )));
        }
        if lo <= 2 && hi >= 2 {
            f(2);
        }
        let start = lo.max(3);
        if start > hi {
            return Ok(());
        }
        let mut i = (start - 1) / 2;
        let i_end = (hi - 1) / 2;
        // walk word-wise over zero bits
        while i <= i_end {
            let w = (i / WORD_BITS) as usize;
            let mut free = !self.bits[w];
            // clear bits below i within this word
            free &= !0u64 << (i % WORD_BITS);
            let word_last = (w as u64 + 1) * WORD_BITS - 1;
            if word_last > i_end {
                let bit = i_end % WORD_BITS;
                if bit != WORD_BITS - 1 {
                    free &= (1u64 << (bit + 1)) - 1;
                }
            }
            while free != 0 {
                let b = free.trailing_zeros() as u64;
                f(2 * (w as u64 * WORD_BITS + b) + 1);
                free &= free - 1;
            }
            i = (w as u64 + 1) * WORD_BITS;
        }
        Ok(())
    }
}

/// Odd primes `<= limit` via a plain (non-segmented) sieve.
fn simple_odd_primes(limit: u64) -> Vec<u64> {
    let n = (limit + 1) / 2;
    let mut composite = vec![false; n as usize];
    let mut p = 3u64;
    while p * p <= limit {
        if !composite[((p - 1) / 2) as usize] {
            let mut m = p * p;
            while m <= limit {
                composite[((m - 1) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    (1..n)
        .filter(|&i| !composite[i as usize])
        .map(|i| 2 * i + 1)
        .collect()
}

/// Independent counting strategy: monolithic odd-bitmap sieve of Eratosthenes,
/// structured differently from [`SievePi`] on purpose (cross-check oracle).
pub fn simple_pi(limit: u64) -> Result<u64> {
    if limit < 2 {
        return Err(Error::Argument(format!("sieve limit must be >= 2, got {limit}")));
    }
    let n = ((limit + 1) / 2) as usize; // odds 1..=limit
    let mut composite = vec![false; n];
    composite[0] = true; // 1
    let mut p = 3u64;
    while p * p <= limit {
        if !composite[((p - 1) / 2) as usize] {
            let mut m = p * p;
            while m <= limit {
                composite[((m - 1) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    Ok(1 + composite.iter().filter(|&&c| !c).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let s = SievePi::new(100).unwrap();
        assert_eq!(s.query(2.0).unwrap(), 1);
        assert_eq!(s.query(10.0).unwrap(), 4);
        assert_eq!(s.query(100.0).unwrap(), 25);
        assert_eq!(s.query(97.0).unwrap(), 25);
        assert_eq!(s.query(96.9).unwrap(), 24);
        assert!(s.query(1.5).is_err());
        assert!(s.query(101.0).is_err());
        assert!(SievePi::new(1).is_err());
    }

    #[test]
    fn nondecreasing_and_matches_simple() {
        let s = SievePi::new(10_000).unwrap();
        let mut prev = 0;
        let mut count = 0u64;
        for n in 2..=10_000u64 {
            let v = s.query_u64(n);
            assert!(v >= prev);
            prev = v;
            if s.is_prime(n) {
                count += 1;
            }
        }
        assert_eq!(count, s.query_u64(10_000));
        assert_eq!(simple_pi(10_000).unwrap(), s.query_u64(10_000));
        assert_eq!(s.query_u64(10_000), 1229);
    }

    #[test]
    fn strategies_agree_to_ten_million() {
        let s = SievePi::new(10_000_000).unwrap();
        assert_eq!(simple_pi(10_000_000).unwrap(), s.total());
        assert_eq!(s.total(), 664_579);
    }

    #[test]
    fn million_value() {
        let s = SievePi::new(1_000_000).unwrap();
        assert_eq!(s.total(), 78_498);
    }

    #[test]
    fn prime_iteration_matches_rank_difference() {
        let s = SievePi::new(100_000).unwrap();
        let (lo, hi) = (31_400u64, 62_800u64);
        let mut listed = Vec::new();
        s.for_each_prime_in(lo, hi, |p| listed.push(p)).unwrap();
        assert_eq!(
            listed.len() as u64,
            s.query_u64(hi) - s.query_u64(lo - 1)
        );
        assert!(listed.windows(2).all(|w| w[0] < w[1]));
        for &p in listed.iter().take(50) {
            assert!(s.is_prime(p));
        }
        assert!(s.for_each_prime_in(0, 200_000, |_| ()).is_err());
    }

    #[test]
    fn word_boundary_queries() {
        let s = SievePi::new(1000).unwrap();
        // exercise queries at and around word spans (128 numbers per word)
        for n in [126u64, 127, 128, 129, 255, 256, 257, 999, 1000] {
            let brute = (2..=n).filter(|&k| (2..k).all(|d| d * d > k || k % d != 0)).count() as u64;
            assert_eq!(s.query_u64(n), brute, "n={n}");
        }
    }
}
