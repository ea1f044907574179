//! Two-generator numerical semigroups and their gap functions.
//!
//! For coprime `1 <= a < b` the semigroup `<a, b>` has `delta = (a-1)(b-1)/2`
//! gaps, all inside `[1, 2*delta - 1]`. Everything outside `[0, 2*delta]` is
//! answered by closed formulas; the window itself is sieved once.

use alloc::vec::Vec;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Largest `delta` we agree to sieve.
pub const MAX_SIEVE_DELTA: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    a: u64,
    b: u64,
    delta: u64,
    gaps: Vec<u64>,
    /// Elements strictly below `2 * delta`; there are exactly `delta` of them.
    elements: Vec<u64>,
}

impl Semigroup {
    /// The semigroup generated by `a` and `b`. `a = 1` is accepted and gives
    /// all of `N`, which models a smooth branch.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidPair { a, b, reason: "a must be at least 1" });
        }
        if a >= b {
            return Err(Error::InvalidPair { a, b, reason: "a must be smaller than b" });
        }
        if gcd(a, b) != 1 {
            return Err(Error::InvalidPair { a, b, reason: "a and b must be coprime" });
        }
        let delta = (a as u128 - 1) * (b as u128 - 1) / 2;
        if delta > MAX_SIEVE_DELTA as u128 {
            return Err(Error::TooLarge { delta });
        }
        let delta = delta as u64;
        let top = 2 * delta as usize;
        let (a_us, b_us) = (a as usize, b as usize);
        let mut member = alloc::vec![false; top + 1];
        member[0] = true;
        for i in 1..=top {
            member[i] = (i >= a_us && member[i - a_us]) || (i >= b_us && member[i - b_us]);
        }
        let mut gaps = Vec::with_capacity(delta as usize);
        let mut elements = Vec::with_capacity(delta as usize);
        for (i, &m) in member[..top].iter().enumerate() {
            if m {
                elements.push(i as u64);
            } else {
                gaps.push(i as u64);
            }
        }
        debug_assert_eq!(gaps.len() as u64, delta);
        Ok(Semigroup { a, b, delta, gaps, elements })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Largest gap, `-1` when there is none.
    pub fn frobenius(&self) -> i64 {
        self.gaps.last().map_or(-1, |&g| g as i64)
    }

    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        let m = m as u64;
        m >= 2 * self.delta || self.gaps.binary_search(&m).is_err()
    }

    /// `Gamma(n)`, the `n`-th smallest element (1-based).
    pub fn nth_element(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::OutOfRange { what: "semigroup rank", value: 0 });
        }
        let idx = n - 1;
        Ok(if idx < self.delta {
            self.elements[idx as usize]
        } else {
            2 * self.delta + (idx - self.delta)
        })
    }

    /// `R(m) = #(Gamma ∩ (-inf, m-1])`.
    pub fn count_r(&self, m: i64) -> u64 {
        if m <= 0 {
            return 0;
        }
        let m = m as u64;
        if m >= 2 * self.delta {
            m - self.delta
        } else {
            self.elements.partition_point(|&e| e < m) as u64
        }
    }

    /// `I(m) = #(G ∩ [m, +inf))`, with the negative integers counted as gaps.
    pub fn count_i(&self, m: i64) -> u64 {
        if m <= 0 {
            return self.delta + m.unsigned_abs();
        }
        let below = self.gaps.partition_point(|&g| g < m as u64) as u64;
        self.delta - below
    }

    pub fn gap_function(&self) -> GapFunction {
        GapFunction { delta: self.delta, gap_list: self.gaps.clone() }
    }
}

/// A non-increasing step function `I: Z -> N` with `I(m) = delta - m` for
/// `m <= 0`, unit drops only, and `I(m) = 0` from `2 * delta` on.
///
/// It is stored as the list of non-negative positions `m` where
/// `I(m) - I(m + 1) = 1`; there are exactly `delta` of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GapFunction {
    delta: u64,
    gap_list: Vec<u64>,
}

impl GapFunction {
    /// The `delta = 0` function `m -> max(0, -m)`, neutral for [`convolve`](Self::convolve).
    pub fn identity() -> Self {
        GapFunction { delta: 0, gap_list: Vec::new() }
    }

    pub fn from_gap_list(delta: u64, gap_list: Vec<u64>) -> Result<Self> {
        let sorted = gap_list.windows(2).all(|w| w[0] < w[1]);
        let in_range = gap_list.iter().all(|&g| g < 2 * delta.max(1));
        if gap_list.len() as u64 != delta || !sorted || !in_range {
            return Err(Error::OutOfRange { what: "gap list", value: gap_list.len() as i128 });
        }
        Ok(GapFunction { delta, gap_list })
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn gap_list(&self) -> &[u64] {
        &self.gap_list
    }

    pub fn eval(&self, m: i64) -> u64 {
        if m <= 0 {
            return self.delta + m.unsigned_abs();
        }
        self.delta - self.gap_list.partition_point(|&g| g < m as u64) as u64
    }

    /// Infimum convolution `s -> min_m self(m) + other(s - m)`.
    ///
    /// The minimum is taken over `m` in `[0, 2 * self.delta]`. For `m < 0`
    /// lowering `m` adds exactly one to `self(m)` and removes at most one from
    /// `other(s - m)`, so the sum never decreases; for `m > 2 * self.delta`
    /// `self(m)` stays `0` while `other(s - m)` is non-decreasing as `m` grows.
    pub fn convolve(&self, other: &GapFunction) -> GapFunction {
        let delta = self.delta + other.delta;
        let window = 2 * self.delta as i64;
        let value = |s: i64| -> u64 {
            (0..=window).map(|m| self.eval(m) + other.eval(s - m)).min().unwrap_or(0)
        };
        let mut gap_list = Vec::with_capacity(delta as usize);
        let mut current = value(0);
        debug_assert_eq!(current, delta);
        for s in 0..2 * delta as i64 {
            let next = value(s + 1);
            if current != next {
                debug_assert_eq!(current, next + 1);
                gap_list.push(s as u64);
            }
            current = next;
        }
        debug_assert_eq!(gap_list.len() as u64, delta);
        GapFunction { delta, gap_list }
    }
}

/// Convolution of all parts (the identity for an empty list).
pub fn convolve_all(parts: &[GapFunction]) -> GapFunction {
    match parts.split_first() {
        None => GapFunction::identity(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, f| acc.convolve(f)),
    }
}

/// `V(m) = (I^1 ⋄ ... ⋄ I^n)(m + delta)`, with `delta` the summed deltas.
pub fn v_function(parts: &[GapFunction], m: u64) -> u64 {
    let total = convolve_all(parts);
    total.eval((m + total.delta) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sieve_contains(a: u64, b: u64, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        let m = m as u64;
        (0..=m / b).any(|v| (m - v * b).is_multiple_of(a))
    }

    #[test]
    fn smallest_semigroups() {
        let s = Semigroup::new(2, 3).unwrap();
        assert_eq!(s.delta(), 1);
        assert_eq!(s.gaps(), &[1]);
        let s = Semigroup::new(1, 8).unwrap();
        assert_eq!(s.delta(), 0);
        assert!(s.gaps().is_empty());
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.nth_element(3).unwrap(), 2);
    }

    #[test]
    fn four_seven() {
        let s = Semigroup::new(4, 7).unwrap();
        let oracle: Vec<u64> = (0..40).filter(|&m| !sieve_contains(4, 7, m)).map(|m| m as u64).collect();
        assert_eq!(oracle, vec![1, 2, 3, 5, 6, 9, 10, 13, 17]);
        assert_eq!(s.gaps(), oracle.as_slice());
        assert_eq!(s.delta(), 9);
        assert_eq!(s.frobenius(), 17);
        assert!(s.contains(11));
        assert!(!s.contains(17));
        assert_eq!(s.nth_element(1).unwrap(), 0);
        assert_eq!(s.nth_element(2).unwrap(), 4);
        assert_eq!(s.nth_element(4).unwrap(), 8);
        assert_eq!(s.nth_element(5).unwrap(), 11);
        assert_eq!(s.count_r(8), 3);
        assert_eq!(s.count_r(1), 1);
        assert_eq!(s.count_r(0), 0);
        assert_eq!(s.count_i(0), 9);
        assert_eq!(s.count_i(8), 4);
        assert_eq!(s.count_i(-2), 11);
        assert_eq!(s.count_r(18), 9);
    }

    #[test]
    fn negatives_are_not_members() {
        assert!(!Semigroup::new(2, 3).unwrap().contains(-1));
    }

    #[test]
    fn validation() {
        assert!(matches!(Semigroup::new(4, 6), Err(Error::InvalidPair { reason, .. }) if reason.contains("coprime")));
        assert!(matches!(Semigroup::new(7, 4), Err(Error::InvalidPair { reason, .. }) if reason.contains("smaller")));
        assert!(matches!(Semigroup::new(0, 4), Err(Error::InvalidPair { reason, .. }) if reason.contains("at least")));
        assert!(Semigroup::new(3, 3).is_err());
    }

    #[test]
    fn nth_element_vs_sieve() {
        for (a, b) in [(2u64, 3u64), (3, 7), (4, 7), (5, 11), (1, 5)] {
            let s = Semigroup::new(a, b).unwrap();
            let oracle: Vec<u64> = (0..200).filter(|&m| sieve_contains(a, b, m)).map(|m| m as u64).collect();
            for (i, &e) in oracle.iter().enumerate().take(60) {
                assert_eq!(s.nth_element(i as u64 + 1).unwrap(), e, "({a},{b}) rank {}", i + 1);
            }
        }
    }

    #[test]
    fn convolution_identity_and_value() {
        let f = Semigroup::new(2, 3).unwrap().gap_function();
        let id = GapFunction::identity();
        let c = f.convolve(&id);
        for s in -5..=10 {
            assert_eq!(c.eval(s), f.eval(s));
        }
        let ff = f.convolve(&f);
        // exhaustive minimum over a wide window
        let brute = (-50..=50).map(|m| f.eval(m) + f.eval(-m)).min().unwrap();
        assert_eq!(brute, 2);
        assert_eq!(ff.eval(0), 2);
        assert_eq!(ff.delta(), 2);
    }

    #[test]
    fn convolution_window_matches_wide_minimum() {
        let f = Semigroup::new(3, 5).unwrap().gap_function();
        let g = Semigroup::new(2, 7).unwrap().gap_function();
        let c = f.convolve(&g);
        for s in -10..=30 {
            let wide = (-60..=60).map(|m| f.eval(m) + g.eval(s - m)).min().unwrap();
            assert_eq!(c.eval(s), wide, "s = {s}");
        }
    }

    #[test]
    fn v_function_single_part() {
        let s47 = Semigroup::new(4, 7).unwrap();
        // gaps of <4,7> that are >= 9: {9, 10, 13, 17}
        assert_eq!(v_function(&[s47.gap_function()], 0), 4);
        assert_eq!(v_function(&[Semigroup::new(2, 3).unwrap().gap_function()], 0), 1);
        for m in 9..30 {
            assert_eq!(v_function(&[s47.gap_function()], m), 0);
        }
    }
}
