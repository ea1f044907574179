//! Small integer helpers shared by the other modules.

use alloc::vec::Vec;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn perfect_sqrt(n: u128) -> Option<u128> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

/// Triangular number `(j+1)(j+2)/2`.
pub fn triangular(j: i64) -> i64 {
    (j + 1) * (j + 2) / 2
}

/// Prime factorization by trial division, ascending primes.
///
/// Intended for desk-scale inputs; around `10^12` the loop already takes a
/// noticeable fraction of a second.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Squarefree decomposition `n = c^2 * s` with `s` squarefree.
pub fn square_part(n: u64) -> (u64, u64) {
    let mut c = 1;
    let mut s = 1;
    for (p, e) in factorize(n) {
        c *= p.pow(e / 2);
        if e % 2 == 1 {
            s *= p;
        }
    }
    (c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_roundtrips() {
        for n in 1..3000u64 {
            let prod: u64 = factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
        assert_eq!(factorize(209), [(11, 1), (19, 1)]);
        assert_eq!(factorize(108), [(2, 2), (3, 3)]);
    }

    #[test]
    fn square_roots() {
        assert_eq!(perfect_sqrt(169), Some(13));
        assert_eq!(perfect_sqrt(73), None);
        assert_eq!(isqrt(u64::MAX as u128), 4294967295);
        assert_eq!(square_part(45), (3, 5));
    }
}
