//! Enumeration of candidates of a fixed genus, the `a + b = 3d` split, sectors
//! below the line `b = phi^4 a`, and the known exceptional families.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};
use crate::families::{fibonacci, Candidate};
use crate::obstruction::check_single;
use crate::quadring::{big_perfect_sqrt, Surd};

/// The degree `d = (K + 3)/2` where `K^2 = 4(a-1)(b-1) + 8g + 1`, if integral.
pub fn degree_for(a: u64, b: u64, g: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return None;
    }
    let disc = BigInt::from(4) * (a - 1) * (b - 1) + BigInt::from(8) * g + 1;
    let k = big_perfect_sqrt(&disc)?;
    ((k + 3u32) / 2u32).to_u64()
}

fn divisors(m: u64) -> Vec<u64> {
    let mut out = alloc::vec![1u64];
    for (p, e) in factorize(m) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All candidates of genus `g` with degree in `degrees`, with admissibility
/// attached, sorted by `(d, a)`.
///
/// With `allow_smooth`, a degree with `(d-1)(d-2) = 2g` contributes the single
/// pair `(1, 3d - 1)`; otherwise such degrees are skipped.
pub fn enumerate_degrees(g: u64, degrees: RangeInclusive<u64>, allow_smooth: bool) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for d in degrees {
        if d == 0 {
            continue;
        }
        let m = (d as i128 - 1) * (d as i128 - 2) - 2 * g as i128;
        if m < 0 {
            continue;
        }
        if m == 0 {
            if allow_smooth {
                let mut c = Candidate::new(g, 1, 3 * d - 1, d)?;
                c.admissible = Some(check_single(1, 3 * d - 1, g, d)?.admissible());
                out.push(c);
            }
            continue;
        }
        let m: u64 = m.try_into().map_err(|_| Error::Overflow)?;
        for e in divisors(m) {
            let f = m / e;
            if e >= f {
                break;
            }
            let (a, b) = (e + 1, f + 1);
            if gcd(a, b) != 1 {
                continue;
            }
            let mut c = Candidate::new(g, a, b, d)?;
            c.admissible = Some(check_single(a, b, g, d)?.admissible());
            out.push(c);
        }
    }
    out.sort_by_key(|c| (c.d, c.a));
    Ok(out)
}

pub fn enumerate(g: u64, d_max: u64, allow_smooth: bool) -> Result<EnumerationReport> {
    if d_max < 3 {
        return Err(Error::OutOfRange { what: "d_max (must be at least 3)", value: d_max as i128 });
    }
    let candidates = enumerate_degrees(g, 1..=d_max, allow_smooth)?;
    Ok(EnumerationReport::from_candidates(g, d_max, candidates))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExceptionFamily {
    /// `(l, 9l + 1)`, `d = 3l`, genus 1.
    NineLPlusOne,
    /// `(p, p + 3)`, `d = p + 3`, genus `p + 2`.
    PPlusThree,
    /// `(p, 2p - 1)`, `d = 2p - 1`, genus `(p-1)(p-2)`.
    TwoPMinusOne,
    /// `(3n, 21n + 1)`, `d = 8n`, genus `(n-1)(n-2)/2`.
    ThreeNTwentyOneN,
    /// Rational curves: `(l, l + 1)`, `d = l + 1`.
    Consecutive,
    /// Rational curves: `(l, 4l - 1)`, `d = 2l`.
    FourLMinusOne,
    /// Rational curves: `(F_{2l-1}, F_{2l+3})`.
    FibonacciOdd,
    /// Rational curves: `(F_{2l-1}^2, F_{2l+1}^2)`.
    FibonacciSquare,
    /// Rational curves: `(3, 22)` and `(6, 43)`.
    RationalSporadic,
}

impl ExceptionFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExceptionFamily::NineLPlusOne => "(l,9l+1)",
            ExceptionFamily::PPlusThree => "(p,p+3)",
            ExceptionFamily::TwoPMinusOne => "(p,2p-1)",
            ExceptionFamily::ThreeNTwentyOneN => "(3n,21n+1)",
            ExceptionFamily::Consecutive => "(l,l+1)",
            ExceptionFamily::FourLMinusOne => "(l,4l-1)",
            ExceptionFamily::FibonacciOdd => "(F_{2l-1},F_{2l+3})",
            ExceptionFamily::FibonacciSquare => "(F_{2l-1}^2,F_{2l+1}^2)",
            ExceptionFamily::RationalSporadic => "rational sporadic",
        }
    }
}

fn fib_u64(n: u64) -> Option<u64> {
    fibonacci(n).to_u64()
}

/// Index `l >= 2` with `(a, b) = (F_{2l-1}, F_{2l+3})`, or the squared version.
fn fibonacci_index(a: u64, b: u64, squared: bool) -> Option<u64> {
    let mut l = 2;
    loop {
        let lo = fib_u64(2 * l - 1)?;
        let (x, y) = if squared {
            let hi = fib_u64(2 * l + 1)?;
            (lo.checked_mul(lo)?, hi.checked_mul(hi)?)
        } else {
            (lo, fib_u64(2 * l + 3)?)
        };
        if x > a {
            return None;
        }
        if (x, y) == (a, b) {
            return Some(l);
        }
        l += 1;
    }
}

/// Syntactic family match on `(a, b, d, g)`.
pub fn family_of(c: &Candidate) -> Option<ExceptionFamily> {
    let (a, b, d, g) = (c.a as u128, c.b as u128, c.d as u128, c.g as u128);
    if g == 0 {
        return if b == a + 1 && a >= 2 {
            Some(ExceptionFamily::Consecutive)
        } else if b + 1 == 4 * a && a >= 2 {
            Some(ExceptionFamily::FourLMinusOne)
        } else if fibonacci_index(c.a, c.b, false).is_some() {
            Some(ExceptionFamily::FibonacciOdd)
        } else if fibonacci_index(c.a, c.b, true).is_some() {
            Some(ExceptionFamily::FibonacciSquare)
        } else if matches!((a, b), (3, 22) | (6, 43)) {
            Some(ExceptionFamily::RationalSporadic)
        } else {
            None
        };
    }
    if g == 1 && b == 9 * a + 1 && d == 3 * a {
        Some(ExceptionFamily::NineLPlusOne)
    } else if b == a + 3 && d == a + 3 && g == a + 2 {
        Some(ExceptionFamily::PPlusThree)
    } else if a >= 2 && b + 1 == 2 * a && d == b && g == (a - 1) * (a - 2) {
        Some(ExceptionFamily::TwoPMinusOne)
    } else if a % 3 == 0 && a > 6 && b == 7 * a + 1 && 3 * d == 8 * a && {
        let n = a / 3;
        2 * g == (n - 1) * (n - 2)
    } {
        Some(ExceptionFamily::ThreeNTwentyOneN)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedException {
    pub candidate: Candidate,
    pub family: Option<ExceptionFamily>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    pub g: u64,
    pub d_max: u64,
    pub candidates: Vec<Candidate>,
    pub admissible: Vec<Candidate>,
    pub on_3d_line: Vec<Candidate>,
    pub exceptions: Vec<TaggedException>,
}

impl EnumerationReport {
    /// Builds the report from candidates with admissibility attached; the
    /// input order does not matter.
    pub fn from_candidates(g: u64, d_max: u64, mut candidates: Vec<Candidate>) -> Self {
        candidates.sort_by_key(|c| (c.d, c.a));
        let admissible: Vec<Candidate> =
            candidates.iter().filter(|c| c.admissible == Some(true)).cloned().collect();
        let (on_3d_line, off): (Vec<_>, Vec<_>) = admissible.iter().cloned().partition(Candidate::on_3d_line);
        let exceptions = off.into_iter().map(|c| TaggedException { family: family_of(&c), candidate: c }).collect();
        EnumerationReport { g, d_max, candidates, admissible, on_3d_line, exceptions }
    }

    pub fn untagged(&self) -> impl Iterator<Item = &Candidate> {
        self.exceptions.iter().filter(|e| e.family.is_none()).map(|e| &e.candidate)
    }

    /// Largest degree of an admissible candidate off the line `a + b = 3d`.
    pub fn max_exceptional_degree(&self) -> Option<u64> {
        self.exceptions.iter().map(|e| e.candidate.d).max()
    }
}

/// The open region `F_{2l+1}^2 / F_{2l-1}^2 < b/a < F_{2l+3}^2 / F_{2l+1}^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub l: u64,
    pub low: BigRational,
    pub high: BigRational,
    /// `(F_{2l-1}, F_{2l+3})`, the one pair removed in the punctured sector.
    pub puncture: (BigInt, BigInt),
}

impl Sector {
    pub fn new(l: u64) -> Result<Self> {
        if l < 2 {
            return Err(Error::OutOfRange { what: "sector index (must be at least 2)", value: l as i128 });
        }
        let (lo, mid, hi) = (fibonacci(2 * l - 1), fibonacci(2 * l + 1), fibonacci(2 * l + 3));
        Ok(Sector {
            l,
            low: BigRational::new(mid.pow(2), lo.pow(2)),
            high: BigRational::new(hi.pow(2), mid.pow(2)),
            puncture: (lo, hi),
        })
    }

    pub fn contains(&self, a: u64, b: u64) -> bool {
        let ratio = BigRational::new(b.into(), a.into());
        self.low < ratio && ratio < self.high
    }
}

/// Whether `b >= phi^4 a`, i.e. `2b - 7a >= 3 sqrt5 a`.
fn at_or_above_phi4(a: u64, b: u64) -> bool {
    let lhs = 2 * b as i128 - 7 * a as i128;
    lhs >= 0 && lhs * lhs >= 45 * (a as i128) * (a as i128)
}

/// The sector strictly containing `b/a`, if any.
pub fn sector_index(a: u64, b: u64) -> Option<Sector> {
    if a == 0 || a >= b || at_or_above_phi4(a, b) {
        return None;
    }
    let ratio = BigRational::new(b.into(), a.into());
    let mut l = 2;
    loop {
        let s = Sector::new(l).ok()?;
        if ratio <= s.low {
            return None;
        }
        if ratio < s.high {
            return Some(s);
        }
        l += 1;
    }
}

/// `(2(2g-1) F_{2l+1} + 2, ceil(2(2g-1) F_{2l+1}^2 / F_{2l-1}) + 2)`.
pub fn sector_bounds(g: u64, l: u64) -> Result<(BigInt, BigInt)> {
    if g < 1 {
        return Err(Error::OutOfRange { what: "genus (must be at least 1)", value: g as i128 });
    }
    if l < 2 {
        return Err(Error::OutOfRange { what: "sector index (must be at least 2)", value: l as i128 });
    }
    let c = BigInt::from(2) * (2 * g - 1);
    let (lo, mid) = (fibonacci(2 * l - 1), fibonacci(2 * l + 1));
    let a_bound = &c * &mid + 2;
    let b_bound = BigRational::new(&c * mid.pow(2), lo).ceil().to_integer() + 2;
    Ok((a_bound, b_bound))
}

/// For reduced `m1/n1 < m2/n2` and `P = m2 n1 - m1 n2`: any fraction `b/a`
/// strictly between them has `b >= (m1 + m2)/P` and `a >= (n1 + n2)/P`.
/// Returns `(b_min, a_min)`.
pub fn mediant_bound(m1: u64, n1: u64, m2: u64, n2: u64) -> Result<(BigRational, BigRational)> {
    if n1 == 0 || n2 == 0 || gcd(m1, n1) != 1 || gcd(m2, n2) != 1 {
        return Err(Error::NotReduced);
    }
    let p = m2 as i128 * n1 as i128 - m1 as i128 * n2 as i128;
    if p <= 0 {
        return Err(Error::NotReduced);
    }
    let p = BigInt::from(p);
    Ok((
        BigRational::new(BigInt::from(m1) + m2, p.clone()),
        BigRational::new(BigInt::from(n1) + n2, p),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Slopes {
    Single(BigRational),
    Pair { plus: Surd, minus: Surd },
}

/// Asymptotic slopes `(1 - 2pq ± sqrt(1 - 4pq)) / (2p^2)`, or `q^2` for `p = 0`.
pub fn asymptote_slopes(p: &BigRational, q: &BigRational) -> Result<Slopes> {
    let disc = BigRational::one() - BigRational::from_integer(4.into()) * p * q;
    if !disc.is_positive() {
        return Err(Error::OutOfRange { what: "1 - 4pq (must be positive)", value: 0 });
    }
    if p.is_zero() {
        return Ok(Slopes::Single(q * q));
    }
    let denom = BigRational::from_integer(2.into()) * p * p;
    let base = Surd::from_rational((BigRational::one() - BigRational::from_integer(2.into()) * p * q) / &denom);
    let root = Surd::sqrt(&disc)?.scale(&denom.recip());
    Ok(Slopes::Pair { plus: base.checked_add(&root)?, minus: base.checked_sub(&root)? })
}

/// Members of the exceptional families with a known curve:
/// kind 1 is `(p, p+3)`, kind 2 is `(p, 2p-1)`, kind 3 is `(3n, 21n+1)`.
pub fn exceptional_gen(kind: u8, param: u64) -> Result<Candidate> {
    let p = param;
    let (g, a, b, d) = match kind {
        1 if p >= 2 && !p.is_multiple_of(3) => (p + 2, p, p + 3, p + 3),
        2 if p >= 2 => ((p - 1) * (p - 2), p, 2 * p - 1, 2 * p - 1),
        3 if p > 2 => ((p - 1) * (p - 2) / 2, 3 * p, 21 * p + 1, 8 * p),
        1..=3 => return Err(Error::OutOfRange { what: "family parameter", value: p as i128 }),
        _ => return Err(Error::OutOfRange { what: "family kind (1, 2 or 3)", value: kind as i128 }),
    };
    let mut c = Candidate::new(g, a, b, d)?;
    c.admissible = Some(check_single(a, b, g, d)?.admissible());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn degrees() {
        assert_eq!(degree_for(1, 8, 1), Some(3));
        assert_eq!(degree_for(4, 7, 0), None);
        assert_eq!(degree_for(5, 8, 7), Some(8));
        assert_eq!(degree_for(8, 55, 1), Some(21));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
    }

    #[test]
    fn genus_one_small() {
        let rep = enumerate(1, 25, true).unwrap();
        let has = |a, b, d| rep.admissible.iter().any(|c| (c.a, c.b, c.d) == (a, b, d));
        assert!(has(1, 8, 3));
        assert!(has(8, 55, 21));
        let off: Vec<_> = rep
            .admissible
            .iter()
            .filter(|c| c.d > 9 && !c.on_3d_line() && !(c.b == 9 * c.a + 1 && c.d == 3 * c.a))
            .map(|c| (c.a, c.b, c.d))
            .collect();
        assert_eq!(off, [(6, 37, 15), (9, 64, 24)]);
        assert!(enumerate(1, 2, false).is_err());
    }

    #[test]
    fn genus_two_has_nothing_on_the_line() {
        let rep = enumerate(2, 40, false).unwrap();
        assert!(rep.on_3d_line.is_empty());
    }

    #[test]
    fn sectors() {
        let s = sector_index(2, 13).unwrap();
        assert_eq!(s.l, 2);
        assert_eq!((s.low.clone(), s.high.clone()), (r(25, 4), r(169, 25)));
        assert_eq!(s.puncture, (BigInt::from(2), BigInt::from(13)));
        assert!(sector_index(1, 8).is_none());
        assert_eq!(sector_index(3, 19).unwrap().l, 2);
        assert!(sector_index(4, 25).is_none());
        assert!(sector_index(1, 6).is_none());
        assert!(at_or_above_phi4(2, 14));
        assert!(!at_or_above_phi4(89, 610));
        assert!(at_or_above_phi4(144, 987));
    }

    #[test]
    fn bounds() {
        assert_eq!(sector_bounds(1, 2).unwrap().0, BigInt::from(12));
        assert_eq!(sector_bounds(1, 3).unwrap().0, BigInt::from(28));
        assert_eq!(sector_bounds(2, 2).unwrap().0, BigInt::from(32));
        // ceil(2 * 25 / 2) + 2
        assert_eq!(sector_bounds(1, 2).unwrap().1, BigInt::from(27));
        assert!(sector_bounds(0, 2).is_err());
        assert!(sector_bounds(1, 1).is_err());
    }

    #[test]
    fn mediants() {
        assert_eq!(mediant_bound(25, 4, 13, 2).unwrap(), (r(19, 1), r(3, 1)));
        assert_eq!(mediant_bound(1, 2, 2, 3).unwrap(), (r(3, 1), r(5, 1)));
        assert_eq!(mediant_bound(13, 2, 169, 25).unwrap(), (r(14, 1), r(27, 13)));
        assert_eq!(mediant_bound(2, 4, 2, 3), Err(Error::NotReduced));
        assert_eq!(mediant_bound(2, 3, 1, 2), Err(Error::NotReduced));
    }

    #[test]
    fn slopes() {
        let Slopes::Pair { plus, minus } = asymptote_slopes(&r(1, 3), &r(1, 3)).unwrap() else { panic!() };
        assert_eq!(plus, Surd::new(r(7, 2), r(3, 2), 5).unwrap());
        assert_eq!(minus, Surd::new(r(7, 2), r(-3, 2), 5).unwrap());
        assert_eq!(asymptote_slopes(&r(0, 1), &r(2, 1)).unwrap(), Slopes::Single(r(4, 1)));
        assert_eq!(asymptote_slopes(&r(0, 1), &r(5, 2)).unwrap(), Slopes::Single(r(25, 4)));
        assert!(asymptote_slopes(&r(1, 2), &r(1, 2)).is_err());
    }

    #[test]
    fn exceptional_generators() {
        let c = exceptional_gen(1, 5).unwrap();
        assert_eq!((c.a, c.b, c.d, c.g, c.admissible), (5, 8, 8, 7, Some(true)));
        let c = exceptional_gen(2, 4).unwrap();
        assert_eq!((c.a, c.b, c.d, c.g, c.admissible), (4, 7, 7, 6, Some(true)));
        assert!(!c.on_3d_line());
        let c = exceptional_gen(3, 3).unwrap();
        assert_eq!((c.a, c.b, c.d, c.g, c.admissible), (9, 64, 24, 1, Some(true)));
        assert_eq!(family_of(&c), Some(ExceptionFamily::ThreeNTwentyOneN));
        assert!(exceptional_gen(1, 6).is_err());
        assert!(exceptional_gen(3, 2).is_err());
        assert!(exceptional_gen(4, 3).is_err());
    }
}
