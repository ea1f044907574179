//! The ring of integers `Z[phi]` of `Q(sqrt 5)` and the equation `x^2 - 5y^2 = n`.
//!
//! Elements are stored as `(u + v sqrt5) / 2` with `u ≡ v (mod 2)`, so the
//! golden ratio is `(1, 1)` and an integer solution `x + y sqrt5` of the Pell
//! equation is `(2x, 2y)`.
//!
//! The generating set of a solvable `n` is only defined up to units and
//! conjugation. [`canonical`] fixes one representative per orbit
//! `{±phi^(2h) z, ±phi^(2h) conj(z)}`: the element of smallest `|v|`, written
//! with `u, v >= 0`. This choice is ours.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, is_prime, perfect_sqrt, square_part};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    u: BigInt,
    v: BigInt,
}

impl QuadInt {
    pub fn new(u: BigInt, v: BigInt) -> Result<Self> {
        if u.is_odd() != v.is_odd() {
            return Err(Error::NotIntegral { u: u.to_string(), v: v.to_string() });
        }
        Ok(QuadInt { u, v })
    }

    /// `x + y sqrt5`.
    pub fn from_xy(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadInt { u: x.into() * 2, v: y.into() * 2 }
    }

    pub fn from_halves(u: i64, v: i64) -> Result<Self> {
        Self::new(u.into(), v.into())
    }

    pub fn one() -> Self {
        QuadInt { u: BigInt::from(2), v: BigInt::zero() }
    }

    pub fn phi() -> Self {
        QuadInt { u: BigInt::one(), v: BigInt::one() }
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    /// `(x, y)` with `self = x + y sqrt5`, when both are integers.
    pub fn xy(&self) -> Option<(BigInt, BigInt)> {
        (self.u.is_even() && self.v.is_even()).then(|| (&self.u / 2, &self.v / 2))
    }

    pub fn conj(&self) -> Self {
        QuadInt { u: self.u.clone(), v: -&self.v }
    }

    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - BigInt::from(5) * &self.v * &self.v) / 4
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value, for display columns only.
    pub fn to_f64(&self) -> f64 {
        Surd::from_quad(self).to_f64()
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        let u = &self.u * &rhs.u + BigInt::from(5) * &self.v * &rhs.v;
        let v = &self.u * &rhs.v + &self.v * &rhs.u;
        QuadInt { u: u / 2, v: v / 2 }
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        &self * &rhs
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt { u: &self.u + &rhs.u, v: &self.v + &rhs.v }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt { u: &self.u - &rhs.u, v: &self.v - &rhs.v }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { u: -self.u, v: -self.v }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { u: -&self.u, v: -&self.v }
    }
}

/// `18+8√5` for integral elements, `(7+3√5)/2` otherwise.
impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, halves) = match self.xy() {
            Some((x, y)) => (x, y, false),
            None => (self.u.clone(), self.v.clone(), true),
        };
        if halves {
            f.write_str("(")?;
        }
        if y.is_zero() {
            write!(f, "{x}")?;
        } else {
            if !x.is_zero() {
                write!(f, "{x}")?;
                f.write_str(if y.is_negative() { "-" } else { "+" })?;
            } else if y.is_negative() {
                f.write_str("-")?;
            }
            let m = y.abs();
            if !m.is_one() {
                write!(f, "{m}")?;
            }
            f.write_str("√5")?;
        }
        if halves {
            f.write_str(")/2")?;
        }
        Ok(())
    }
}

/// `phi^k` for any integer `k`.
pub fn phi_pow(k: i64) -> QuadInt {
    let base = if k >= 0 { QuadInt::phi() } else { QuadInt { u: BigInt::from(-1), v: BigInt::one() } };
    base.pow(k.unsigned_abs() as u32)
}

/// Whether `x^2 - 5y^2 = n` has an integer solution: every prime `≡ ±2 (mod 5)`
/// divides `n` to an even power. The sign of `n` plays no role since
/// `2 + sqrt5` has norm `-1`.
pub fn has_solution(n: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "n (must be nonzero)", value: 0 });
    }
    Ok(factorize(n.unsigned_abs()).iter().all(|&(p, e)| !matches!(p % 5, 2 | 3) || e % 2 == 0))
}

/// An element `x + y sqrt5` of norm `p`, found by ascending `y`.
pub fn fundamental_prime(p: u64) -> Result<QuadInt> {
    if !is_prime(p) {
        return Err(Error::OutOfRange { what: "prime", value: p as i128 });
    }
    if matches!(p % 5, 2 | 3) {
        return Err(Error::NotSplit { p });
    }
    let p = p as u128;
    for y in 0..=p {
        if let Some(x) = perfect_sqrt(p + 5 * y * y) {
            return Ok(QuadInt::from_xy(x, y));
        }
    }
    Err(Error::Internal("no element of prime norm found below the search guard"))
}

/// Structure of a coprime-solvable `n = a_part * n_prime`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellDecomposition {
    pub n: i64,
    /// One of 1, 4, 5, 20.
    pub a_part: u64,
    /// Product of primes `≡ ±1 (mod 5)`.
    pub n_prime: u64,
    pub omega: u32,
    /// Number of orbits of coprime solutions, `2^(omega-1)` (1 when `omega = 0`).
    pub big_omega: u64,
    /// A coprime solution `(x, y)` with `x > 0`, `y >= 0` and `y` small.
    pub witness: (BigInt, BigInt),
    primes: Vec<(u64, u32)>,
}

impl PellDecomposition {
    pub fn primes(&self) -> &[(u64, u32)] {
        &self.primes
    }

    /// One coprime integral element per orbit, before canonicalization.
    pub fn orbit_seeds(&self) -> Result<Vec<QuadInt>> {
        let a_elem = match self.a_part {
            1 => QuadInt::one(),
            4 => QuadInt::from_xy(3, 1),
            5 => QuadInt::from_xy(5, 2),
            20 => QuadInt::from_xy(5, 1),
            _ => return Err(Error::Internal("a-part outside {1, 4, 5, 20}")),
        };
        let alphas = self
            .primes
            .iter()
            .map(|&(p, e)| Ok(fundamental_prime(p)?.pow(e)))
            .collect::<Result<Vec<_>>>()?;
        let sign_fix = (self.n < 0).then(|| QuadInt::from_xy(2, 1));
        let mut out = Vec::with_capacity(self.big_omega as usize);
        for mask in 0..self.big_omega {
            let mut z = a_elem.clone();
            for (i, alpha) in alphas.iter().enumerate() {
                let conjugated = i > 0 && (mask >> (i - 1)) & 1 == 1;
                z = if conjugated { &z * &alpha.conj() } else { &z * alpha };
            }
            if let Some(s) = &sign_fix {
                z = &z * s;
            }
            out.push(z);
        }
        Ok(out)
    }
}

/// Decomposes `n` when `x^2 - 5y^2 = n` has a solution with `gcd(x, y) = 1`:
/// `n = a * n'` with `a ∈ {1, 4, 5, 20}` and every prime of `n'` congruent to
/// `±1 (mod 5)`. Negative `n` is treated through `|n|`.
pub fn coprime_decompose(n: i64) -> Option<PellDecomposition> {
    if n == 0 {
        return None;
    }
    let mut a_part = 1;
    let mut primes = Vec::new();
    for (p, e) in factorize(n.unsigned_abs()) {
        match (p, e) {
            (2, 2) => a_part *= 4,
            (5, 1) => a_part *= 5,
            (2, _) | (5, _) => return None,
            _ if p % 5 == 1 || p % 5 == 4 => primes.push((p, e)),
            _ => return None,
        }
    }
    let omega = primes.len() as u32;
    let big_omega = if omega == 0 { 1 } else { 1u64 << (omega - 1) };
    let mut dec = PellDecomposition {
        n,
        a_part,
        n_prime: n.unsigned_abs() / a_part,
        omega,
        big_omega,
        witness: (BigInt::zero(), BigInt::zero()),
        primes,
    };
    let seed = dec.orbit_seeds().ok()?.into_iter().next()?;
    dec.witness = small_coprime_solution(&seed)?;
    Some(dec)
}

/// The coprime integral element of smallest `|y|` near `z` in its orbit.
fn small_coprime_solution(z: &QuadInt) -> Option<(BigInt, BigInt)> {
    let step = phi_pow(2);
    let back = phi_pow(-2);
    let mut best: Option<(BigInt, BigInt)> = None;
    for start in [z.clone(), z.conj()] {
        for dir in [&step, &back] {
            let mut w = start.clone();
            for _ in 0..12 {
                if let Some((x, y)) = w.xy() {
                    if x.gcd(&y).is_one() {
                        let cand = (x.abs(), y.abs());
                        if best.as_ref().is_none_or(|b| (&cand.1, &cand.0) < (&b.1, &b.0)) {
                            best = Some(cand);
                        }
                    }
                }
                w = &w * dir;
            }
        }
    }
    best
}

/// One canonical element per orbit of coprime solutions of `x^2 - 5y^2 = n`.
pub fn generating_set(n: i64) -> Result<Vec<QuadInt>> {
    let dec = coprime_decompose(n).ok_or(Error::Unsolvable { n })?;
    Ok(dec.orbit_seeds()?.iter().map(canonical).collect())
}

/// Orbit representative under `±phi^(2h)` and conjugation: smallest `|v|`,
/// then `u, v >= 0`. Since the four sign patterns of `(u, v)` lie in the same
/// orbit and `u^2 = 4N + 5v^2` is fixed by `|v|`, the result is unique.
///
/// Along `h -> phi^(2h) z` the coefficient `v` is monotone (positive norm) or
/// convex (negative norm), so a walk by `phi^(±2)` finds its minimum.
pub fn canonical(z: &QuadInt) -> QuadInt {
    if z.is_zero() {
        return z.clone();
    }
    let up = phi_pow(2);
    let down = phi_pow(-2);
    let mut w = z.clone();
    for dir in [&up, &down] {
        loop {
            let next = &w * dir;
            if next.v.abs() < w.v.abs() {
                w = next;
            } else {
                break;
            }
        }
    }
    QuadInt { u: w.u.abs(), v: w.v.abs() }
}

/// An exact real number `r + c sqrt(D)` with rational `r, c` and squarefree `D > 1`
/// (or `c = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: BigRational,
    coeff: BigRational,
    radicand: BigInt,
}

impl Surd {
    pub fn from_rational(r: BigRational) -> Self {
        Surd { rational: r, coeff: BigRational::zero(), radicand: BigInt::one() }
    }

    /// `r + c sqrt(D)`; `D` is reduced to its squarefree part.
    pub fn new(r: BigRational, c: BigRational, d: u64) -> Result<Self> {
        if d == 0 {
            return Ok(Self::from_rational(r));
        }
        let (sq, free) = square_part(d);
        let c = c * BigRational::from_integer(sq.into());
        if free == 1 {
            return Ok(Self::from_rational(r + c));
        }
        if c.is_zero() {
            return Ok(Self::from_rational(r));
        }
        Ok(Surd { rational: r, coeff: c, radicand: free.into() })
    }

    /// `sqrt(q)` for a rational `q >= 0`.
    pub fn sqrt(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::OutOfRange { what: "square root argument", value: -1 });
        }
        let num = q.numer().to_u64().ok_or(Error::Overflow)?;
        let den = q.denom().to_u64().ok_or(Error::Overflow)?;
        // sqrt(N/M) = sqrt(N M) / M
        let prod = (num as u128 * den as u128).try_into().map_err(|_| Error::Overflow)?;
        let inv_den = BigRational::new(BigInt::one(), den.into());
        Self::new(BigRational::zero(), inv_den, prod)
    }

    pub fn from_quad(z: &QuadInt) -> Self {
        let half = |x: &BigInt| BigRational::new(x.clone(), BigInt::from(2));
        if z.v.is_zero() {
            return Self::from_rational(half(&z.u));
        }
        Surd { rational: half(&z.u), coeff: half(&z.v), radicand: BigInt::from(5) }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Exact sign, `-1`, `0` or `1`.
    pub fn signum(&self) -> i32 {
        let sign = |q: &BigRational| {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        };
        let (sr, sc) = (sign(&self.rational), sign(&self.coeff));
        if sc == 0 || sr == sc {
            return if sr == 0 { sc } else { sr };
        }
        if sr == 0 {
            return sc;
        }
        let r2 = &self.rational * &self.rational;
        let c2 = &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone());
        match r2.cmp(&c2) {
            core::cmp::Ordering::Greater => sr,
            core::cmp::Ordering::Less => sc,
            core::cmp::Ordering::Equal => 0,
        }
    }

    pub fn conj(&self) -> Self {
        Surd { rational: self.rational.clone(), coeff: -&self.coeff, radicand: self.radicand.clone() }
    }

    fn compatible(&self, other: &Surd) -> Result<BigInt> {
        if self.is_rational() {
            return Ok(other.radicand.clone());
        }
        if other.is_rational() || self.radicand == other.radicand {
            return Ok(self.radicand.clone());
        }
        Err(Error::Internal("surds with different radicands"))
    }

    pub fn checked_add(&self, other: &Surd) -> Result<Surd> {
        let radicand = self.compatible(other)?;
        let coeff = &self.coeff + &other.coeff;
        let radicand = if coeff.is_zero() { BigInt::one() } else { radicand };
        Ok(Surd { rational: &self.rational + &other.rational, coeff, radicand })
    }

    pub fn checked_sub(&self, other: &Surd) -> Result<Surd> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Surd {
        Surd { rational: -&self.rational, coeff: -&self.coeff, radicand: self.radicand.clone() }
    }

    pub fn scale(&self, q: &BigRational) -> Surd {
        let coeff = &self.coeff * q;
        let radicand = if coeff.is_zero() { BigInt::one() } else { self.radicand.clone() };
        Surd { rational: &self.rational * q, coeff, radicand }
    }

    /// `(r + c sqrt D)` as `f64`. When the two terms nearly cancel the value is
    /// computed as `(r^2 - c^2 D) / (r - c sqrt D)`.
    pub fn to_f64(&self) -> f64 {
        let r = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return r;
        }
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        let c_root = self.coeff.to_f64().unwrap_or(f64::NAN) * libm::sqrt(d);
        if (r > 0.0) == (c_root > 0.0) || r == 0.0 {
            return r + c_root;
        }
        let exact_num = &self.rational * &self.rational
            - &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone());
        exact_num.to_f64().unwrap_or(f64::NAN) / (r - c_root)
    }
}

/// `r+c√D`, with rationals as `p/q`.
impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        if !self.rational.is_zero() {
            write!(f, "{}", self.rational)?;
            f.write_str(if self.coeff.is_negative() { "-" } else { "+" })?;
        } else if self.coeff.is_negative() {
            f.write_str("-")?;
        }
        let c = self.coeff.abs();
        if !c.is_one() {
            write!(f, "({c})")?;
        }
        write!(f, "√{}", self.radicand)
    }
}

/// Integer square root of a non-negative big integer, `None` if not a square.
#[allow(dead_code)]
pub(crate) fn big_perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    if let Some(small) = n.to_u128() {
        return perfect_sqrt(small).map(BigInt::from);
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
