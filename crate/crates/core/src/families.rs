//! Fibonacci and Lucas numbers, the correspondence between pairs `(a, b)` and
//! ring elements `x + y sqrt5`, unit orbits, and the Cremona step bookkeeping.
//!
//! A pair with `3 | a + b` corresponds to `x + b sqrt5` with `x = (7b - 2a)/3`.
//! On the line `a + b = 3d` the degree-genus formula turns into
//! `x^2 - 5b^2 = 4(2g - 1)`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::gcd;
use crate::classify::degree_for;
use crate::error::{Error, Result};
use crate::quadring::{phi_pow, QuadInt, Surd};

/// `F_n` for `n >= 0`.
pub fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = core::mem::replace(&mut b, next);
    }
    a
}

/// `F_n` for any integer `n`, with `F_{-n} = (-1)^(n+1) F_n`.
pub fn fibonacci_signed(n: i64) -> BigInt {
    let f = fibonacci(n.unsigned_abs());
    if n < 0 && n % 2 == 0 {
        -f
    } else {
        f
    }
}

/// The sequence `L_0 = k - 1`, `L_1 = 1`, `L_{n+1} = L_n + L_{n-1}`, extended to
/// negative indices, with memoized values.
#[derive(Debug, Clone)]
pub struct LucasSeq {
    k: i64,
    cache: BTreeMap<i64, BigInt>,
}

impl LucasSeq {
    pub fn new(k: i64) -> Self {
        let mut cache = BTreeMap::new();
        cache.insert(0, BigInt::from(k - 1));
        cache.insert(1, BigInt::one());
        LucasSeq { k, cache }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn get(&mut self, n: i64) -> BigInt {
        if let Some(v) = self.cache.get(&n) {
            return v.clone();
        }
        let (&lo, _) = self.cache.first_key_value().expect("seeded");
        let (&hi, _) = self.cache.last_key_value().expect("seeded");
        if n > hi {
            for m in hi + 1..=n {
                let v = &self.cache[&(m - 1)] + &self.cache[&(m - 2)];
                self.cache.insert(m, v);
            }
        } else {
            for m in (n..lo).rev() {
                let v = &self.cache[&(m + 2)] - &self.cache[&(m + 1)];
                self.cache.insert(m, v);
            }
        }
        self.cache[&n].clone()
    }
}

pub fn lucas(k: i64, n: i64) -> BigInt {
    LucasSeq::new(k).get(n)
}

/// Which identity failed, and at which index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: &'static str,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub l_max: u64,
    pub checks: u64,
    pub failures: Vec<IdentityFailure>,
    /// `F_{2l-1}^2 phi^4 - F_{2l+1}^2 - 2(phi^4 - 1)/5` at `l = l_max`.
    pub lim1_gap: Surd,
    /// `F_{2l-1}^2 - F_{2l+1}^2 phi^-4 - 2(1 - phi^-4)/5` at `l = l_max`.
    pub lim2_gap: Surd,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the odd-index Fibonacci identities for `1 <= l <= l_max` and the
/// three-term identities for `2 <= k <= 2 l_max + 3`, and evaluates the two
/// limit expressions at `l_max` exactly.
pub fn fib_identities(l_max: u64) -> Result<IdentityReport> {
    if l_max < 2 {
        return Err(Error::OutOfRange { what: "l_max (must be at least 2)", value: l_max as i128 });
    }
    let top = 2 * l_max + 5;
    let f: Vec<BigInt> = (0..=top).map(fibonacci).collect();
    let mut failures = Vec::new();
    let mut checks = 0;
    let mut check = |ok: bool, identity: &'static str, index: u64| {
        checks += 1;
        if !ok {
            failures.push(IdentityFailure { identity, index: index as i64 });
        }
    };
    for k in 2..=2 * l_max + 3 {
        let k_us = k as usize;
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        check(&f[k_us] * &f[k_us] - &f[k_us - 2] * &f[k_us + 2] == sign, "F_k^2 - F_{k-2}F_{k+2} = (-1)^k", k);
        check(&f[k_us - 2] + &f[k_us + 2] == BigInt::from(3) * &f[k_us], "F_{k-2} + F_{k+2} = 3F_k", k);
    }
    for l in 1..=l_max {
        let l_us = l as usize;
        let (lo, mid, hi) = (&f[2 * l_us - 1], &f[2 * l_us + 1], &f[2 * l_us + 3]);
        check(lo.gcd(mid).is_one() && lo.gcd(hi).is_one(), "gcd(F_{2l-1}, F_{2l+1}) = gcd(F_{2l-1}, F_{2l+3}) = 1", l);
        check(
            hi * hi * lo * lo - mid * mid * (mid * mid + 2) == BigInt::one(),
            "F_{2l+3}^2 F_{2l-1}^2 - F_{2l+1}^2 (F_{2l+1}^2 + 2) = 1",
            l,
        );
        check(
            hi * hi + mid * mid - BigInt::from(3) * mid * hi == -BigInt::one(),
            "F_{2l+3}^2 + F_{2l+1}^2 - 3F_{2l+1}F_{2l+3} = -1",
            l,
        );
    }
    let (lim1_gap, lim2_gap) = limit_gaps(l_max)?;
    Ok(IdentityReport { l_max, checks, failures, lim1_gap, lim2_gap })
}

/// Distance of the two limit expressions at index `l` from their limits.
pub fn limit_gaps(l: u64) -> Result<(Surd, Surd)> {
    let lo = QuadInt::from_xy(fibonacci(2 * l - 1).pow(2), 0);
    let mid = QuadInt::from_xy(fibonacci(2 * l + 1).pow(2), 0);
    let lim1 = &(&lo * &phi_pow(4)) - &mid;
    let lim2 = &lo - &(&mid * &phi_pow(-4));
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    // 2(phi^4 - 1)/5 = 1 + (3/5) sqrt5 and 2(1 - phi^-4)/5 = -1 + (3/5) sqrt5
    let target1 = Surd::new(r(1, 1), r(3, 5), 5)?;
    let target2 = Surd::new(r(-1, 1), r(3, 5), 5)?;
    Ok((Surd::from_quad(&lim1).checked_sub(&target1)?, Surd::from_quad(&lim2).checked_sub(&target2)?))
}

/// A pair `(a, b)` with degree `d` and genus `g` satisfying
/// `(d-1)(d-2) = (a-1)(b-1) + 2g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub g: u64,
    pub a: u64,
    pub b: u64,
    pub d: u64,
    /// `((7b - 2a)/3) + b sqrt5`, present when it has norm `4(2g - 1)`.
    pub element: Option<QuadInt>,
    pub admissible: Option<bool>,
}

impl Candidate {
    pub fn new(g: u64, a: u64, b: u64, d: u64) -> Result<Self> {
        if a < 1 || a >= b {
            return Err(Error::InvalidPair { a, b, reason: "need 1 <= a < b" });
        }
        if gcd(a, b) != 1 {
            return Err(Error::InvalidPair { a, b, reason: "a and b must be coprime" });
        }
        let lhs = (d as i128 - 1) * (d as i128 - 2);
        let rhs = (a as i128 - 1) * (b as i128 - 1) + 2 * g as i128;
        if d == 0 || lhs != rhs {
            return Err(Error::DegreeGenus { lhs, rhs });
        }
        let element = pair_to_element(a, b).filter(|z| z.norm() == pell_norm(g));
        Ok(Candidate { g, a, b, d, element, admissible: None })
    }

    pub fn on_3d_line(&self) -> bool {
        self.a as u128 + self.b as u128 == 3 * self.d as u128
    }
}

/// `4(2g - 1)`.
pub fn pell_norm(g: u64) -> BigInt {
    BigInt::from(4) * (BigInt::from(2) * g - 1)
}

/// `((7b - 2a)/3) + b sqrt5` when `3 | 7b - 2a`.
pub fn pair_to_element(a: u64, b: u64) -> Option<QuadInt> {
    let num = BigInt::from(7) * b - BigInt::from(2) * a;
    let (x, rem) = num.div_rem(&BigInt::from(3));
    rem.is_zero().then(|| QuadInt::from_xy(x, b))
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64().ok_or(Error::Overflow)
}

/// The pair attached to an element of norm `4(2g - 1)`.
///
/// The variants `z, -z, conj z, -conj z` are tried in this order. Writing the
/// variant as `x + y sqrt5`, it must have `x, y > 0`, `3 ∤ y`, and give
/// `a = (7y - 3x)/2`, `b = y` with `0 < a < b`, `gcd(a, b) = 1` and an integral
/// degree. Only one variant can have `x, y > 0`, so at most one succeeds.
pub fn element_to_pair(z: &QuadInt, g: u64) -> Result<Option<Candidate>> {
    let expected = pell_norm(g);
    if z.norm() != expected {
        return Err(Error::NormMismatch { expected: expected.to_string(), found: z.norm().to_string() });
    }
    let mut found: Option<Candidate> = None;
    for w in [z.clone(), -z, z.conj(), -z.conj()] {
        let Some(c) = variant_pair(&w, g)? else { continue };
        if found.is_some() {
            return Err(Error::Internal("two sign/conjugate variants give a pair"));
        }
        found = Some(c);
    }
    Ok(found)
}

fn variant_pair(w: &QuadInt, g: u64) -> Result<Option<Candidate>> {
    let Some((x, y)) = w.xy() else { return Ok(None) };
    if !x.is_positive() || !y.is_positive() || (&y % 3u32).is_zero() {
        return Ok(None);
    }
    let twice_a = BigInt::from(7) * &y - BigInt::from(3) * &x;
    if twice_a.is_odd() || !twice_a.is_positive() {
        return Ok(None);
    }
    let (a, b) = (to_u64(&(twice_a / 2))?, to_u64(&y)?);
    if a >= b || gcd(a, b) != 1 {
        return Ok(None);
    }
    let Some(d) = degree_for(a, b, g) else { return Ok(None) };
    let mut c = Candidate::new(g, a, b, d)?;
    c.element = Some(w.clone());
    Ok(Some(c))
}

/// A candidate found in a unit orbit, with the exponent `h` of `phi^(2h)` and
/// whether `z` was conjugated first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMember {
    pub h: i64,
    pub conjugated: bool,
    pub candidate: Candidate,
}

/// Candidates from `±phi^(2h) z` and `±phi^(2h) conj z` for `h_min <= h <= h_max`,
/// in order of `h`, deduplicated by `(a, b)`.
pub fn orbit_members(z: &QuadInt, g: u64, h_min: i64, h_max: i64) -> Result<Vec<OrbitMember>> {
    let expected = pell_norm(g);
    if z.norm() != expected {
        return Err(Error::NormMismatch { expected: expected.to_string(), found: z.norm().to_string() });
    }
    let mut out: Vec<OrbitMember> = Vec::new();
    for h in h_min..=h_max {
        let unit = phi_pow(2 * h);
        for conjugated in [false, true] {
            let base = if conjugated { z.conj() } else { z.clone() };
            if let Some(candidate) = element_to_pair(&(&unit * &base), g)? {
                if !out.iter().any(|m| (m.candidate.a, m.candidate.b) == (candidate.a, candidate.b)) {
                    out.push(OrbitMember { h, conjugated, candidate });
                }
            }
        }
    }
    Ok(out)
}

pub fn orbit(z: &QuadInt, g: u64, h_min: i64, h_max: i64) -> Result<Vec<Candidate>> {
    Ok(orbit_members(z, g, h_min, h_max)?.into_iter().map(|m| m.candidate).collect())
}

fn check_family(g: u64, a: BigInt, b: BigInt, d: BigInt) -> Result<Candidate> {
    let c = Candidate::new(g, to_u64(&a)?, to_u64(&b)?, to_u64(&d)?)?;
    if c.element.is_none() || !c.on_3d_line() {
        return Err(Error::Internal("Lucas family member off the Pell curve"));
    }
    Ok(c)
}

/// `(L_{4i-3}, L_{4i+1})` in degree `L_{4i-1}`, genus `k(k-1)/2`.
pub fn lucas_family(k: i64, i: i64) -> Result<Candidate> {
    if k < 2 {
        return Err(Error::OutOfRange { what: "k (must be at least 2)", value: k as i128 });
    }
    if i < 2 {
        return Err(Error::OutOfRange { what: "i (must be at least 2)", value: i as i128 });
    }
    let mut l = LucasSeq::new(k);
    let g = (k * (k - 1) / 2) as u64;
    check_family(g, l.get(4 * i - 3), l.get(4 * i + 1), l.get(4 * i - 1))
}

/// `(-L_{-4j+1}, -L_{-4j-3})` in degree `-L_{-4j-1}`, genus `k(k-1)/2`.
pub fn lucas_family_neg(k: i64, j: i64) -> Result<Candidate> {
    if k < 2 {
        return Err(Error::OutOfRange { what: "k (must be at least 2)", value: k as i128 });
    }
    if j < 1 {
        return Err(Error::OutOfRange { what: "j (must be at least 1)", value: j as i128 });
    }
    let mut l = LucasSeq::new(k);
    let g = (k * (k - 1) / 2) as u64;
    check_family(g, -l.get(-4 * j + 1), -l.get(-4 * j - 3), -l.get(-4 * j - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `(a, b) -> (b, 7b - a)`, element times `phi^4`.
    One,
    /// `(a, b) -> (7a - b, a)` for `b < 7a`, element times `phi^-4`.
    TwoA,
    /// `(a, b) -> (b - 7a, 7b - 48a)` for `b > 7a`, element `conj(z phi^-12)`.
    TwoB,
}

impl Variant {
    pub fn act(self, z: &QuadInt) -> QuadInt {
        match self {
            Variant::One => &phi_pow(4) * z,
            Variant::TwoA => &phi_pow(-4) * z,
            Variant::TwoB => (&phi_pow(-12) * z).conj(),
        }
    }
}

impl core::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Variant::One),
            "2a" => Ok(Variant::TwoA),
            "2b" => Ok(Variant::TwoB),
            _ => Err(Error::OutOfRange { what: "Cremona variant (1, 2a or 2b)", value: s.len() as i128 }),
        }
    }
}

pub fn cremona_step(a: u64, b: u64, variant: Variant) -> Result<(u64, u64)> {
    if a < 1 || a >= b {
        return Err(Error::InvalidPair { a, b, reason: "need 1 <= a < b" });
    }
    if !(a as u128 + b as u128).is_multiple_of(3) {
        return Err(Error::InvalidPair { a, b, reason: "a + b must be divisible by 3" });
    }
    let seven_a = 7 * a as u128;
    let (a2, b2) = match variant {
        Variant::One => (b as u128, 7 * b as u128 - a as u128),
        Variant::TwoA if (b as u128) < seven_a => (seven_a - b as u128, a as u128),
        Variant::TwoA => return Err(Error::InvalidPair { a, b, reason: "variant 2a needs b < 7a" }),
        Variant::TwoB if (b as u128) > seven_a => (b as u128 - seven_a, 7 * b as u128 - 48 * a as u128),
        Variant::TwoB => return Err(Error::InvalidPair { a, b, reason: "variant 2b needs b > 7a" }),
    };
    Ok((a2.try_into().map_err(|_| Error::Overflow)?, b2.try_into().map_err(|_| Error::Overflow)?))
}
