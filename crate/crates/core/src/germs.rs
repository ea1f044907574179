//! Truncated power series over `Q` and the two explicit germ constructions:
//! a sequence of polynomials `f_n` meeting a nodal branch of `x^3 + y^3 = xy`
//! with multiplicity `3n - 1`, and a family `f_d` meeting an inflectional
//! branch with multiplicity `3d`.
//!
//! A series of order `N` knows the coefficients of `t^0, ..., t^(N-1)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Pads with zeros or truncates to `order` coefficients.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// `c t^e`.
    pub fn monomial(c: BigRational, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e < order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, `None` past the truncation.
    pub fn coeff(&self, i: usize) -> Option<&BigRational> {
        self.coeffs.get(i)
    }

    /// Smallest exponent with a nonzero coefficient, `None` when the series is
    /// zero up to truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries { coeffs: (0..order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        PowerSeries { coeffs: (0..order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut coeffs = alloc::vec![BigRational::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order).filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> PowerSeries {
        let mut acc = PowerSeries::one(self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `1 / self`; the constant term must be nonzero.
    pub fn reciprocal(&self) -> Result<PowerSeries> {
        let order = self.order();
        let c0 = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.recip(),
            _ => return Err(Error::OutOfRange { what: "constant term of a series to invert", value: 0 }),
        };
        let mut inv: Vec<BigRational> = Vec::with_capacity(order);
        inv.push(c0.clone());
        for n in 1..order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &inv[n - k];
            }
            inv.push(-acc * &c0);
        }
        Ok(PowerSeries { coeffs: inv })
    }
}

/// Sparse polynomial in `x, y` keyed by exponent pairs `(i, j)` of `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c x^i y^j`.
    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            let entry = out.terms.entry(k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(&k);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> BivariatePoly {
        if c.is_zero() {
            return Self::zero();
        }
        BivariatePoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn sub(&self, other: &BivariatePoly) -> BivariatePoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out = out.add(&Self::monomial(c1 * c2, i1 + i2, j1 + j2));
            }
        }
        out
    }

    /// `f(x(t), y(t))`, by Horner's rule in `y` with coefficients in `x`.
    pub fn eval_series(&self, x: &PowerSeries, y: &PowerSeries) -> PowerSeries {
        let order = x.order().min(y.order());
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut acc = PowerSeries::zero(order);
        for j in (0..=max_j).rev() {
            let row: BTreeMap<u32, &BigRational> =
                self.terms.iter().filter(|((_, jj), _)| *jj == j).map(|(&(i, _), c)| (i, c)).collect();
            let max_i = row.keys().next_back().copied().unwrap_or(0);
            let mut inner = PowerSeries::zero(order);
            for i in (0..=max_i).rev() {
                inner = inner.mul(x);
                if let Some(c) = row.get(&i) {
                    inner = inner.add(&PowerSeries::monomial((*c).clone(), 0, order));
                }
            }
            acc = acc.mul(y).add(&inner);
        }
        acc
    }
}

/// `x(t) = sum (-1)^k t^(3k+1)`, `y(t) = sum (-1)^k t^(3k+2)`, a branch of
/// `x^3 + y^3 - xy = 0` through the node.
pub fn node_parametrization(order: usize) -> Result<(PowerSeries, PowerSeries)> {
    if order < 6 {
        return Err(Error::Truncation { order, needed: 6 });
    }
    let alternating = |shift: usize| {
        let mut s = PowerSeries::zero(order);
        for (k, e) in (shift..order).step_by(3).enumerate() {
            s.coeffs[e] = BigRational::from_integer(if k % 2 == 0 { BigInt::one() } else { -BigInt::one() });
        }
        s
    };
    Ok((alternating(1), alternating(2)))
}

/// The node cubic `x^3 + y^3 - xy`.
pub fn node_cubic() -> BivariatePoly {
    let one = BigRational::one();
    BivariatePoly::monomial(one.clone(), 3, 0)
        .add(&BivariatePoly::monomial(one.clone(), 0, 3))
        .sub(&BivariatePoly::monomial(one, 1, 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermRecord {
    pub n: usize,
    pub polynomial: BivariatePoly,
    /// Coefficient of `t^(3n-1)` in `f_n(x(t), y(t))`.
    pub c: BigRational,
    pub valuation: usize,
}

impl GermRecord {
    /// Every monomial `x^i y^j` has `i + 2j ≡ 2 (mod 3)`.
    pub fn support_ok(&self) -> bool {
        self.polynomial.terms().all(|(&(i, j), _)| (i + 2 * j) % 3 == 2)
    }

    pub fn y_coefficient(&self) -> BigRational {
        self.polynomial.coeff(0, 1)
    }
}

/// `f_1 = y`, `f_2 = y - x^2`, `f_n = c_{n-2} f_{n-1} - c_{n-1} x y f_{n-2}`.
///
/// Each `f_n` is checked to vanish to order exactly `3n - 1` on the branch,
/// to have monomial support in `i + 2j ≡ 2 (mod 3)`, degree `n`, and a nonzero
/// `y` coefficient. All of this holds up to the truncation `order`.
pub fn germ_sequence(n_max: usize, order: usize) -> Result<Vec<GermRecord>> {
    let needed = 3 * n_max + 3;
    if order < needed {
        return Err(Error::Truncation { order, needed });
    }
    let (x, y) = node_parametrization(order)?;
    let xy = BivariatePoly::x().mul(&BivariatePoly::y());
    let mut out: Vec<GermRecord> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let polynomial = match n {
            1 => BivariatePoly::y(),
            2 => BivariatePoly::y().sub(&BivariatePoly::x().mul(&BivariatePoly::x())),
            _ => {
                let (prev, prev2) = (&out[n - 2], &out[n - 3]);
                prev.polynomial.scale(&prev2.c).sub(&xy.mul(&prev2.polynomial).scale(&prev.c))
            }
        };
        let series = polynomial.eval_series(&x, &y);
        let expected = 3 * n - 1;
        let valuation = series.valuation().ok_or(Error::VanishingCoefficient { n })?;
        if valuation > expected {
            return Err(Error::VanishingCoefficient { n });
        }
        if valuation < expected {
            return Err(Error::Internal("germ vanishes to lower order than 3n - 1"));
        }
        let record = GermRecord { n, c: series.coeffs[expected].clone(), polynomial, valuation };
        if !record.support_ok() {
            return Err(Error::Internal("germ has a monomial outside i + 2j ≡ 2 (mod 3)"));
        }
        if record.y_coefficient().is_zero() {
            return Err(Error::Internal("germ lost its linear y term"));
        }
        if record.polynomial.degree() != Some(n as u32) {
            return Err(Error::Internal("germ has degree different from n"));
        }
        out.push(record);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexReport {
    pub d: u32,
    pub order: usize,
    pub valuation: usize,
    pub leading: BigRational,
}

/// Valuation of `f_d = y^d + x^3 + x^2 y - y` along `x = t`, `y = t^3/(1 - t^2)`,
/// which must be exactly `3d`.
pub fn flex_check(d: u32, order: usize) -> Result<FlexReport> {
    if d <= 2 {
        return Err(Error::OutOfRange { what: "flex degree (must exceed 2)", value: d as i128 });
    }
    let needed = 3 * d as usize + 3;
    if order < needed {
        return Err(Error::Truncation { order, needed });
    }
    let x = PowerSeries::monomial(BigRational::one(), 1, order);
    let one_minus_t2 = PowerSeries::one(order).sub(&PowerSeries::monomial(BigRational::one(), 2, order));
    let y = PowerSeries::monomial(BigRational::one(), 3, order).mul(&one_minus_t2.reciprocal()?);
    let one = BigRational::one();
    let f = BivariatePoly::monomial(one.clone(), 0, d)
        .add(&BivariatePoly::monomial(one.clone(), 3, 0))
        .add(&BivariatePoly::monomial(one.clone(), 2, 1))
        .sub(&BivariatePoly::monomial(one, 0, 1));
    let series = f.eval_series(&x, &y);
    let valuation = series.valuation().ok_or(Error::Internal("flex germ vanishes up to truncation"))?;
    if valuation != 3 * d as usize {
        return Err(Error::Internal("flex germ has valuation different from 3d"));
    }
    Ok(FlexReport { d, order, valuation, leading: series.coeffs[valuation].clone() })
}
