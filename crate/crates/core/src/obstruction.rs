//! Semigroup distribution test for cuspidal curves of degree `d` and genus `g`.
//!
//! For a single cusp with semigroup counting function `R` the condition reads
//!
//! ```text
//! 0 <= R(jd + 1 - 2k) + k - (j+1)(j+2)/2 <= g      for -1 <= j <= d-2, 0 <= k <= g
//! ```
//!
//! and for several cusps it is phrased through the convolved gap function
//! `I = I^1 ⋄ ... ⋄ I^n`:
//!
//! ```text
//! k - g <= I(jd + 1 - 2k) - (d-j-2)(d-j-1)/2 <= k.
//! ```
//!
//! The two forms measure the same quantity (`R(m) = m - delta + I(m)` together
//! with the degree-genus formula), so a witness always reports the `R`-form
//! value `R(jd+1-2k) + k - Δ_j`, equivalently `I(..) - (d-j-2)(d-j-1)/2 - k + g`.

use alloc::vec::Vec;

use crate::arith::triangular;
use crate::error::{Error, Result};
use crate::semigroup::{convolve_all, Semigroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// The tested value is negative.
    Lower,
    /// The tested value exceeds the genus.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ObstructionWitness {
    pub j: i64,
    pub k: u64,
    /// `Δ_j = (j+1)(j+2)/2`.
    pub triangular: i64,
    pub lhs_value: i64,
    pub side: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub witness: Option<ObstructionWitness>,
    pub checks_performed: u64,
}

impl Verdict {
    pub fn admissible(&self) -> bool {
        self.witness.is_none()
    }
}

fn degree_genus_gap(d: u64, g: u64, total_delta: u128) -> Result<()> {
    let lhs = (d as i128 - 1) * (d as i128 - 2);
    let rhs = 2 * (total_delta as i128 + g as i128);
    if d == 0 || lhs != rhs {
        return Err(Error::DegreeGenus { lhs, rhs });
    }
    Ok(())
}

/// Scans `j` ascending from `-1`, then `k` ascending, and stops at the first
/// violation. `tested(j, k)` returns the `R`-form value.
fn sweep(d: u64, g: u64, tested: impl Fn(i64, u64) -> i64) -> Verdict {
    let mut checks = 0;
    for j in -1..=(d as i64 - 2) {
        for k in 0..=g {
            checks += 1;
            let value = tested(j, k);
            let side = if value < 0 {
                Side::Lower
            } else if value > g as i64 {
                Side::Upper
            } else {
                continue;
            };
            let witness = ObstructionWitness { j, k, triangular: triangular(j), lhs_value: value, side };
            return Verdict { witness: Some(witness), checks_performed: checks };
        }
    }
    Verdict { witness: None, checks_performed: checks }
}

/// Tests a single cusp of type `(a, b)` on a curve of degree `d` and genus `g`.
///
/// Rejects inputs violating `(d-1)(d-2) = (a-1)(b-1) + 2g`; that is a caller
/// error, not an obstruction.
pub fn check_single(a: u64, b: u64, g: u64, d: u64) -> Result<Verdict> {
    let s = Semigroup::new(a, b)?;
    degree_genus_gap(d, g, s.delta() as u128)?;
    Ok(check_semigroup(&s, g, d))
}

/// Same as [`check_single`] for an already built semigroup; the degree-genus
/// identity is assumed.
pub fn check_semigroup(s: &Semigroup, g: u64, d: u64) -> Verdict {
    let d_i = d as i64;
    sweep(d, g, |j, k| {
        let m = j * d_i + 1 - 2 * k as i64;
        s.count_r(m) as i64 + k as i64 - triangular(j)
    })
}

/// Tests a curve with one cusp per pair, through the convolved gap function.
pub fn check_multi(pairs: &[(u64, u64)], g: u64, d: u64) -> Result<Verdict> {
    let semigroups = pairs
        .iter()
        .map(|&(a, b)| Semigroup::new(a, b))
        .collect::<Result<Vec<_>>>()?;
    let total_delta: u128 = semigroups.iter().map(|s| s.delta() as u128).sum();
    degree_genus_gap(d, g, total_delta)?;
    let parts: Vec<_> = semigroups.iter().map(Semigroup::gap_function).collect();
    let gap = convolve_all(&parts);
    let d_i = d as i64;
    let g_i = g as i64;
    Ok(sweep(d, g, |j, k| {
        let m = j * d_i + 1 - 2 * k as i64;
        let shift = (d_i - j - 2) * (d_i - j - 1) / 2;
        gap.eval(m) as i64 - shift - k as i64 + g_i
    }))
}

fn check_j(d: u64, j: i64) -> Result<()> {
    if j < 0 || j > d as i64 - 2 {
        return Err(Error::OutOfRange { what: "j (must satisfy 0 <= j <= d-2)", value: j as i128 });
    }
    Ok(())
}

/// Lower bound at `k = 0`: `Gamma(Δ_j) <= jd`.
pub fn star_lower(s: &Semigroup, d: u64, j: i64) -> Result<bool> {
    check_j(d, j)?;
    let element = s.nth_element(triangular(j) as u64)?;
    Ok(element as i128 <= j as i128 * d as i128)
}

/// Upper bound at `k = g`: `Gamma(Δ_j + 1) > jd - 2g`.
pub fn star_upper(s: &Semigroup, d: u64, g: u64, j: i64) -> Result<bool> {
    check_j(d, j)?;
    let element = s.nth_element(triangular(j) as u64 + 1)?;
    Ok(element as i128 > j as i128 * d as i128 - 2 * g as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_plus_three_at_lower_degree_is_obstructed() {
        let v = check_single(5, 8, 1, 7).unwrap();
        let w = v.witness.unwrap();
        assert_eq!((w.j, w.k), (1, 0));
        assert_eq!(w.side, Side::Lower);
        assert_eq!(w.lhs_value, -1);
        assert_eq!(w.triangular, 3);
        assert!(!v.admissible());
    }

    #[test]
    fn p_plus_three_at_own_degree_passes() {
        let v = check_single(5, 8, 7, 8).unwrap();
        assert!(v.admissible());
        assert_eq!(v.checks_performed, 8 * 8);
    }

    #[test]
    fn smooth_cubic_passes() {
        assert!(check_single(1, 8, 1, 3).unwrap().admissible());
    }

    #[test]
    fn degree_genus_mismatch_is_an_error() {
        assert!(matches!(check_single(5, 8, 1, 8), Err(Error::DegreeGenus { .. })));
        assert!(matches!(check_multi(&[(2, 3)], 1, 3), Err(Error::DegreeGenus { .. })));
    }

    #[test]
    fn multi_cusp_examples() {
        assert!(check_multi(&[(2, 3), (2, 3)], 1, 4).unwrap().admissible());
        assert!(check_multi(&[(2, 3)], 0, 3).unwrap().admissible());
        let single = check_single(4, 7, 6, 7).unwrap();
        let multi = check_multi(&[(4, 7)], 6, 7).unwrap();
        assert_eq!(single, multi);
    }

    #[test]
    fn star_specializations() {
        let smooth = Semigroup::new(1, 8).unwrap();
        assert!(star_lower(&smooth, 3, 1).unwrap());
        assert!(star_lower(&Semigroup::new(5, 11).unwrap(), 9, 0).unwrap());
        // Gamma(6) of <5,11> is 16 (0,5,10,11,15,16)
        let s = Semigroup::new(5, 11).unwrap();
        assert_eq!(s.nth_element(6).unwrap(), 16);
        assert!(star_lower(&s, 8, 2).unwrap());
        assert!(!star_lower(&s, 7, 2).unwrap());
        assert!(star_upper(&s, 9, 0, 0).unwrap());
        assert!(star_lower(&s, 3, 4).is_err());
        assert!(star_upper(&s, 3, 0, -1).is_err());
    }

    #[test]
    fn two_p_minus_one_below_its_degree_fails_star_lower() {
        // Gamma(3) of <4,7> is 7
        let s = Semigroup::new(4, 7).unwrap();
        assert!(!star_lower(&s, 6, 1).unwrap());
        assert!(star_lower(&s, 7, 1).unwrap());
    }

    #[test]
    fn nine_l_plus_one_passes_every_star_upper() {
        let s = Semigroup::new(3, 28).unwrap();
        for j in 0..=7 {
            assert!(star_upper(&s, 9, 1, j).unwrap(), "j = {j}");
        }
    }
}
