use proptest::prelude::*;

use unicusp_core::classify::enumerate;
use unicusp_core::obstruction::{check_multi, check_semigroup, check_single, star_lower, star_upper};
use unicusp_core::semigroup::Semigroup;
use unicusp_core::{Error, Side};

fn tri(j: i64) -> i64 {
    (j + 1) * (j + 2) / 2
}

fn sieve_r(a: u64, b: u64, m: i64) -> i64 {
    let mut count = 0;
    for x in 0..m.max(0) {
        let x = x as u64;
        if (0..=x / a).any(|i| (x - i * a).is_multiple_of(b)) {
            count += 1;
        }
    }
    count
}

#[test]
fn j_minus_one_never_witnesses() {
    for g in 0..=4 {
        let report = enumerate(g, 30, true).unwrap();
        for c in &report.candidates {
            let v = check_single(c.a, c.b, g, c.d).unwrap();
            if let Some(w) = v.witness {
                assert!(w.j >= 0, "{c:?} -> {w:?}");
            }
        }
    }
}

#[test]
fn witness_is_first_violation() {
    for g in 0..=3 {
        for c in enumerate(g, 25, true).unwrap().candidates {
            let v = check_single(c.a, c.b, g, c.d).unwrap();
            let mut first = None;
            'outer: for j in -1..=c.d as i64 - 2 {
                for k in 0..=g {
                    let val = sieve_r(c.a, c.b, j * c.d as i64 + 1 - 2 * k as i64) + k as i64 - tri(j);
                    if val < 0 || val > g as i64 {
                        first = Some((j, k, val));
                        break 'outer;
                    }
                }
            }
            assert_eq!(v.witness.map(|w| (w.j, w.k, w.lhs_value)), first, "{c:?}");
            if let Some(w) = v.witness {
                assert_eq!(w.side == Side::Lower, w.lhs_value < 0);
                assert_eq!(w.triangular, tri(w.j));
            }
        }
    }
}

#[test]
fn degree_genus_mismatch_is_a_caller_error() {
    assert!(matches!(check_single(3, 28, 1, 10), Err(Error::DegreeGenus { .. })));
    assert!(matches!(check_multi(&[(2, 3), (2, 3)], 0, 5), Err(Error::DegreeGenus { .. })));
}

#[test]
fn star_conditions_validate_j() {
    let s = Semigroup::new(3, 28).unwrap();
    assert!(star_lower(&s, 9, -1).is_err());
    assert!(star_upper(&s, 9, 1, 8).is_err());
    assert!((0..=7).all(|j| star_lower(&s, 9, j).unwrap()));
}

#[test]
fn two_cusped_examples() {
    // Quartic with two ordinary cusps and a node, and one with three cusps.
    assert!(check_multi(&[(2, 3), (2, 3)], 1, 4).unwrap().admissible());
    assert!(check_multi(&[(2, 3), (2, 3), (2, 3)], 0, 4).unwrap().admissible());
    // Four cusps on a quartic would need g < 0; five cusps on a quintic fit.
    assert!(check_multi(&[(2, 3); 6], 0, 5).is_ok());
}

proptest! {
    #[test]
    fn single_and_multi_agree(g in 0u64..=3, d in 3u64..=20, pick in 0usize..64) {
        let report = enumerate(g, d, true).unwrap();
        let cands: Vec<_> = report.candidates.iter().filter(|c| c.d == d).collect();
        prop_assume!(!cands.is_empty());
        let c = cands[pick % cands.len()];
        let one = check_single(c.a, c.b, g, d).unwrap();
        let many = check_multi(&[(c.a, c.b)], g, d).unwrap();
        prop_assert_eq!(one, many);
        let s = Semigroup::new(c.a, c.b).unwrap();
        prop_assert_eq!(check_semigroup(&s, g, d), one);
    }

    #[test]
    fn smooth_cusp_is_transparent(g in 0u64..=3, d in 3u64..=15, pick in 0usize..64) {
        let report = enumerate(g, d, true).unwrap();
        let cands: Vec<_> = report.candidates.iter().filter(|c| c.d == d).collect();
        prop_assume!(!cands.is_empty());
        let c = cands[pick % cands.len()];
        let one = check_single(c.a, c.b, g, d).unwrap();
        let with_smooth = check_multi(&[(c.a, c.b), (1, 7)], g, d).unwrap();
        prop_assert_eq!(one.admissible(), with_smooth.admissible());
    }
}
