use std::collections::BTreeMap;

use moy_core::laurent::{is_palindromic, qbinom, qfact, qint, HalfLaurent, LaurentPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..6).prop_map(LaurentPoly::from_terms)
}

/// Ordinary binomial coefficient, the q = 1 oracle.
fn binomial(k: u64, l: u64) -> BigInt {
    (0..l).fold(BigInt::from(1), |acc, i| {
        acc * BigInt::from(k - i) / BigInt::from(i + 1)
    })
}

/// Product of a polynomial by itself through a plain coefficient map, independent of `Mul`.
fn naive_mul(a: &LaurentPoly, b: &LaurentPoly) -> BTreeMap<i64, BigInt> {
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_has_no_zero_terms(a in poly(), b in poly()) {
        let p = &a * &b;
        prop_assert!(p.terms().all(|(_, c)| *c != BigInt::from(0)));
        let direct: BTreeMap<i64, BigInt> = p.terms().map(|(e, c)| (e, c.clone())).collect();
        prop_assert_eq!(direct, naive_mul(&a, &b));
    }

    #[test]
    fn text_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a.clone());
        let h = HalfLaurent::from_integral(&a);
        prop_assert_eq!(h.to_string().parse::<HalfLaurent>().unwrap(), h);
    }

    #[test]
    fn bar_is_an_involution_and_a_ring_map(a in poly(), b in poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert!(is_palindromic(&(&a + &a.bar())));
    }

    #[test]
    fn evaluation_at_one_is_a_ring_map(a in poly(), b in poly()) {
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
    }
}

#[test]
fn quantum_examples() {
    assert!(qint(0).unwrap().is_zero());
    assert_eq!(qint(2).unwrap().to_string(), "q + q^-1");
    assert_eq!(qint(3).unwrap().to_string(), "q^2 + 1 + q^-2");
    assert!(qint(-1).is_err());
    assert_eq!(qfact(0).unwrap(), LaurentPoly::one());
    assert_eq!(qfact(2).unwrap(), qint(2).unwrap());
    assert_eq!(qfact(3).unwrap().to_string(), "q^3 + 2q + 2q^-1 + q^-3");
    assert!(qfact(-2).is_err());
    assert!(qbinom(5, 7).is_zero());
    assert!(qbinom(-1, 0).is_zero());
    assert!(qbinom(3, -1).is_zero());
    for k in 0..8 {
        assert_eq!(qbinom(k, 0), LaurentPoly::one());
    }
    assert_eq!(qbinom(4, 2).to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
    assert!(is_palindromic(&LaurentPoly::zero()));
    assert!(is_palindromic(&"q + q^-1".parse().unwrap()));
    assert!(!is_palindromic(&"q^2 + 1".parse().unwrap()));
}

#[test]
fn binomial_symmetry_and_specialization() {
    for k in 0..=12i64 {
        for l in 0..=k {
            let b = qbinom(k, l);
            if k <= 10 {
                assert_eq!(b, qbinom(k, k - l));
            }
            assert_eq!(b.eval_at_one(), binomial(k as u64, l as u64));
            assert!(is_palindromic(&b));
            assert!(b.has_nonnegative_coeffs());
        }
    }
}

#[test]
fn pascal_recursion() {
    for total in 1..=10i64 {
        for m in 0..=total {
            let n = total - m;
            let rhs = &qbinom(total - 1, m).shift(m) + &qbinom(total - 1, m - 1).shift(-n);
            assert_eq!(qbinom(total, m), rhs, "m={m} n={n}");
        }
    }
}

#[test]
fn binomial_is_ratio_of_factorials() {
    for k in 0..=9i64 {
        for l in 0..=k {
            let lhs = &(&qbinom(k, l) * &qfact(l).unwrap()) * &qfact(k - l).unwrap();
            assert_eq!(lhs, qfact(k).unwrap());
        }
    }
}
