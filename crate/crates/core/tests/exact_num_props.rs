use std::cmp::Ordering;

use num_bigint::BigInt;
use proptest::prelude::*;
use seshadri_core::exact_num::{
    nth_root, parse_quad, quad_compare_mixed, quad_sign, rat, simplest_between, to_f64, ExactOrInterval, QuadExt,
    Rational,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn radicand() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![0i64, 2, 3, 5, 6, 7, 8, 12, 18])
}

fn quad_in(d: i64) -> impl Strategy<Value = QuadExt> {
    (small_rational(), small_rational()).prop_map(move |(p, q)| QuadExt::new(p, q, BigInt::from(d)).unwrap())
}

fn any_quad() -> impl Strategy<Value = QuadExt> {
    radicand().prop_flat_map(quad_in)
}

fn same_field_triple() -> impl Strategy<Value = (QuadExt, QuadExt, QuadExt)> {
    radicand().prop_flat_map(|d| (quad_in(d), quad_in(d), quad_in(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms((x, y, z) in same_field_triple()) {
        prop_assert_eq!(x.try_add(&y).unwrap(), y.try_add(&x).unwrap());
        prop_assert_eq!(x.try_mul(&y).unwrap(), y.try_mul(&x).unwrap());
        prop_assert_eq!(
            x.try_add(&y).unwrap().try_add(&z).unwrap(),
            x.try_add(&y.try_add(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.try_mul(&y).unwrap().try_mul(&z).unwrap(),
            x.try_mul(&y.try_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.try_mul(&y.try_add(&z).unwrap()).unwrap(),
            x.try_mul(&y).unwrap().try_add(&x.try_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.try_sub(&y).unwrap().try_add(&y).unwrap(), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.try_mul(&x.recip().unwrap()).unwrap(), QuadExt::one());
        }
    }

    #[test]
    fn display_round_trips(x in any_quad()) {
        prop_assert_eq!(parse_quad(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn mixed_order_is_total_and_consistent(x in any_quad(), y in any_quad(), z in any_quad()) {
        prop_assert_eq!(quad_compare_mixed(&x, &y), quad_compare_mixed(&y, &x).reverse());
        if x <= y && y <= z {
            prop_assert!(x <= z);
        }
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(quad_compare_mixed(&x, &y), fx.partial_cmp(&fy).unwrap());
        }
        prop_assert_eq!(quad_compare_mixed(&x, &x), Ordering::Equal);
    }

    #[test]
    fn nth_root_round_trip(x in (0i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d)), n in 1u32..=5) {
        let p = num_traits::pow(x.clone(), n as usize);
        match nth_root(&p, n, &rat(1, 1_000_000)).unwrap() {
            ExactOrInterval::Exact(r) => prop_assert_eq!(r, x.clone()),
            other => prop_assert!(false, "expected an exact root, got {other}"),
        }
        let w = rat(1, 1_000_000);
        let shifted = &x + rat(1, 3);
        let iv = nth_root(&shifted, n, &w).unwrap().enclose(&w);
        prop_assert!(iv.width() <= w);
        prop_assert!(num_traits::pow(iv.lo().clone(), n as usize) <= shifted);
        prop_assert!(num_traits::pow(iv.hi().clone(), n as usize) >= shifted);
    }

    #[test]
    fn simplest_between_is_strictly_inside(a in small_rational(), b in small_rational()) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let m = simplest_between(&lo, &hi);
        prop_assert!(lo < m && m < hi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn quad_sign_agrees_with_enclosures(p in small_rational(), q in small_rational(), d in radicand()) {
        prop_assert_eq!(quad_sign(&p, &q, &BigInt::from(d)), oracle_sign(&p, &q, d));
    }
}

/// Sign of `p + q sqrt(d)` in floating point, falling back to a bisection
/// enclosure of `sqrt(d)` near zero.
fn oracle_sign(p: &Rational, q: &Rational, d: i64) -> i8 {
    let f = to_f64(p) + to_f64(q) * (d as f64).sqrt();
    if f.abs() > 1e-6 {
        return if f > 0.0 { 1 } else { -1 };
    }
    let d = rat(d, 1);
    let (mut lo, mut hi) = (rat(0, 1), &d + rat(1, 1));
    for _ in 0..80 {
        let mid = (&lo + &hi) / rat(2, 1);
        if &mid * &mid <= d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (p + q * &lo, p + q * &hi);
    let (vlo, vhi) = if a <= b { (a, b) } else { (b, a) };
    let zero = rat(0, 1);
    if vlo > zero {
        1
    } else if vhi < zero {
        -1
    } else {
        assert_eq!(p * p, q * q * &d, "enclosure straddles zero without an exact cancellation");
        0
    }
}
