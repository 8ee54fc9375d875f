use num_bigint::BigInt;
use proptest::prelude::*;
use seshadri_core::exact_num::{rat, to_f64, Rational};
use seshadri_core::jet_bounds::{
    adjoint_jet_threshold, adjoint_min_p, hacon_M, hacon_lambda, ps_min_m, ps_seshadri_threshold, MinParameter,
    PositiveConstant,
};

fn eps() -> impl Strategy<Value = Rational> {
    (1i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn value(m: MinParameter) -> u64 {
    match m {
        MinParameter::Value(v) => v.to_string().parse().unwrap(),
        MinParameter::Impossible => panic!("expected a value"),
    }
}

/// Direct float evaluation of `min_i binom(n+r-i, r)^(-1/(n-i)) / (n-i)`.
fn hacon_float(n: u64, r: u64) -> f64 {
    (0..n)
        .map(|i| {
            let e = (n - i) as f64;
            let mut b = 1.0f64;
            for j in 0..r {
                b = b * (n + r - i - j) as f64 / (j + 1) as f64;
            }
            b.powf(-1.0 / e) / e
        })
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn adjoint_min_p_inverts_the_threshold(n in 1u64..=6, r in 1u64..=5, s in -1i64..=4, e in eps()) {
        let p = value(adjoint_min_p(n, r, s, &e).unwrap());
        prop_assert!(adjoint_jet_threshold(n, r, p, s).unwrap() < e);
        if p > 0 {
            prop_assert!(adjoint_jet_threshold(n, r, p - 1, s).unwrap() >= e);
        }
    }

    #[test]
    fn ps_min_m_inverts_the_threshold(k in 1u64..=4, n in 1u64..=5, s in -1i64..=3, r in 1u64..=4, e in eps()) {
        let m = value(ps_min_m(k, n, s, r, &e).unwrap());
        prop_assert!(ps_seshadri_threshold(k, n, s, m, r).unwrap() < e);
        if m > 0 {
            prop_assert!(ps_seshadri_threshold(k, n, s, m - 1, r).unwrap() >= e);
        }
    }

    #[test]
    fn thresholds_decrease_in_the_power(n in 1u64..=6, r in 1u64..=5, s in 0i64..=4, p in 0u64..=20) {
        prop_assert!(adjoint_jet_threshold(n, r, p + 1, s).unwrap() < adjoint_jet_threshold(n, r, p, s).unwrap());
        prop_assert!(ps_seshadri_threshold(2, n, s, p + 1, r).unwrap() < ps_seshadri_threshold(2, n, s, p, r).unwrap());
    }

    #[test]
    fn hacon_constant_matches_float(n in 1u64..=6, r in 1u64..=6) {
        let w = rat(1, 1_000_000_000);
        let m = hacon_M(n, r, &w).unwrap();
        prop_assert!((m.to_f64() - hacon_float(n, r)).abs() < 1e-8);
    }

    #[test]
    fn hacon_lambda_is_least_valid(n in 1u64..=4, beta in (1i64..=20, 1i64..=6).prop_map(|(a, b)| rat(a, b)), mq in (1i64..=9, 2i64..=12).prop_map(|(a, b)| rat(a, b))) {
        let lambda = hacon_lambda(n, &beta, &PositiveConstant::rational(mq.clone())).unwrap();
        let bound = Rational::from_integer(BigInt::from(n)) * &beta / &mq;
        let l = Rational::from_integer(lambda);
        prop_assert!(l > bound);
        prop_assert!(&l - rat(1, 1) <= bound);
        prop_assert!(to_f64(&l) > to_f64(&bound));
    }
}
