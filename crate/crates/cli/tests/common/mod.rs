//! Golden certification cases and input strategies shared by the CLI tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use seshadri_core::curve_bundles::{CurveBundle, SemistablePiece};
use seshadri_core::curve_products::CxCClass;
use seshadri_core::exact_num::{rat, QuadExt, Rational};

pub struct Golden {
    pub genus: u32,
    pub class: &'static str,
    pub generality: &'static str,
    pub verdict: &'static str,
    /// Hypothesis the certificate must report, when pinned.
    pub reported: Option<&'static str>,
}

const fn case(
    genus: u32,
    class: &'static str,
    generality: &'static str,
    verdict: &'static str,
    reported: Option<&'static str>,
) -> Golden {
    Golden { genus, class, generality, verdict, reported }
}

pub const GOLDENS: &[Golden] = &[
    case(7, "13 f1 + 13/6 f2 - d", "very-general", "nef", Some("general")),
    case(7, "13 f1 + 13/6 f2 - d", "arbitrary", "unknown", None),
    case(7, "13.7 f1 + 2 f2 - d", "general", "nef", Some("general")),
    case(7, "14 f1 + 2 f2 - d", "very-general", "nef", Some("arbitrary")),
    case(7, "8 f1 + 2 f2 - d", "very-general", "unknown", None),
    case(7, "2 f1 + 2 f2 - d", "very-general", "not-nef", Some("arbitrary")),
    case(7, "(13 + 2/7*sqrt(6)) f1 + 2 f2 - d", "general", "nef", Some("general")),
    case(7, "(13 + 2/7*sqrt(6)) f1 + 2 f2 - d", "arbitrary", "unknown", None),
    case(7, "2 f1 + 13.7 f2 - d", "general", "nef", Some("general")),
    case(7, "10 f1 + 10 f2 - 2 d", "very-general", "nef", Some("very-general")),
    case(7, "(8 + sqrt(2)) f1 + (8 + sqrt(2)) f2 - d", "very-general", "nef", Some("arbitrary")),
    case(9, "4 f1 + 4 f2 - d", "very-general", "nef", Some("very-general")),
    case(9, "7 f1 + 7 f2 - d", "very-general", "nef", Some("very-general")),
    case(9, "7 f1 + 7 f2 - d", "general", "unknown", None),
    case(5, "4 f1 + 4 f2 - d", "very-general", "nef", Some("very-general")),
    case(3, "6 f1 + 2 f2 - d", "arbitrary", "nef", Some("arbitrary")),
    case(2, "5 f1 + 5 f2 - d", "very-general", "nef", Some("arbitrary")),
    case(5, "f1 + 2 f2", "arbitrary", "nef", Some("arbitrary")),
    case(5, "3 f1 + 4 f2 + d", "arbitrary", "not-nef", None),
    case(5, "-f1 + 9 f2 + d", "arbitrary", "not-nef", None),
    case(5, "f1 - f2", "arbitrary", "not-nef", None),
    case(5, "9 f1 + 9 f2 + d", "arbitrary", "nef", Some("arbitrary")),
    case(4, "2*sqrt(3) f1 + sqrt(3) f2", "arbitrary", "nef", Some("arbitrary")),
];

pub fn coef() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

pub fn class() -> impl Strategy<Value = CxCClass> {
    let radicand = prop::sample::select(vec![0i64, 2, 3, 5, 6, 7, 10, 39]);
    radicand.prop_flat_map(|d| {
        let quad = move || {
            (coef(), coef(), 0u8..3).prop_map(move |(p, q, shape)| {
                // mix rational, pure surd and mixed coefficients
                let (p, q) = match shape {
                    0 => (p, rat(0, 1)),
                    1 => (rat(0, 1), q),
                    _ => (p, q),
                };
                let q = if d == 0 { rat(0, 1) } else { q };
                QuadExt::new(p, q, BigInt::from(d)).unwrap()
            })
        };
        (quad(), quad(), quad()).prop_map(|(a, b, c)| CxCClass::new(a, b, c).unwrap())
    })
}

pub fn bundle() -> impl Strategy<Value = CurveBundle> {
    let piece = (1u64..=5, coef()).prop_map(|(r, d)| SemistablePiece::new(r, d).unwrap());
    (prop::collection::vec(piece, 1..=4), coef()).prop_map(|(p, t)| CurveBundle::new(p, t).unwrap())
}

/// Strings over the class alphabet with some stray characters.
pub fn class_noise() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec![
            "f1", "f2", "d", "delta", "+", "-", " ", "*", "/", "2", "13", "0", ".", "sqrt(", ")", "(", "x", "f3", "7",
        ]),
        0..10,
    )
    .prop_map(|parts| parts.concat())
}

pub fn bundle_noise() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec!["1", "2", "0", ":", ",", "-", "/", " ", "twist", "=", "x", "3/2", "."]),
        0..10,
    )
    .prop_map(|parts| parts.concat())
}
