//! Intersection theory and nef certification for divisor classes
//! `a f1 + b f2 + c d` on the self-product of a curve of genus `g`, where
//! `f1`, `f2` are the fiber classes and `d` is the diagonal.

mod certify;
mod families;
mod region;
mod slope;
mod tangency;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_num::{QuadExt, Rational};

pub use certify::{
    certify_nef, verify_certificate, NefCertificate, NefCertifier, NefRegion, Sampling, Verdict, Witness,
    WitnessTerm,
};
pub use families::{
    conjecture_class, generator_set, Generator, kouvidakis_class, theta_class, thm_ii_class, thm_ii_threshold, vojta2_a,
    vojta2_curve_a, vojta_b, vojta_threshold, FamilyTag,
};
pub use region::{region_sample, GridCell};
pub use slope::{slope_gap, slope_r, slope_r_limit};
pub use tangency::{tangent_from_point, tangent_lines, TangencyRecord};

/// Genus of the curve, at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall { min: 2, got: g });
        }
        Ok(Self(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn q(self) -> Rational {
        Rational::from_integer(BigInt::from(self.0))
    }

    /// `delta^2 = 2 - 2g`.
    pub fn diagonal_square(self) -> Rational {
        Rational::from_integer(BigInt::from(2) - BigInt::from(2 * u64::from(self.0)))
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Hypothesis on the curve under which a nefness statement holds, ordered
/// from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generality {
    Arbitrary,
    General,
    VeryGeneral,
}

impl Generality {
    pub const ALL: [Generality; 3] = [Generality::Arbitrary, Generality::General, Generality::VeryGeneral];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Arbitrary => "arbitrary",
            Self::General => "general",
            Self::VeryGeneral => "very-general",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "arbitrary" | "any" => Some(Self::Arbitrary),
            "general" => Some(Self::General),
            "very-general" | "verygeneral" => Some(Self::VeryGeneral),
            _ => None,
        }
    }
}

impl fmt::Display for Generality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The class `a f1 + b f2 + c d`; all coefficients share one quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CxCClass {
    a: QuadExt,
    b: QuadExt,
    c: QuadExt,
}

impl CxCClass {
    pub fn new(a: QuadExt, b: QuadExt, c: QuadExt) -> Result<Self> {
        let mut field = BigInt::zero();
        for x in [&a, &b, &c] {
            if x.is_rational() {
                continue;
            }
            if field.is_zero() {
                field = x.d().clone();
            } else if &field != x.d() {
                return Err(Error::MixedRadicands(field.to_string(), x.d().to_string()));
            }
        }
        Ok(Self { a, b, c })
    }

    pub fn rational(a: Rational, b: Rational, c: Rational) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into() }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self { a: QuadExt::from_int(a), b: QuadExt::from_int(b), c: QuadExt::from_int(c) }
    }

    pub fn f1() -> Self {
        Self::from_ints(1, 0, 0)
    }

    pub fn f2() -> Self {
        Self::from_ints(0, 1, 0)
    }

    pub fn delta() -> Self {
        Self::from_ints(0, 0, 1)
    }

    /// `a f1 + b f2 - d`.
    pub fn plane_point(a: QuadExt, b: QuadExt) -> Result<Self> {
        Self::new(a, b, QuadExt::from_int(-1))
    }

    pub fn a(&self) -> &QuadExt {
        &self.a
    }

    pub fn b(&self) -> &QuadExt {
        &self.b
    }

    pub fn c(&self) -> &QuadExt {
        &self.c
    }

    /// The radicand shared by the coefficients, or 0 when all are rational.
    pub fn radicand(&self) -> BigInt {
        [&self.a, &self.b, &self.c]
            .iter()
            .map(|x| x.d().clone())
            .find(|d| !d.is_zero())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn scale(&self, k: &QuadExt) -> Result<Self> {
        Self::new(self.a.try_mul(k)?, self.b.try_mul(k)?, self.c.try_mul(k)?)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Self::new(self.a.try_add(&other.a)?, self.b.try_add(&other.b)?, self.c.try_add(&other.c)?)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Self::new(self.a.try_sub(&other.a)?, self.b.try_sub(&other.b)?, self.c.try_sub(&other.c)?)
    }

    /// The image under the involution exchanging the two factors.
    pub fn swapped(&self) -> Self {
        Self { a: self.b.clone(), b: self.a.clone(), c: self.c.clone() }
    }
}

impl fmt::Display for CxCClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (coef, sym) in [(&self.a, "f1"), (&self.b, "f2"), (&self.c, "d")] {
            if coef.is_zero() {
                continue;
            }
            let (negative, body) = match coef.to_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let mag = r.abs();
                    (neg, if mag.is_one() { String::new() } else { format!("{mag} ") })
                }
                None => (false, format!("({coef}) ")),
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
            out.push_str(sym);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// `D1 . D2` for the form with `f1^2 = f2^2 = 0`, `f1.f2 = f1.d = f2.d = 1`, `d^2 = 2 - 2g`.
pub fn intersect(d1: &CxCClass, d2: &CxCClass, g: Genus) -> Result<QuadExt> {
    let terms = [
        d1.a.try_mul(&d2.b)?,
        d2.a.try_mul(&d1.b)?,
        d1.a.try_mul(&d2.c)?,
        d2.a.try_mul(&d1.c)?,
        d1.b.try_mul(&d2.c)?,
        d2.b.try_mul(&d1.c)?,
        d1.c.try_mul(&d2.c)?.scale(&g.diagonal_square()),
    ];
    terms.iter().try_fold(QuadExt::zero(), |acc, t| acc.try_add(t))
}

/// Intersection number that falls back to an enclosure when the two classes
/// live in different quadratic fields.
pub fn intersect_enclosed(
    d1: &CxCClass,
    d2: &CxCClass,
    g: Genus,
    precision: &Rational,
) -> crate::exact_num::ExactOrInterval {
    use crate::exact_num::ExactOrInterval;
    if let Ok(v) = intersect(d1, d2, g) {
        return ExactOrInterval::from_quad(v);
    }
    // each coefficient enclosed finely enough that the bilinear sum stays within precision
    let size = [&d1.a, &d1.b, &d1.c, &d2.a, &d2.b, &d2.c]
        .iter()
        .map(|x| x.enclose(&Rational::one()).hi().abs() + Rational::one())
        .max()
        .expect("six coefficients");
    let scale = Rational::from_integer(BigInt::from(16 * u64::from(g.get()) + 16)) * &size;
    let w = precision / scale;
    let e = |x: &QuadExt| x.enclose(&w);
    let (a1, b1, c1, a2, b2, c2) = (e(&d1.a), e(&d1.b), e(&d1.c), e(&d2.a), e(&d2.b), e(&d2.c));
    let sum = a1
        .mul(&b2)
        .add(&a2.mul(&b1))
        .add(&a1.mul(&c2))
        .add(&a2.mul(&c1))
        .add(&b1.mul(&c2))
        .add(&b2.mul(&c1))
        .add(&c1.mul(&c2).scale(&g.diagonal_square()));
    ExactOrInterval::Interval(sum)
}

/// `2ab + 2c(a + b) + c^2 (2 - 2g)`.
pub fn self_intersection(d: &CxCClass, g: Genus) -> QuadExt {
    let two = Rational::from_integer(BigInt::from(2));
    let ab = d.a.try_mul(&d.b).expect("coefficients share one field");
    let c_ab = d.c.try_mul(&d.a.try_add(&d.b).expect("same field")).expect("same field");
    let cc = d.c.try_mul(&d.c).expect("same field").scale(&g.diagonal_square());
    ab.try_add(&c_ab).expect("same field").scale(&two).try_add(&cc).expect("same field")
}

/// A curve class pairing used by the necessary conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    F1,
    F2,
    Delta,
    SelfIntersection,
}

impl Pairing {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::F1 => "D.f1",
            Self::F2 => "D.f2",
            Self::Delta => "D.d",
            Self::SelfIntersection => "D.D",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::F1, Self::F2, Self::Delta, Self::SelfIntersection].into_iter().find(|p| p.as_str() == s)
    }

    pub fn evaluate(self, d: &CxCClass, g: Genus) -> QuadExt {
        let sum = |x: &QuadExt, y: &QuadExt| x.try_add(y).expect("coefficients share one field");
        match self {
            Self::F1 => sum(&d.b, &d.c),
            Self::F2 => sum(&d.a, &d.c),
            Self::Delta => sum(&sum(&d.a, &d.b), &d.c.scale(&g.diagonal_square())),
            Self::SelfIntersection => self_intersection(d, g),
        }
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of the necessary conditions for nefness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Necessary {
    Pass,
    Fail { pairing: Pairing, value: QuadExt },
}

/// Checks `D.f1`, `D.f2`, `D.d` and `D^2` for nonnegativity, in that order.
pub fn necessary_conditions(d: &CxCClass, g: Genus) -> Necessary {
    for pairing in [Pairing::F1, Pairing::F2, Pairing::Delta, Pairing::SelfIntersection] {
        let value = pairing.evaluate(d, g);
        if value.sign() < 0 {
            return Necessary::Fail { pairing, value };
        }
    }
    Necessary::Pass
}

pub(crate) fn qi(n: i64) -> QuadExt {
    QuadExt::from_int(n)
}

pub(crate) fn is_nonneg(x: &QuadExt) -> bool {
    !x.sign().is_negative()
}
