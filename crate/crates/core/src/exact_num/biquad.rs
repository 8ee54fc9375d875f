use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::quad::QuadExt;
use super::rational::{squarefree_split, Rational};
use crate::error::{Error, Result};

/// The field `Q(sqrt D, sqrt e)` for two squarefree radicands, used to
/// compare and combine surds whose radicands differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquadField {
    base: BigInt,
    ext: BigInt,
    // D*e = cofactor^2 * mixed
    mixed: BigInt,
    cofactor: BigInt,
}

/// `alpha + beta*sqrt(e)` with `alpha`, `beta` in `Q(sqrt D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biquad {
    alpha: QuadExt,
    beta: QuadExt,
    ext: BigInt,
}

impl BiquadField {
    /// Both radicands must be squarefree or zero (as produced by [`QuadExt::d`]).
    pub fn new(d1: BigInt, d2: BigInt) -> Self {
        let (base, ext) = if d1.is_zero() { (d2, d1) } else { (d1, d2) };
        let ext = if ext == base { BigInt::zero() } else { ext };
        let (cofactor, mixed) = if base.is_zero() || ext.is_zero() {
            (BigInt::zero(), BigInt::zero())
        } else {
            squarefree_split(&(&base * &ext))
        };
        Self { base, ext, mixed, cofactor }
    }

    pub fn embed(&self, x: &QuadExt) -> Result<Biquad> {
        let r = x.d();
        let zero = QuadExt::zero();
        let (alpha, beta) = if r.is_zero() || *r == self.base {
            (x.clone(), zero)
        } else if *r == self.ext {
            (QuadExt::from_rational(x.p().clone()), QuadExt::from_rational(x.q().clone()))
        } else if *r == self.mixed && !self.mixed.is_zero() {
            // sqrt(m) = sqrt(D) sqrt(e) / cofactor
            let beta = QuadExt::new(
                Rational::zero(),
                x.q() / Rational::from_integer(self.cofactor.clone()),
                self.base.clone(),
            )?;
            (QuadExt::from_rational(x.p().clone()), beta)
        } else {
            return Err(Error::MixedRadicands(r.to_string(), format!("{}, {}", self.base, self.ext)));
        };
        Ok(Biquad { alpha, beta, ext: self.ext.clone() })
    }

    pub fn from_rational(&self, r: Rational) -> Biquad {
        Biquad { alpha: QuadExt::from_rational(r), beta: QuadExt::zero(), ext: self.ext.clone() }
    }
}

impl Biquad {
    pub fn add(&self, other: &Self) -> Self {
        if self.beta.is_zero() && other.beta.is_zero() {
            return Self { alpha: &self.alpha + &other.alpha, beta: QuadExt::zero(), ext: self.ext.clone() };
        }
        Self { alpha: &self.alpha + &other.alpha, beta: &self.beta + &other.beta, ext: self.ext.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        if self.beta.is_zero() && other.beta.is_zero() {
            return Self { alpha: &self.alpha - &other.alpha, beta: QuadExt::zero(), ext: self.ext.clone() };
        }
        Self { alpha: &self.alpha - &other.alpha, beta: &self.beta - &other.beta, ext: self.ext.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.beta.is_zero() && other.beta.is_zero() {
            return Self { alpha: &self.alpha * &other.alpha, beta: QuadExt::zero(), ext: self.ext.clone() };
        }
        let e = QuadExt::from_rational(Rational::from_integer(self.ext.clone()));
        let alpha = &(&self.alpha * &other.alpha) + &(&(&self.beta * &other.beta) * &e);
        let beta = &(&self.alpha * &other.beta) + &(&self.beta * &other.alpha);
        Self { alpha, beta, ext: self.ext.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { alpha: -&self.alpha, beta: -&self.beta, ext: self.ext.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { alpha: self.alpha.scale(k), beta: self.beta.scale(k), ext: self.ext.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// Exact sign, deciding `alpha^2` against `beta^2 e` inside `Q(sqrt D)`.
    pub fn sign(&self) -> i8 {
        let sa = self.alpha.sign();
        let sb = if self.ext.is_zero() { 0 } else { self.beta.sign() };
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let e = QuadExt::from_rational(Rational::from_integer(self.ext.clone()));
        let diff = &(&self.alpha * &self.alpha) - &(&(&self.beta * &self.beta) * &e);
        sa * diff.sign()
    }

    /// The value as a single surd, when `beta = 0` or `alpha`, `beta` are rational.
    pub fn to_quad(&self) -> Option<QuadExt> {
        if self.ext.is_zero() || self.beta.is_zero() {
            return Some(self.alpha.clone());
        }
        if self.alpha.is_rational() && self.beta.is_rational() {
            return QuadExt::new(self.alpha.p().clone(), self.beta.p().clone(), self.ext.abs()).ok();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_num::rational::int;

    fn s(n: i64) -> QuadExt {
        QuadExt::sqrt_of(&int(n)).unwrap()
    }

    #[test]
    fn sqrt2_sqrt3_identity() {
        let field = BiquadField::new(BigInt::from(2), BigInt::from(3));
        let a = field.embed(&s(2)).unwrap();
        let b = field.embed(&s(3)).unwrap();
        let c = field.embed(&s(6)).unwrap();
        assert!(a.mul(&b).sub(&c).is_zero());
        assert_eq!(a.sub(&b).sign(), -1);
        assert!(field.embed(&s(5)).is_err());
    }

    #[test]
    fn mixed_radicand_via_cofactor() {
        // D = 6, e = 10: D e = 60 = 2^2 * 15
        let field = BiquadField::new(BigInt::from(6), BigInt::from(10));
        let x = field.embed(&s(15)).unwrap();
        let y = field.embed(&s(6)).unwrap().mul(&field.embed(&s(10)).unwrap());
        assert!(x.scale(&int(2)).sub(&y).is_zero());
    }

    #[test]
    fn close_values_ordered() {
        // sqrt 2 + sqrt 3 = 3.1462..., sqrt 10 = 3.1622...
        let field = BiquadField::new(BigInt::from(2), BigInt::from(3));
        let lhs = field.embed(&s(2)).unwrap().add(&field.embed(&s(3)).unwrap());
        let sq = lhs.mul(&lhs);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6 < 10
        assert_eq!(sq.sub(&field.from_rational(int(10))).sign(), -1);
    }
}
