use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::interval::{root_enclosure, ExactOrInterval, RationalInterval};
use super::quad::QuadExt;
use super::rational::{exact_nth_root, least_integer_above, Rational};
use crate::error::{Error, Result};

/// The real number `coeff * base^(1/index)` with `base >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    coeff: Rational,
    base: Rational,
    index: u32,
}

impl Radical {
    /// Builds the radical, lowering the index whenever `base` is a perfect power.
    pub fn new(coeff: Rational, base: Rational, index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::ZeroRootIndex);
        }
        if base.is_negative() {
            return Err(Error::NegativeRadicand(base.to_string()));
        }
        let mut r = Self { coeff, base, index };
        if r.base.is_zero() || r.coeff.is_zero() {
            r.coeff = Rational::zero();
            r.base = Rational::one();
            r.index = 1;
        }
        r.reduce();
        Ok(r)
    }

    pub fn rational(x: Rational) -> Self {
        Self { coeff: x, base: Rational::one(), index: 1 }
    }

    fn reduce(&mut self) {
        let mut t = 2;
        while t <= self.index {
            if self.index % t == 0 {
                if let Some(root) = exact_nth_root(&self.base, t) {
                    self.base = root;
                    self.index /= t;
                    continue;
                }
            }
            t += 1;
        }
        if self.index == 1 {
            self.coeff = &self.coeff * &self.base;
            self.base = Rational::one();
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn sign(&self) -> i8 {
        if self.coeff.is_positive() {
            1
        } else if self.coeff.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Exact rational `c` and index-`k` base with `self^k`, when coefficients are positive.
    fn power(&self, k: u32) -> Rational {
        num_traits::pow(self.coeff.abs(), k as usize)
            * num_traits::pow(self.base.clone(), (k / self.index) as usize)
    }

    /// Exact comparison by raising both (same-signed) sides to a common power.
    pub fn exact_cmp(&self, other: &Self) -> Ordering {
        let (s1, s2) = (self.sign(), other.sign());
        if s1 != s2 {
            return s1.cmp(&s2);
        }
        if s1 == 0 {
            return Ordering::Equal;
        }
        let l = num_integer::lcm(self.index, other.index);
        let ord = self.power(l).cmp(&other.power(l));
        if s1 > 0 {
            ord
        } else {
            ord.reverse()
        }
    }

    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        self.exact_cmp(&Self::rational(x.clone()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut r = self.clone();
        r.coeff = &r.coeff * k;
        if r.coeff.is_zero() {
            return Self::rational(Rational::zero());
        }
        r
    }

    pub fn enclose(&self, width: &Rational) -> RationalInterval {
        if self.index == 1 || self.coeff.is_zero() {
            return RationalInterval::point(&self.coeff * &self.base);
        }
        let inner = root_enclosure(&self.base, self.index, &(width / self.coeff.abs()));
        inner.scale(&self.coeff)
    }

    /// Exact form when rational or quadratic, otherwise an enclosure of width `precision`.
    pub fn evaluate(&self, precision: &Rational) -> ExactOrInterval {
        match self.index {
            1 => ExactOrInterval::Exact(&self.coeff * &self.base),
            2 => ExactOrInterval::from_quad(
                QuadExt::sqrt_of(&self.base).expect("nonnegative base").scale(&self.coeff),
            ),
            _ => ExactOrInterval::Interval(self.enclose(precision)),
        }
    }

    /// Least integer `t` with `t > x / self`, for `self > 0`.
    pub fn least_integer_above_quotient(&self, x: &Rational) -> BigInt {
        assert!(self.sign() > 0, "divisor must be positive");
        let coarse = self.enclose(&Rational::new(BigInt::one(), BigInt::from(1u64 << 20)));
        // t > x/self  <=>  t*self > x
        let exceeds = |t: &BigInt| self.scale(&Rational::from_integer(t.clone())).cmp_rational(x) == Ordering::Greater;
        let guess = if coarse.lo().is_positive() {
            let q = x / coarse.midpoint();
            least_integer_above(&q)
        } else {
            BigInt::zero()
        };
        let mut t = guess;
        while !exceeds(&t) {
            t += 1;
        }
        while exceeds(&(&t - 1)) {
            t -= 1;
        }
        t
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            1 => write!(f, "{}", &self.coeff * &self.base),
            2 => write!(f, "{}*sqrt({})", self.coeff, self.base),
            k => write!(f, "{}*({})^(1/{k})", self.coeff, self.base),
        }
    }
}
