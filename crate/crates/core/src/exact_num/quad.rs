use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::biquad::BiquadField;
use super::interval::{sqrt_enclosure, RationalInterval};
use super::rational::{parse_rational, squarefree_split, to_f64, Rational};
use crate::error::{Error, Result};

/// The real number `p + q*sqrt(d)` with `d` squarefree.
///
/// Stored canonically: `d = 0` exactly when `q = 0`, and `d != 1`, so two
/// values are equal as reals iff they are equal as structs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    d: BigInt,
}

impl QuadExt {
    /// Builds `p + q*sqrt(d)`, folding square factors of `d` into `q`.
    pub fn new(p: Rational, q: Rational, d: BigInt) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        if d.is_zero() || q.is_zero() {
            return Ok(Self::from_rational(p));
        }
        let (s, core) = squarefree_split(&d);
        let q = q * Rational::from_integer(s);
        if core.is_one() {
            return Ok(Self::from_rational(p + q));
        }
        Ok(Self { p, q, d: core })
    }

    pub fn from_rational(p: Rational) -> Self {
        Self { p, q: Rational::zero(), d: BigInt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `sqrt(x)` for rational `x >= 0`, as `sqrt(a*b)/b`.
    pub fn sqrt_of(x: &Rational) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::NegativeRadicand(x.to_string()));
        }
        let den = x.denom().clone();
        Self::new(Rational::zero(), Rational::new(BigInt::one(), den.clone()), x.numer() * den)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// The squarefree radicand, or 0 for rational values.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.p.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Exact sign in {-1, 0, 1}.
    pub fn sign(&self) -> i8 {
        quad_sign(&self.p, &self.q, &self.d)
    }

    pub fn conj(&self) -> Self {
        Self { p: self.p.clone(), q: -&self.q, d: self.d.clone() }
    }

    /// `p^2 - q^2 d`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(self.d.clone())
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::MixedRadicands(self.d.to_string(), other.d.to_string())),
        }
    }

    fn build(p: Rational, q: Rational, d: BigInt) -> Self {
        if q.is_zero() || d.is_zero() {
            Self::from_rational(p)
        } else {
            Self { p, q, d }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.is_rational() && other.is_rational() {
            return Ok(Self::from_rational(&self.p + &other.p));
        }
        let d = self.common_radicand(other)?;
        Ok(Self::build(&self.p + &other.p, &self.q + &other.q, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        if self.is_rational() && other.is_rational() {
            return Ok(Self::from_rational(&self.p - &other.p));
        }
        let d = self.common_radicand(other)?;
        Ok(Self::build(&self.p - &other.p, &self.q - &other.q, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.is_rational() {
            return Ok(other.scale(&self.p));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.p));
        }
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(d.clone());
        let p = &self.p * &other.p + &self.q * &other.q * dr;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(Self::build(p, q, d))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.p.recip()));
        }
        let n = self.norm();
        Ok(Self::build(&self.p / &n, -&self.q / &n, self.d.clone()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if self.is_rational() {
            return Self::from_rational(&self.p * k);
        }
        Self::build(&self.p * k, &self.q * k, self.d.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        Self { p: &self.p + k, q: self.q.clone(), d: self.d.clone() }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// `sqrt(self)` when the result stays in a single quadratic field:
    /// either `self` is a rational, or `self` is a perfect square there.
    pub fn sqrt(&self) -> Result<Self> {
        if self.sign() < 0 {
            return Err(Error::NegativeRadicand(self.to_string()));
        }
        if let Some(r) = self.to_rational() {
            return Self::sqrt_of(&r);
        }
        // (x + y sqrt d)^2 = p + q sqrt d  =>  x^2 = (p +- sqrt(norm)) / 2
        let n = self.norm();
        let root_n = super::rational::exact_nth_root(&n, 2)
            .ok_or_else(|| Error::NotRepresentable(format!("sqrt({self})")))?;
        let two = Rational::from_integer(BigInt::from(2));
        for x_sq in [(&self.p + &root_n) / &two, (&self.p - &root_n) / &two] {
            if let Some(x) = super::rational::exact_nth_root(&x_sq, 2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.q / (&two * &x);
                return Ok(Self::build(x, y, self.d.clone()).abs());
            }
        }
        Err(Error::NotRepresentable(format!("sqrt({self})")))
    }

    /// Encloses the value in an interval of width at most `width`.
    pub fn enclose(&self, width: &Rational) -> RationalInterval {
        if self.is_rational() {
            return RationalInterval::point(self.p.clone());
        }
        let root = sqrt_enclosure(&Rational::from_integer(self.d.clone()), &(width / self.q.abs()));
        root.scale(&self.q).add(&RationalInterval::point(self.p.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return to_f64(&self.p);
        }
        let w = Rational::new(BigInt::one(), BigInt::from(1u64) << 64);
        to_f64(&self.enclose(&w).midpoint())
    }
}

/// Sign of `p + q*sqrt(d)` by case analysis on signs of `p`, `q` and
/// the comparison of `p^2` with `q^2 d`.
pub fn quad_sign(p: &Rational, q: &Rational, d: &BigInt) -> i8 {
    let sp = signum(p);
    let sq = if d.is_zero() { 0 } else { signum(q) };
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    let diff = p * p - q * q * Rational::from_integer(d.clone());
    sp * signum(&diff)
}

fn signum(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Exact ordering of two surds, possibly with different radicands.
pub fn quad_compare_mixed(x: &QuadExt, y: &QuadExt) -> Ordering {
    let sign = match x.try_sub(y) {
        Ok(diff) => diff.sign(),
        Err(_) => {
            let field = BiquadField::new(x.d().clone(), y.d().clone());
            let diff = field.embed(x).expect("radicand of x").sub(&field.embed(y).expect("radicand of y"));
            diff.sign()
        }
    };
    sign.cmp(&0)
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_compare_mixed(self, other)
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::build(-&self.p, -&self.q, self.d.clone())
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

macro_rules! same_field_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            /// Panics when the operands have different radicands; use the
            /// `try_` form to handle that case.
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
    };
}

same_field_op!(Add, add, try_add);
same_field_op!(Sub, sub, try_sub);
same_field_op!(Mul, mul, try_mul);
same_field_op!(Div, div, try_div);

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        let coeff = |q: &Rational| {
            if q.is_one() {
                String::new()
            } else {
                format!("{q}*")
            }
        };
        if self.p.is_zero() {
            if self.q.is_negative() {
                return write!(f, "-{}sqrt({})", coeff(&-&self.q), self.d);
            }
            return write!(f, "{}sqrt({})", coeff(&self.q), self.d);
        }
        let (op, q) = if self.q.is_negative() { ('-', -&self.q) } else { ('+', self.q.clone()) };
        write!(f, "{} {op} {}sqrt({})", self.p, coeff(&q), self.d)
    }
}

/// Parses the forms printed by `Display`: `p`, `p/q`, decimals,
/// `sqrt(n)`, `q*sqrt(n)`, `p + q*sqrt(n)`, `p - sqrt(n)`, `-sqrt(n)`.
pub fn parse_quad(text: &str) -> Result<QuadExt> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::BadNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    let Some(sqrt_at) = s.find("sqrt(") else {
        return parse_rational(&s).map(QuadExt::from_rational);
    };
    let close = s[sqrt_at..].find(')').map(|i| sqrt_at + i).ok_or_else(bad)?;
    if close + 1 != s.len() {
        return Err(bad());
    }
    let radicand = parse_rational(&s[sqrt_at + 5..close])?;
    if radicand.is_negative() {
        return Err(Error::NegativeRadicand(radicand.to_string()));
    }
    let head = &s[..sqrt_at];
    // head is "", "-", "+", "q*", "p+", "p-", "p+q*", "p-q*"
    let (head, coeff_text) = match head.strip_suffix('*') {
        Some(h) => {
            let split = h
                .char_indices()
                .skip(1)
                .filter(|&(i, c)| (c == '+' || c == '-') && !h[..i].ends_with(['e', 'E', '/']))
                .map(|(i, _)| i)
                .last();
            match split {
                Some(i) => (&h[..i], &h[i..]),
                None => ("", h),
            }
        }
        None => {
            let sign_pos = head.len().checked_sub(1).filter(|&i| matches!(&head[i..], "+" | "-"));
            match sign_pos {
                Some(i) => (&head[..i], &head[i..]),
                None if head.is_empty() => ("", ""),
                None => return Err(bad()),
            }
        }
    };
    let q = match coeff_text {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        t => parse_rational(t)?,
    };
    let p = if head.is_empty() { Rational::zero() } else { parse_rational(head)? };
    let root = QuadExt::sqrt_of(&radicand)?;
    Ok(root.scale(&q).add_rational(&p))
}
