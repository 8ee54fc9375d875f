use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::quad::QuadExt;
use super::rational::{exact_nth_root, to_f64, Rational};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with rational endpoints certified to contain
/// some real value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_negative() {
            Self { lo: &self.hi * k, hi: &self.lo * k }
        } else {
            Self { lo: &self.lo * k, hi: &self.hi * k }
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if !self.is_positive() && !self.is_negative() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Smallest `k` with `2^-k <= width`.
fn bits_for(width: &Rational) -> u64 {
    assert!(width.is_positive(), "precision must be positive");
    // 2^-k <= n/d  iff  d <= n * 2^k
    let (n, d) = (width.numer(), width.denom());
    let fits = |k: u64| d <= &(n << k as usize);
    let mut k = d.bits().saturating_sub(n.bits());
    while !fits(k) {
        k += 1;
    }
    while k > 0 && fits(k - 1) {
        k -= 1;
    }
    k
}

/// Encloses `sqrt(x)` for rational `x >= 0` in an interval of width at most `width`.
pub fn sqrt_enclosure(x: &Rational, width: &Rational) -> RationalInterval {
    assert!(!x.is_negative(), "square root of a negative number");
    if let Some(r) = exact_nth_root(x, 2) {
        return RationalInterval::point(r);
    }
    // sqrt(a/b) = sqrt(a*b)/b
    let den = x.denom().clone();
    let radicand = x.numer() * &den;
    let denom_width = width * Rational::from_integer(den.clone());
    let k = bits_for(&denom_width);
    let scale = BigInt::one() << (2 * k);
    let s = (radicand * scale).sqrt();
    let two_k = BigInt::one() << k;
    let lo = Rational::new(s.clone(), &two_k * &den);
    let hi = Rational::new(s + 1, two_k * den);
    RationalInterval { lo, hi }
}

/// Encloses `x^(1/n)` for rational `x >= 0` in an interval of width at most `width`.
pub fn root_enclosure(x: &Rational, n: u32, width: &Rational) -> RationalInterval {
    assert!(n >= 1 && !x.is_negative());
    if let Some(r) = exact_nth_root(x, n) {
        return RationalInterval::point(r);
    }
    // x^(1/n) = (a * b^(n-1))^(1/n) / b
    let den = x.denom().clone();
    let radicand = x.numer() * num_traits::pow(den.clone(), n as usize - 1);
    let denom_width = width * Rational::from_integer(den.clone());
    let k = bits_for(&denom_width);
    let scale = BigInt::one() << (k as usize * n as usize);
    let s = (radicand * scale).nth_root(n);
    let two_k = BigInt::one() << k;
    let lo = Rational::new(s.clone(), &two_k * &den);
    let hi = Rational::new(s + 1, two_k * den);
    RationalInterval { lo, hi }
}

/// A value that is either known exactly or only enclosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOrInterval {
    Exact(Rational),
    Quad(QuadExt),
    Interval(RationalInterval),
}

impl ExactOrInterval {
    pub fn from_quad(q: QuadExt) -> Self {
        match q.to_rational() {
            Some(r) => Self::Exact(r),
            None => Self::Quad(q),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Self::Interval(_))
    }

    pub fn as_quad(&self) -> Option<QuadExt> {
        match self {
            Self::Exact(r) => Some(QuadExt::from_rational(r.clone())),
            Self::Quad(q) => Some(q.clone()),
            Self::Interval(_) => None,
        }
    }

    /// An enclosure of width at most `width` (intervals are returned as-is).
    pub fn enclose(&self, width: &Rational) -> RationalInterval {
        match self {
            Self::Exact(r) => RationalInterval::point(r.clone()),
            Self::Quad(q) => q.enclose(width),
            Self::Interval(i) => i.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(r) => to_f64(r),
            Self::Quad(q) => q.to_f64(),
            Self::Interval(i) => i.to_f64(),
        }
    }

    /// Certified decimal digits, truncated toward zero. See [`truncated_decimal`].
    pub fn to_decimal(&self, frac_digits: u32) -> String {
        truncated_decimal(|w| self.enclose(w), frac_digits)
    }

    /// Certified significant figures, truncated toward zero.
    pub fn to_sig_figs(&self, sig: u32) -> String {
        sig_fig_decimal(|w| self.enclose(w), sig)
    }
}

impl fmt::Display for ExactOrInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(r) => write!(f, "{r}"),
            Self::Quad(q) => write!(f, "{q}"),
            Self::Interval(i) => write!(f, "{i}"),
        }
    }
}

/// Returns `x` if rational, `sqrt(x)` as a surd if `n = 2`, and otherwise an
/// enclosure of `x^(1/n)` of width at most `precision`.
pub fn nth_root(x: &Rational, n: u32, precision: &Rational) -> Result<ExactOrInterval> {
    if n == 0 {
        return Err(Error::ZeroRootIndex);
    }
    if x.is_negative() {
        return Err(Error::NegativeRadicand(x.to_string()));
    }
    if !precision.is_positive() {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    if let Some(r) = exact_nth_root(x, n) {
        return Ok(ExactOrInterval::Exact(r));
    }
    if n == 2 {
        return Ok(ExactOrInterval::Quad(QuadExt::sqrt_of(x)?));
    }
    Ok(ExactOrInterval::Interval(root_enclosure(x, n, precision)))
}

fn ten_pow(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

fn render_scaled(negative: bool, digits: BigInt, frac_digits: u32) -> String {
    let mut s = digits.to_string();
    if frac_digits > 0 {
        while s.len() <= frac_digits as usize {
            s.insert(0, '0');
        }
        s.insert(s.len() - frac_digits as usize, '.');
    }
    if negative && digits.is_positive() {
        s.insert(0, '-');
    }
    s
}

/// Renders the value enclosed by `enclose` with `frac_digits` decimals,
/// truncated toward zero. Every printed digit is certified: enclosures are
/// refined until both endpoints agree, giving up after a fixed budget and
/// printing fewer digits if the enclosure never separates.
pub fn truncated_decimal<F>(enclose: F, frac_digits: u32) -> String
where
    F: Fn(&Rational) -> RationalInterval,
{
    let mut width = Rational::new(BigInt::one(), ten_pow(frac_digits + 2));
    for _ in 0..64 {
        let iv = enclose(&width);
        if let Some(s) = try_truncate(&iv, frac_digits) {
            return s;
        }
        if iv.width().is_zero() {
            break;
        }
        width /= Rational::from_integer(BigInt::from(1024));
    }
    let iv = enclose(&width);
    (0..frac_digits)
        .rev()
        .find_map(|k| try_truncate(&iv, k))
        .unwrap_or_else(|| iv.to_string())
}

fn try_truncate(iv: &RationalInterval, frac_digits: u32) -> Option<String> {
    let scale = Rational::from_integer(ten_pow(frac_digits));
    let trunc = |x: &Rational| {
        let y = x * &scale;
        (y.is_negative(), y.abs().floor().to_integer())
    };
    let (neg_lo, lo) = trunc(iv.lo());
    let (neg_hi, hi) = trunc(iv.hi());
    if lo == hi && (neg_lo == neg_hi || lo.is_zero()) {
        Some(render_scaled(neg_lo, lo, frac_digits))
    } else {
        None
    }
}

/// Renders with `sig` significant figures, truncated toward zero.
pub fn sig_fig_decimal<F>(enclose: F, sig: u32) -> String
where
    F: Fn(&Rational) -> RationalInterval,
{
    let coarse = enclose(&Rational::new(BigInt::one(), ten_pow(sig + 2)));
    let mag = coarse.lo().abs().max(coarse.hi().abs());
    if mag.is_zero() {
        return "0".into();
    }
    // e with 10^(e-1) <= mag < 10^e
    let ten = Rational::from_integer(BigInt::from(10));
    let tenth = Rational::new(BigInt::one(), BigInt::from(10));
    let mut e: i64 = 0;
    let mut y = mag;
    while y >= Rational::one() {
        y /= &ten;
        e += 1;
    }
    while y < tenth {
        y *= &ten;
        e -= 1;
    }
    let frac = (sig as i64 - e).max(0) as u32;
    truncated_decimal(enclose, frac)
}
