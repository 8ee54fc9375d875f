use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `-13`, `13/6`, `13.7` or `-0.25`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::BadNumber(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = parse_int(n.trim()).ok_or_else(bad)?;
        let d: BigInt = parse_int(d.trim()).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let joined = format!("{digits}{frac}");
        let n: BigInt = joined.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(n, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_int(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflows f64; scale both down first
        let bits = x.numer().bits().max(x.denom().bits());
        let shift = bits.saturating_sub(1000) as usize;
        let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Largest integer `s` with `s^2 <= n`.
pub fn sqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "sqrt_floor of a negative integer");
    n.sqrt()
}

/// Binomial coefficient with arbitrary-precision result; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact rational `r` with `r^n = x`, if one exists.
pub fn exact_nth_root(x: &Rational, n: u32) -> Option<Rational> {
    if x.is_negative() || n == 0 {
        return None;
    }
    let num = x.numer().nth_root(n);
    let den = x.denom().nth_root(n);
    if num.pow(n) == *x.numer() && den.pow(n) == *x.denom() {
        Some(Rational::new(num, den))
    } else {
        None
    }
}

/// Smallest integer strictly greater than `x`.
pub fn least_integer_above(x: &Rational) -> BigInt {
    x.floor().to_integer() + 1
}

/// The rational with smallest denominator strictly between `lo` and `hi`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty open interval");
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !lo.is_negative() {
        simplest_between_nonneg(lo, hi)
    } else {
        -simplest_between_nonneg(&-hi, &-lo)
    }
}

// Stern-Brocot descent via continued fractions on the open interval (lo, hi).
fn simplest_between_nonneg(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if &(fl.clone() + Rational::one()) < hi {
        return fl + Rational::one();
    }
    // lo and hi share the integer part (or hi is exactly fl + 1)
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    if lo_frac.is_zero() {
        // interval (fl, fl + hi_frac): take fl + 1/m with 1/m < hi_frac
        let m = least_integer_above(&hi_frac.recip());
        return fl + Rational::new(BigInt::one(), m);
    }
    let inner = simplest_between_nonneg(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

/// Decomposes `n >= 1` as `s^2 * d` with `d` squarefree whenever the
/// factor search completes; returns `(s, d)`.
pub(crate) fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut single = BigInt::one();
    let mut p = BigInt::from(2u32);
    let mut steps = 0u32;
    while &p * &p * &p <= rest && steps < 2_000_000 {
        let p_sq = &p * &p;
        while (&rest % &p_sq).is_zero() {
            rest /= &p_sq;
            square *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            single *= &p;
        }
        p += if steps == 0 { 1u32 } else { 2u32 };
        steps += 1;
    }
    // every prime factor of rest exceeds p and p^3 > rest: at most two remain
    let r = rest.sqrt();
    if &r * &r == rest {
        (square * r, single)
    } else {
        (square, single * rest)
    }
}
