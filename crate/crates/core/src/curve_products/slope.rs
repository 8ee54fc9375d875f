use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Genus;
use crate::error::{Error, Result};
use crate::exact_num::Rational;

fn check_a(a: &Rational) -> Result<()> {
    if a <= &Rational::one() {
        return Err(Error::InvalidInput(format!("a = {a} must exceed 1")));
    }
    Ok(())
}

/// `-n (1 + n g / (n a + 1 - g - n))`.
pub fn slope_r(g: Genus, a: &Rational, n: u64) -> Result<Rational> {
    check_a(a)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let nq = Rational::from_integer(BigInt::from(n));
    let denom = &nq * a + Rational::one() - g.q() - &nq;
    if denom.is_zero() {
        return Err(Error::Pole { n });
    }
    Ok(-&nq * (Rational::one() + &nq * g.q() / denom))
}

/// `-(1 + g/(a - 1))`, the limit of `slope_r / n`.
pub fn slope_r_limit(g: Genus, a: &Rational) -> Result<Rational> {
    check_a(a)?;
    Ok(-(Rational::one() + g.q() / (a - Rational::one())))
}

/// `|slope_r(g, a, n)/n - slope_r_limit(g, a)|`.
pub fn slope_gap(g: Genus, a: &Rational, n: u64) -> Result<Rational> {
    let s = slope_r(g, a, n)?;
    let per = s / Rational::from_integer(BigInt::from(n));
    Ok((per - slope_r_limit(g, a)?).abs())
}
