//! Jet-separation and global-generation thresholds expressed through a
//! lower bound on a Seshadri constant.
//!
//! Strict inequalities are resolved to the least integer strictly above the
//! bound; enclosed constants are widened outward first, so every integer
//! returned is valid. Integer answers that index symmetric powers are clamped
//! at 0.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_num::{binomial, least_integer_above, ExactOrInterval, Radical, Rational, RationalInterval};

/// Where the conclusion of each threshold holds.
pub const HACON_QUALIFIER: &str = "very general points";
pub const POPA_SCHNELL_QUALIFIER: &str = "general points";
pub const LINE_BUNDLE_QUALIFIER: &str = "general points";
pub const ADJOINT_QUALIFIER: &str = "the point x";

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn qu(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn check_positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidInput(format!("{name} must be positive")));
    }
    Ok(())
}

fn check_jet_order(s: i64) -> Result<()> {
    if s < -1 {
        return Err(Error::InvalidInput(format!("jet order s = {s} must be at least -1")));
    }
    Ok(())
}

/// The `i`-th candidate `binom(n+r-i, r)^(-1/(n-i)) / (n-i)`.
pub fn hacon_term(n: u64, r: u64, i: u64) -> Result<Radical> {
    check_positive("n", n)?;
    check_positive("r", r)?;
    if i >= n {
        return Err(Error::InvalidInput(format!("term index {i} must be below n = {n}")));
    }
    let e = n - i;
    let b = binomial(n + r - i, r);
    let idx = u32::try_from(e).map_err(|_| Error::InvalidInput("dimension too large".into()))?;
    Radical::new(Rational::new(BigInt::from(1), BigInt::from(e)), Rational::new(BigInt::from(1), b), idx)
}

/// The constant `M` as an exact radical: the minimum of the candidates,
/// decided by exact comparison.
pub fn hacon_m_radical(n: u64, r: u64) -> Result<Radical> {
    let mut best = hacon_term(n, r, 0)?;
    for i in 1..n {
        let t = hacon_term(n, r, i)?;
        if t.exact_cmp(&best) == Ordering::Less {
            best = t;
        }
    }
    Ok(best)
}

/// `M` in exact form when rational or quadratic, else an enclosure of width `precision`.
#[allow(non_snake_case)]
pub fn hacon_M(n: u64, r: u64, precision: &Rational) -> Result<ExactOrInterval> {
    Ok(hacon_m_radical(n, r)?.evaluate(precision))
}

/// A positive constant known exactly or only through an enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositiveConstant {
    Exact(Radical),
    Enclosed(RationalInterval),
}

impl PositiveConstant {
    pub fn rational(x: Rational) -> Self {
        Self::Exact(Radical::rational(x))
    }

    fn check(&self) -> Result<()> {
        let ok = match self {
            Self::Exact(r) => r.sign() > 0,
            Self::Enclosed(i) => i.lo().is_positive(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput("M must be certified positive".into()))
        }
    }

    /// Least integer strictly above `x / self`, widening enclosures outward.
    pub fn least_integer_above_quotient(&self, x: &Rational) -> Result<BigInt> {
        self.check()?;
        Ok(match self {
            Self::Exact(r) => r.least_integer_above_quotient(x),
            Self::Enclosed(i) => {
                let worst = if x.is_negative() { x / i.hi() } else { x / i.lo() };
                least_integer_above(&worst)
            }
        })
    }
}

impl fmt::Display for PositiveConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(r) => write!(f, "{r}"),
            Self::Enclosed(i) => write!(f, "{i}"),
        }
    }
}

/// Smallest integer `lambda > n*beta/M`.
pub fn hacon_lambda(n: u64, beta: &Rational, m: &PositiveConstant) -> Result<BigInt> {
    check_positive("n", n)?;
    if !beta.is_positive() {
        return Err(Error::InvalidInput("beta must be positive".into()));
    }
    m.least_integer_above_quotient(&(qu(n) * beta))
}

/// `(n+s)/(p+r)`: an `s`-jet separation threshold for the adjoint bundle.
pub fn adjoint_jet_threshold(n: u64, r: u64, p: u64, s: i64) -> Result<Rational> {
    check_positive("n", n)?;
    check_positive("r", r)?;
    check_jet_order(s)?;
    Ok((qu(n) + q(s)) / qu(p + r))
}

/// Least nonnegative integer, or `Impossible` when no value works.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinParameter {
    Value(BigInt),
    Impossible,
}

impl fmt::Display for MinParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Value(v) => write!(f, "{v}"),
            Self::Impossible => write!(f, "impossible"),
        }
    }
}

/// Least `x >= 0` with `x > bound`, that is `max(0, floor(bound) + 1)`.
fn least_nonneg_above(bound: &Rational) -> BigInt {
    least_integer_above(bound).max(BigInt::zero())
}

/// Least `p` with `(n+s)/(p+r) < eps`.
pub fn adjoint_min_p(n: u64, r: u64, s: i64, eps: &Rational) -> Result<MinParameter> {
    check_positive("n", n)?;
    check_positive("r", r)?;
    check_jet_order(s)?;
    if !eps.is_positive() {
        return Ok(MinParameter::Impossible);
    }
    // p + r > (n+s)/eps
    let bound = (qu(n) + q(s)) / eps - qu(r);
    Ok(MinParameter::Value(least_nonneg_above(&bound)))
}

/// `k(n+s)/(m + k(r-1) + 1)`.
pub fn ps_seshadri_threshold(k: u64, n: u64, s: i64, m: u64, r: u64) -> Result<Rational> {
    check_positive("k", k)?;
    check_positive("n", n)?;
    check_positive("r", r)?;
    check_jet_order(s)?;
    Ok(qu(k) * (qu(n) + q(s)) / qu(m + k * (r - 1) + 1))
}

/// Least `m` with `ps_seshadri_threshold(k, n, s, m, r) < eps`.
pub fn ps_min_m(k: u64, n: u64, s: i64, r: u64, eps: &Rational) -> Result<MinParameter> {
    ps_seshadri_threshold(k, n, s, 0, r)?;
    if !eps.is_positive() {
        return Ok(MinParameter::Impossible);
    }
    // m + k(r-1) + 1 > k(n+s)/eps
    let bound = qu(k) * (qu(n) + q(s)) / eps - qu(k * (r - 1) + 1);
    Ok(MinParameter::Value(least_nonneg_above(&bound)))
}

/// Smallest `lambda >= 0` with `lambda > k(beta(n+s)/M - (r-1)) - 1`.
pub fn ps_lambda(k: u64, beta: &Rational, m: &PositiveConstant, n: u64, s: i64, r: u64) -> Result<BigInt> {
    ps_seshadri_threshold(k, n, s, 0, r)?;
    if !beta.is_positive() {
        return Err(Error::InvalidInput("beta must be positive".into()));
    }
    // lambda + 1 + k(r-1) > k beta (n+s) / M
    let z = m.least_integer_above_quotient(&(qu(k) * beta * (qu(n) + q(s))))?;
    let lambda = z - BigInt::from(k * (r - 1) + 1);
    Ok(lambda.max(BigInt::zero()))
}

/// `k(n(n+s)+1)`, or `k((n-1)(n+s)+1)` for ample bundles in dimension at most 3.
pub fn line_bundle_ell(k: u64, n: u64, s: i64, low_dim_ample: bool) -> Result<BigInt> {
    check_positive("k", k)?;
    check_positive("n", n)?;
    check_jet_order(s)?;
    if low_dim_ample && n > 3 {
        return Err(Error::InvalidInput(format!("the ample variant needs n <= 3, got n = {n}")));
    }
    let lead = if low_dim_ample { n - 1 } else { n };
    let inner: BigInt = BigInt::from(lead) * (BigInt::from(n) + BigInt::from(s)) + 1;
    let ell: BigInt = BigInt::from(k) * inner;
    Ok(ell.max(BigInt::zero()))
}
