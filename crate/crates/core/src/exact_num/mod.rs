//! Exact arithmetic: rationals, quadratic surds, rational intervals and radicals.

mod biquad;
mod interval;
mod quad;
mod radical;
mod rational;

pub use biquad::{Biquad, BiquadField};
pub use interval::{
    nth_root, root_enclosure, sig_fig_decimal, sqrt_enclosure, truncated_decimal, ExactOrInterval,
    RationalInterval,
};
pub use quad::{parse_quad, quad_compare_mixed, quad_sign, QuadExt};
pub use radical::Radical;
pub use rational::{
    binomial, exact_nth_root, from_big, int, least_integer_above, parse_rational, rat,
    simplest_between, sqrt_floor, to_f64, Rational,
};

/// Default width of interval enclosures.
pub fn default_precision() -> Rational {
    rat(1, 1_000_000_000_000)
}
