//! Exact number representations: arbitrary-precision rationals, factored
//! integers, products of rational prime powers, certified log intervals, and
//! exact symmetric-matrix linear algebra.

mod factored;
mod interval;
mod matrix;
pub mod primes;
mod power;

pub use factored::FactoredInt;
pub use interval::LogInterval;
pub use matrix::{bareiss_det, SymMatrix};
pub use power::{ppow_compare, PowerProduct};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Rational `n / d` (d must be nonzero).
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
