//! Arbitrary-precision rational scalars and small integer combinatorics.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Exact rational number. Always stored reduced with a positive denominator;
/// zero is 0/1. Construction through [`rat`], [`rat_int`] or
/// [`Rational::new`] normalizes, so two equal values have identical
/// representations.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer part in rational literal: {0}")]
    BadInt(String),
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
}

/// Rational from a numerator/denominator pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// BigInt from a machine integer.
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// n! as a BigInt.
pub fn fact(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= BigInt::from(i);
    }
    out
}

/// Binomial coefficient C(n, k), zero when k > n.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

/// Serialize as "num/den", denominator always present.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse "num/den" or a bare integer. The sign may sit on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let (ns, ds) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n = BigInt::from_str(ns.trim()).map_err(|_| ParseRationalError::BadInt(ns.into()))?;
    let d = BigInt::from_str(ds.trim()).map_err(|_| ParseRationalError::BadInt(ds.into()))?;
    if d.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}
