//! Exact scalar and linear-algebra layer.
//!
//! Key items:
//! - [`Rational`], arbitrary-precision reduced fractions
//! - [`MultiPoly`], sparse polynomials in the two weights (delta, mu)
//! - [`TruncSeries`], one-variable power series truncated at a fixed order
//! - [`poly_det`], fraction-free determinant over the polynomial ring
//! - [`rat_kernel`] / [`rat_rref`], exact linear algebra over the rationals

mod matrix;
mod poly;
mod rational;
mod series;

pub use matrix::{leibniz_det, poly_det, rat_kernel, rat_rref, rat_rref_ordered, reduce_against};
pub use poly::{MultiPoly, PolyError};
pub use rational::{
    big, binom, fact, format_rational, parse_rational, rat, rat_int, ParseRationalError, Rational,
};
pub use series::TruncSeries;

/// Default truncation order for generating-function work.
pub const DEFAULT_SERIES_ORDER: usize = 64;
