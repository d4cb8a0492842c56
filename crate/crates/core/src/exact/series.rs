//! Power series in one variable truncated at a fixed order.

use super::poly::PolyError;
use super::rational::Rational;
use num::{One, Zero};

/// Coefficients c[0..=order] of a series modulo x^(order+1). Arithmetic
/// requires both operands to share the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// c * x^k, truncated away entirely if k exceeds the order.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Self { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order(), "series order mismatch");
        let n = self.coeffs.len();
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    /// Multiplicative inverse modulo x^(order+1).
    ///
    /// # Edge cases
    /// Fails when the constant term vanishes.
    pub fn reciprocal(&self) -> Result<Self, PolyError> {
        if self.coeffs[0].is_zero() {
            return Err(PolyError::NonInvertibleSeries);
        }
        let n = self.coeffs.len();
        let inv0 = Rational::one() / &self.coeffs[0];
        let mut out = vec![Rational::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc * &inv0;
        }
        Ok(Self { coeffs: out })
    }

    /// 1 - x^k at the given order.
    pub fn one_minus_xk(order: usize, k: usize) -> Self {
        let mut s = Self::one(order);
        if k <= order {
            s.coeffs[k] = -Rational::one();
        }
        s
    }

    /// 1 / (1 - x^k): the geometric series in x^k.
    pub fn geometric(order: usize, k: usize) -> Self {
        Self::one_minus_xk(order, k)
            .reciprocal()
            .expect("1 - x^k is invertible")
    }
}
