//! Generators and structure constants of the centrally extended conformal
//! Galilei algebra g_l, for l an odd positive half-integer.
//!
//! The basis is C, D, H, M and P_0 .. P_{2l}. Nonzero brackets:
//!
//! ```text
//! [D, H] = 2H        [D, C] = -2C       [C, H] = D
//! [H, P_n] = -n P_{n-1}                 [D, P_n] = 2(l - n) P_n
//! [C, P_n] = (2l - n) P_{n+1}           [P_m, P_n] = delta_{m+n,2l} I_m M
//! ```
//!
//! with M central and I_m = (-1)^(m + l + 1/2) m! (2l - m)!.
//!
//! The triangular decomposition puts H and P_0 .. P_{l-1/2} in the raising
//! half, D and M in the Cartan part, and C and P_{l+1/2} .. P_{2l} in the
//! lowering half. The raising half is abelian exactly at l = 1/2.

use crate::exact::{big, fact, rat_int, MultiPoly, Rational};
use crate::pbw::UEAElement;
use num::bigint::BigInt;
use num::One;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("l must be an odd positive half-integer, got {0}")]
    InvalidHalfInt(String),
    #[error("generator index {index} out of range for l = {ell} (valid: 0..={max})")]
    IndexOutOfRange { index: u32, ell: HalfInt, max: u32 },
    #[error("cannot parse generator from {0:?}")]
    ParseGenerator(String),
}

/// An odd positive half-integer l, stored as 2l.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: u32,
}

impl HalfInt {
    /// Build from 2l; rejects even or zero values.
    pub fn from_twice(twice: u32) -> Result<Self, AlgebraError> {
        if twice == 0 || twice % 2 == 0 {
            return Err(AlgebraError::InvalidHalfInt(format!("{}/2", twice)));
        }
        Ok(Self { twice })
    }

    /// 2l as an integer.
    pub fn two_ell(&self) -> u32 {
        self.twice
    }

    /// l + 1/2, an integer.
    pub fn plus_half(&self) -> u32 {
        (self.twice + 1) / 2
    }

    /// l - 1/2, an integer. Also the largest raising P index and the length
    /// of the free part of a basis label.
    pub fn minus_half(&self) -> u32 {
        (self.twice - 1) / 2
    }

    /// Number of independent lowering-P exponents above P_{l+1/2}.
    pub fn k_len(&self) -> usize {
        self.minus_half() as usize
    }

    /// alpha_l = 2 ((l - 1/2)!)^2, the scalar in the singular-vector seed.
    pub fn alpha(&self) -> Rational {
        let f = fact(self.minus_half() as u64);
        Rational::from_integer(big(2) * &f * &f)
    }

    /// (l + 1/2)^2, an integer.
    pub fn plus_half_sq(&self) -> u32 {
        self.plus_half() * self.plus_half()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.twice)
    }
}

impl FromStr for HalfInt {
    type Err = AlgebraError;

    /// Accepts "1/2", "3/2", ... only.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::InvalidHalfInt(s.to_string());
        let (n, d) = s.trim().split_once('/').ok_or_else(bad)?;
        if d.trim() != "2" {
            return Err(bad());
        }
        let twice: u32 = n.trim().parse().map_err(|_| bad())?;
        Self::from_twice(twice).map_err(|_| bad())
    }
}

/// A basis generator. P carries its index; validity of the index against a
/// given l is checked by [`Generator::p`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    C,
    D,
    H,
    M,
    P(u32),
}

impl Generator {
    /// P_n, validated against 0 <= n <= 2l.
    pub fn p(ell: HalfInt, n: u32) -> Result<Self, AlgebraError> {
        if n > ell.two_ell() {
            return Err(AlgebraError::IndexOutOfRange {
                index: n,
                ell,
                max: ell.two_ell(),
            });
        }
        Ok(Generator::P(n))
    }

    pub fn is_valid(&self, ell: HalfInt) -> bool {
        match self {
            Generator::P(n) => *n <= ell.two_ell(),
            _ => true,
        }
    }

    /// Parse "C", "D", "H", "M" or "P<n>" with the index validated.
    pub fn parse(s: &str, ell: HalfInt) -> Result<Self, AlgebraError> {
        let s = s.trim();
        match s {
            "C" => Ok(Generator::C),
            "D" => Ok(Generator::D),
            "H" => Ok(Generator::H),
            "M" => Ok(Generator::M),
            _ => {
                let n: u32 = s
                    .strip_prefix('P')
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| AlgebraError::ParseGenerator(s.to_string()))?;
                Generator::p(ell, n)
            }
        }
    }

    fn class_rank(&self) -> u8 {
        match self {
            Generator::M => 0,
            Generator::D => 1,
            Generator::C => 2,
            Generator::P(_) => 3,
            Generator::H => 4,
        }
    }

    /// How much the generator shifts the level grading of a highest-weight
    /// module: positive for lowering, negative for raising, zero on the
    /// Cartan part.
    pub fn level_shift(&self, ell: HalfInt) -> i64 {
        match self {
            Generator::M | Generator::D => 0,
            Generator::C => 2,
            Generator::H => -2,
            Generator::P(n) => 2 * (*n as i64) - ell.two_ell() as i64,
        }
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Generator {
    /// Canonical normal-ordering rank: M, D, C, P_{2l}, ..., P_1, P_0, H.
    /// Words sorted ascending by this order are in normal form, with the
    /// lowering part on the left and the raising part on the right.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.class_rank().cmp(&other.class_rank()) {
            Ordering::Equal => match (self, other) {
                (Generator::P(a), Generator::P(b)) => b.cmp(a),
                _ => Ordering::Equal,
            },
            ord => ord,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::C => write!(f, "C"),
            Generator::D => write!(f, "D"),
            Generator::H => write!(f, "H"),
            Generator::M => write!(f, "M"),
            Generator::P(n) => write!(f, "P{}", n),
        }
    }
}

/// Which half of the triangular decomposition a generator sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangularClass {
    Raising,
    Cartan,
    Lowering,
}

pub fn triangular_class(ell: HalfInt, g: Generator) -> TriangularClass {
    match g {
        Generator::H => TriangularClass::Raising,
        Generator::D | Generator::M => TriangularClass::Cartan,
        Generator::C => TriangularClass::Lowering,
        Generator::P(n) => {
            if n <= ell.minus_half() {
                TriangularClass::Raising
            } else {
                TriangularClass::Lowering
            }
        }
    }
}

/// The raising generators in the fixed order P_0, ..., P_{l-1/2}, H.
pub fn raising_generators(ell: HalfInt) -> Vec<Generator> {
    let mut v: Vec<Generator> = (0..=ell.minus_half()).map(Generator::P).collect();
    v.push(Generator::H);
    v
}

/// Central-extension constant I_m = (-1)^(m + l + 1/2) m! (2l - m)!.
pub fn structure_i(ell: HalfInt, m: u32) -> Result<Rational, AlgebraError> {
    if m > ell.two_ell() {
        return Err(AlgebraError::IndexOutOfRange {
            index: m,
            ell,
            max: ell.two_ell(),
        });
    }
    let mag = fact(m as u64) * fact((ell.two_ell() - m) as u64);
    let sign = if (m + ell.plus_half()) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    Ok(Rational::from_integer(sign * mag))
}

/// The grading anti-automorphism on generators: swaps H with C, fixes D and
/// M, and reflects P_j to P_{2l-j}.
pub fn omega(ell: HalfInt, g: Generator) -> Result<Generator, AlgebraError> {
    Ok(match g {
        Generator::C => Generator::H,
        Generator::H => Generator::C,
        Generator::D => Generator::D,
        Generator::M => Generator::M,
        Generator::P(j) => {
            if j > ell.two_ell() {
                return Err(AlgebraError::IndexOutOfRange {
                    index: j,
                    ell,
                    max: ell.two_ell(),
                });
            }
            Generator::P(ell.two_ell() - j)
        }
    })
}

/// The bracket [a, b] as an element of the enveloping algebra (degree <= 1).
pub fn commutator(ell: HalfInt, a: Generator, b: Generator) -> Result<UEAElement, AlgebraError> {
    for g in [a, b] {
        if !g.is_valid(ell) {
            if let Generator::P(n) = g {
                return Err(AlgebraError::IndexOutOfRange {
                    index: n,
                    ell,
                    max: ell.two_ell(),
                });
            }
        }
    }
    use Generator::*;
    let term = |c: Rational, g: Generator| UEAElement::term(ell, &[g], MultiPoly::constant(c));
    let zero = UEAElement::zero(ell);
    let out = match (a, b) {
        (D, H) => term(rat_int(2), H),
        (H, D) => term(rat_int(-2), H),
        (D, C) => term(rat_int(-2), C),
        (C, D) => term(rat_int(2), C),
        (C, H) => term(rat_int(1), D),
        (H, C) => term(rat_int(-1), D),
        (H, P(n)) => {
            if n == 0 {
                zero
            } else {
                term(rat_int(-(n as i64)), P(n - 1))
            }
        }
        (P(n), H) => {
            if n == 0 {
                zero
            } else {
                term(rat_int(n as i64), P(n - 1))
            }
        }
        (D, P(n)) => term(rat_int(ell.two_ell() as i64 - 2 * n as i64), P(n)),
        (P(n), D) => term(rat_int(2 * n as i64 - ell.two_ell() as i64), P(n)),
        (C, P(n)) => {
            if n == ell.two_ell() {
                zero
            } else {
                term(rat_int((ell.two_ell() - n) as i64), P(n + 1))
            }
        }
        (P(n), C) => {
            if n == ell.two_ell() {
                zero
            } else {
                term(rat_int(-((ell.two_ell() - n) as i64)), P(n + 1))
            }
        }
        (P(m), P(n)) => {
            if m + n == ell.two_ell() {
                term(structure_i(ell, m)?, M)
            } else {
                zero
            }
        }
        (M, _) | (_, M) => zero,
        (C, C) | (D, D) | (H, H) => zero,
    };
    Ok(out)
}
