//! Sparse exact polynomials in the two weight variables delta and mu.

use super::rational::{format_rational, parse_rational, Rational};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: MultiPoly },
    #[error("series reciprocal needs a nonzero constant term")]
    NonInvertibleSeries,
    #[error("bad polynomial JSON: {0}")]
    BadJson(String),
}

/// Exponent pair (degree in delta, degree in mu).
pub type Exp = (u32, u32);

/// Graded-lexicographic order with delta ranked above mu. Used for leading
/// terms in division and for canonical printing.
fn grlex(a: &Exp, b: &Exp) -> std::cmp::Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// A polynomial in Q[delta, mu], stored as a map from exponent pairs to
/// nonzero rational coefficients. The zero polynomial is the empty map, so
/// structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exp, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        Self { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::constant(Rational::from_integer(n))
    }

    /// The variable delta.
    pub fn delta() -> Self {
        Self::monomial(1, 0, Rational::one())
    }

    /// The variable mu.
    pub fn mu() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// c * delta^dd * mu^dm.
    pub fn monomial(dd: u32, dm: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dd, dm), c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(constant) when the polynomial has no variable part (zero counts).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&(0, 0)) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, e: Exp, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect();
        Self { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.insert_add((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, k)| (*e, k * c)).collect();
        Self { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under graded lex with delta > mu.
    pub fn leading_term(&self) -> Option<(Exp, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    /// Exact quotient self / divisor. Fails with the would-be remainder when
    /// the division does not come out even.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let (lede, ledc) = divisor.leading_term().expect("nonzero divisor");
        let ledc = ledc.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        let mut stuck = Self::zero();
        while let Some((e, c)) = rem.leading_term() {
            let c = c.clone();
            if e.0 >= lede.0 && e.1 >= lede.1 {
                let t = Self::monomial(e.0 - lede.0, e.1 - lede.1, &c / &ledc);
                quo = quo.add(&t);
                rem = rem.sub(&t.mul(divisor));
            } else {
                // leading term not reducible: it can never cancel later
                stuck.insert_add(e, c.clone());
                rem.terms.remove(&e);
            }
        }
        if stuck.is_zero() {
            Ok(quo)
        } else {
            Err(PolyError::NotDivisible { remainder: stuck })
        }
    }

    /// Evaluate at numeric (delta, mu).
    pub fn eval(&self, delta: &Rational, mu: &Rational) -> Rational {
        let mut out = Rational::zero();
        for ((dd, dm), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..*dd {
                t *= delta;
            }
            for _ in 0..*dm {
                t *= mu;
            }
            out += t;
        }
        out
    }

    /// Substitute a numeric value for delta, keeping mu symbolic.
    pub fn subst_delta(&self, delta: &Rational) -> Self {
        let mut out = Self::zero();
        for ((dd, dm), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..*dd {
                t *= delta;
            }
            out.insert_add((0, *dm), t);
        }
        out
    }

    pub fn deg_delta(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_mu(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    pub fn min_deg_mu(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).min()
    }

    /// Distinct mu-exponents that occur.
    pub fn mu_exponents(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(|e| e.1).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// JSON as a list of {"dd", "dm", "c"} objects in ascending (dd, dm).
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((dd, dm), c)| json!({"dd": dd, "dm": dm, "c": format_rational(c)}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, PolyError> {
        let arr = v
            .as_array()
            .ok_or_else(|| PolyError::BadJson("expected array".into()))?;
        let mut out = Self::zero();
        for item in arr {
            let dd = item["dd"]
                .as_u64()
                .ok_or_else(|| PolyError::BadJson("missing dd".into()))? as u32;
            let dm = item["dm"]
                .as_u64()
                .ok_or_else(|| PolyError::BadJson("missing dm".into()))? as u32;
            let cs = item["c"]
                .as_str()
                .ok_or_else(|| PolyError::BadJson("missing c".into()))?;
            let c = parse_rational(cs).map_err(|e| PolyError::BadJson(e.to_string()))?;
            out.insert_add((dd, dm), c);
        }
        Ok(out)
    }
}

fn fmt_coeff_var(f: &mut fmt::Formatter<'_>, c: &Rational, vars: &str) -> fmt::Result {
    // |c| with fraction parenthesized when attached to a variable part
    let a = c.abs();
    if vars.is_empty() {
        write!(f, "{}", a)
    } else if a.is_one() {
        write!(f, "{}", vars)
    } else if a.denom().is_one() {
        write!(f, "{}{}", a, vars)
    } else {
        write!(f, "({}){}", a, vars)
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending graded lex (delta > mu).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Exp, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|a, b| grlex(b.0, a.0));
        for (i, ((dd, dm), c)) in entries.into_iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut vars = String::new();
            match dd {
                0 => {}
                1 => vars.push('δ'),
                _ => vars.push_str(&format!("δ^{}", dd)),
            }
            match dm {
                0 => {}
                1 => vars.push('μ'),
                _ => vars.push_str(&format!("μ^{}", dm)),
            }
            fmt_coeff_var(f, c, &vars)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_int};
    use proptest::prelude::*;

    fn dlt() -> MultiPoly {
        MultiPoly::delta()
    }

    fn mu() -> MultiPoly {
        MultiPoly::mu()
    }

    #[test]
    fn display_canonical() {
        // (delta + mu)^2 expands with the delta-heavy terms first
        let p = dlt().add(&mu()).pow(2);
        assert_eq!(p.to_string(), "δ^2 + 2δμ + μ^2");
        let q = dlt().scale(&rat_int(-2)).mul(&mu().pow(2)).sub(&mu().pow(2));
        assert_eq!(q.to_string(), "-2δμ^2 - μ^2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::constant(rat(1, 2)).mul(&dlt()).to_string(), "(1/2)δ");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = dlt().sub(&dlt());
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let q = dlt().add(&mu()).sub(&mu());
        assert_eq!(q, dlt());
    }

    #[test]
    fn exact_division_examples() {
        // (-2 delta mu^2 - mu^2) / (2 delta + 1) = -mu^2
        let num = dlt()
            .scale(&rat_int(-2))
            .mul(&mu().pow(2))
            .sub(&mu().pow(2));
        let den = dlt().scale(&rat_int(2)).add(&MultiPoly::one());
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, mu().pow(2).neg());
        // and the round trip
        assert_eq!(q.mul(&den), num);
    }

    #[test]
    fn division_failure_carries_remainder() {
        let num = dlt().mul(&mu()).add(&MultiPoly::one());
        let den = dlt();
        match num.exact_div(&den) {
            Err(PolyError::NotDivisible { remainder }) => {
                assert_eq!(remainder, MultiPoly::one());
            }
            other => panic!("expected NotDivisible, got {:?}", other),
        }
        assert_eq!(
            dlt().exact_div(&MultiPoly::zero()),
            Err(PolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn eval_and_subst() {
        let p = dlt().scale(&rat_int(2)).add(&MultiPoly::one()).mul(&mu());
        assert_eq!(p.eval(&rat(-1, 2), &rat_int(7)), rat_int(0));
        let s = p.subst_delta(&rat_int(1));
        assert_eq!(s, mu().scale(&rat_int(3)));
        assert_eq!(s.deg_delta(), Some(0));
    }

    #[test]
    fn json_round_trip() {
        let p = dlt().pow(3).sub(&mu().scale(&rat(5, 3))).add(&MultiPoly::one());
        let v = p.to_json();
        assert_eq!(MultiPoly::from_json(&v).unwrap(), p);
        assert_eq!(MultiPoly::from_json(&MultiPoly::zero().to_json()).unwrap(), MultiPoly::zero());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4), -6i64..6), 0..6).prop_map(|ts| {
            let mut p = MultiPoly::zero();
            for ((dd, dm), c) in ts {
                p = p.add(&MultiPoly::monomial(dd, dm, rat_int(c)));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), MultiPoly::zero());
            prop_assert_eq!(a.mul(&MultiPoly::one()), a.clone());
        }

        #[test]
        fn exact_div_round_trip(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = a.mul(&b);
            let q = prod.exact_div(&b).unwrap();
            prop_assert_eq!(q, a);
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly()) {
            let d = rat(3, 2);
            let m = rat(-5, 7);
            prop_assert_eq!(a.add(&b).eval(&d, &m), a.eval(&d, &m) + b.eval(&d, &m));
            prop_assert_eq!(a.mul(&b).eval(&d, &m), a.eval(&d, &m) * b.eval(&d, &m));
        }
    }
}
