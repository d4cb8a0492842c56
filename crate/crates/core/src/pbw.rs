//! Normal ordering in the universal enveloping algebra.
//!
//! Monomials are kept in the canonical generator order M, D, C, P_{2l}, ...,
//! P_0, H (see [`crate::algebra::Generator`]'s `Ord`). [`normal_order`]
//! rewrites an arbitrary word into this basis by repeatedly exchanging the
//! leftmost out-of-order adjacent pair and adding the bracket correction.
//!
//! [`power_commutator`] provides closed forms for the commutators of a
//! single generator with a power of another; they are checked against the
//! rewriter in tests and serve as an independent route elsewhere.

use crate::algebra::{commutator, omega, AlgebraError, Generator, HalfInt};
use crate::exact::{binom, fact, rat_int, MultiPoly, Rational};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PbwError {
    #[error("elements belong to different algebras: l = {0} vs l = {1}")]
    MixedAlgebra(HalfInt, HalfInt),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A normal-ordered monomial: factors strictly ascending in the canonical
/// generator order, all exponents positive. The empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PBWMonomial {
    factors: Vec<(Generator, u32)>,
}

impl PBWMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// From a word already sorted in canonical order.
    fn from_sorted_word(word: &[Generator]) -> Self {
        let mut factors: Vec<(Generator, u32)> = Vec::new();
        for &g in word {
            match factors.last_mut() {
                Some((last, e)) if *last == g => *e += 1,
                _ => factors.push((g, 1)),
            }
        }
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Self { factors }
    }

    /// From (generator, exponent) pairs already in canonical order.
    pub fn from_factors(factors: Vec<(Generator, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, e)| e > 0));
        Self { factors }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total word length.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, g: Generator) -> u32 {
        self.factors
            .iter()
            .find(|&&(h, _)| h == g)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn to_word(&self) -> Vec<Generator> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for &(g, e) in &self.factors {
            for _ in 0..e {
                w.push(g);
            }
        }
        w
    }
}

impl fmt::Display for PBWMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{}", g)?;
            } else {
                write!(f, "{}^{}", g, e)?;
            }
        }
        Ok(())
    }
}

/// An element of the enveloping algebra: a finite sum of normal-ordered
/// monomials with polynomial coefficients. Equality is structural, which by
/// the normal-form invariant is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UEAElement {
    ell: HalfInt,
    terms: BTreeMap<PBWMonomial, MultiPoly>,
}

impl UEAElement {
    pub fn zero(ell: HalfInt) -> Self {
        Self {
            ell,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ell: HalfInt) -> Self {
        Self::scalar(ell, MultiPoly::one())
    }

    pub fn scalar(ell: HalfInt, c: MultiPoly) -> Self {
        let mut out = Self::zero(ell);
        out.insert_add(PBWMonomial::one(), c);
        out
    }

    /// c times the normal ordering of the given word.
    pub fn term(ell: HalfInt, word: &[Generator], c: MultiPoly) -> Self {
        normal_order(ell, word).scale(&c)
    }

    pub fn from_generator(ell: HalfInt, g: Generator) -> Self {
        debug_assert!(g.is_valid(ell));
        let mut out = Self::zero(ell);
        out.insert_add(PBWMonomial::from_sorted_word(&[g]), MultiPoly::one());
        out
    }

    pub fn ell(&self) -> HalfInt {
        self.ell
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PBWMonomial, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient_of(&self, m: &PBWMonomial) -> MultiPoly {
        self.terms.get(m).cloned().unwrap_or_else(MultiPoly::zero)
    }

    fn insert_add(&mut self, m: PBWMonomial, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(MultiPoly::zero);
        *slot = slot.add(&c);
        if slot.is_zero() {
            let key = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PbwError> {
        if self.ell != other.ell {
            return Err(PbwError::MixedAlgebra(self.ell, other.ell));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PbwError> {
        self.add(&other.scale(&MultiPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = Self::zero(self.ell);
        for (m, k) in &self.terms {
            out.insert_add(m.clone(), k.mul(c));
        }
        out
    }

    /// Product in the enveloping algebra, re-normal-ordered.
    pub fn mul(&self, other: &Self) -> Result<Self, PbwError> {
        if self.ell != other.ell {
            return Err(PbwError::MixedAlgebra(self.ell, other.ell));
        }
        let mut out = Self::zero(self.ell);
        for (ma, ca) in &self.terms {
            let wa = ma.to_word();
            for (mb, cb) in &other.terms {
                let mut w = wa.clone();
                w.extend(mb.to_word());
                let ordered = normal_order(self.ell, &w);
                for (m, c) in ordered.terms {
                    out.insert_add(m, c.mul(ca).mul(cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self, PbwError> {
        let mut out = Self::one(self.ell);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The grading anti-automorphism, extended to products by reversal.
    /// Scalars are fixed. Involutive.
    pub fn omega(&self) -> Result<Self, PbwError> {
        let mut out = Self::zero(self.ell);
        for (m, c) in &self.terms {
            let mut w: Vec<Generator> = m
                .to_word()
                .into_iter()
                .rev()
                .map(|g| omega(self.ell, g))
                .collect::<Result<_, _>>()?;
            w.shrink_to_fit();
            let ordered = normal_order(self.ell, &w);
            for (mm, cc) in ordered.terms {
                out.insert_add(mm, cc.mul(c));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({}) {}", c, m)?;
            }
        }
        Ok(())
    }
}

/// Rewrite a word into the normal-ordered basis. The algorithm exchanges the
/// leftmost adjacent pair that violates the canonical order, emitting the
/// bracket correction term, until every pending word is sorted. Terminates
/// because a swap lowers the inversion count and a bracket shortens the word.
pub fn normal_order(ell: HalfInt, word: &[Generator]) -> UEAElement {
    debug_assert!(word.iter().all(|g| g.is_valid(ell)));
    let mut out = UEAElement::zero(ell);
    let mut pending: Vec<(Vec<Generator>, MultiPoly)> = vec![(word.to_vec(), MultiPoly::one())];
    while let Some((w, c)) = pending.pop() {
        match w.windows(2).position(|p| p[0] > p[1]) {
            None => out.insert_add(PBWMonomial::from_sorted_word(&w), c),
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                pending.push((swapped, c.clone()));
                let bracket =
                    commutator(ell, w[i], w[i + 1]).expect("validated word has valid brackets");
                for (bm, bc) in bracket.terms() {
                    let mut repl = Vec::with_capacity(w.len() - 1);
                    repl.extend_from_slice(&w[..i]);
                    repl.extend(bm.to_word());
                    repl.extend_from_slice(&w[i + 2..]);
                    pending.push((repl, c.mul(bc)));
                }
            }
        }
    }
    out
}

/// The four closed-form commutator families with powers of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerCommutator {
    /// [P_j, C^h]
    PWithCPow { j: u32, h: u32 },
    /// [P_j, P_{2l-j}^k]
    PWithDualPPow { j: u32, k: u32 },
    /// [H, C^h]
    HWithCPow { h: u32 },
    /// [H, P_n^k]
    HWithPPow { n: u32, k: u32 },
}

/// Closed form of the requested commutator, as a normal-ordered element.
pub fn power_commutator(ell: HalfInt, which: PowerCommutator) -> Result<UEAElement, PbwError> {
    let two_ell = ell.two_ell();
    let mut out = UEAElement::zero(ell);
    match which {
        PowerCommutator::PWithCPow { j, h } => {
            Generator::p(ell, j)?;
            // sum over n of (-1)^n n! C(h,n) C(2l-j,n) C^(h-n) P_{j+n}
            let top = h.min(two_ell - j);
            for n in 1..=top {
                let c = Rational::from_integer(
                    fact(n as u64) * binom(h as u64, n as u64) * binom((two_ell - j) as u64, n as u64),
                );
                let c = if n % 2 == 0 { c } else { -c };
                let mut factors = Vec::new();
                if h - n > 0 {
                    factors.push((Generator::C, h - n));
                }
                factors.push((Generator::P(j + n), 1));
                out.insert_add(PBWMonomial::from_factors(factors), MultiPoly::constant(c));
            }
        }
        PowerCommutator::PWithDualPPow { j, k } => {
            Generator::p(ell, j)?;
            // k I_j M P_{2l-j}^(k-1)
            if k > 0 {
                let c = rat_int(k as i64) * crate::algebra::structure_i(ell, j)?;
                let mut factors = vec![(Generator::M, 1)];
                if k > 1 {
                    factors.push((Generator::P(two_ell - j), k - 1));
                }
                out.insert_add(PBWMonomial::from_factors(factors), MultiPoly::constant(c));
            }
        }
        PowerCommutator::HWithCPow { h } => {
            // -h C^(h-1) D + h(h-1) C^(h-1), normal-ordered to
            // -h D C^(h-1) - h(h-1) C^(h-1)
            if h > 0 {
                let mut factors = vec![(Generator::D, 1)];
                if h > 1 {
                    factors.push((Generator::C, h - 1));
                }
                out.insert_add(
                    PBWMonomial::from_factors(factors),
                    MultiPoly::from_int(-(h as i64)),
                );
                if h > 1 {
                    out.insert_add(
                        PBWMonomial::from_factors(vec![(Generator::C, h - 1)]),
                        MultiPoly::from_int(-((h * (h - 1)) as i64)),
                    );
                }
            }
        }
        PowerCommutator::HWithPPow { n, k } => {
            Generator::p(ell, n)?;
            // -k n P_n^(k-1) P_{n-1} + [n = l+1/2] k(k-1)/2 ((l+1/2)!)^2 M P_n^(k-2)
            if k > 0 && n > 0 {
                let mut factors = Vec::new();
                if k > 1 {
                    factors.push((Generator::P(n), k - 1));
                }
                factors.push((Generator::P(n - 1), 1));
                out.insert_add(
                    PBWMonomial::from_factors(factors),
                    MultiPoly::from_int(-((k * n) as i64)),
                );
            }
            if n == ell.plus_half() && k >= 2 {
                let f = fact(ell.plus_half() as u64);
                let c = Rational::from_integer(&f * &f) * rat_int((k * (k - 1)) as i64 / 2);
                let mut factors = vec![(Generator::M, 1)];
                if k > 2 {
                    factors.push((Generator::P(n), k - 2));
                }
                out.insert_add(PBWMonomial::from_factors(factors), MultiPoly::constant(c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn l(t: u32) -> HalfInt {
        HalfInt::from_twice(t).unwrap()
    }

    fn gen_elem(ell: HalfInt, g: Generator) -> UEAElement {
        UEAElement::from_generator(ell, g)
    }

    /// [x, y] computed through the full product machinery.
    fn bracket(x: &UEAElement, y: &UEAElement) -> UEAElement {
        x.mul(y).unwrap().sub(&y.mul(x).unwrap()).unwrap()
    }

    #[test]
    fn already_sorted_words_pass_through() {
        use Generator::*;
        let ell = l(1);
        let e = normal_order(ell, &[M, D, C, P(1), P(0), H]);
        assert_eq!(e.num_terms(), 1);
        let (m, c) = e.terms().next().unwrap();
        assert_eq!(m.to_word(), vec![M, D, C, P(1), P(0), H]);
        assert_eq!(c, &MultiPoly::one());
    }

    #[test]
    fn simple_exchange_examples() {
        use Generator::*;
        let ell = l(1);
        // H C = C H + [H, C] = C H - D
        let e = normal_order(ell, &[H, C]);
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(C, 1), (H, 1)])),
            MultiPoly::one()
        );
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(D, 1)])),
            MultiPoly::from_int(-1)
        );
        assert_eq!(e.num_terms(), 2);
        // P_0 P_1 = P_1 P_0 + I_0 M = P_1 P_0 - M  (l = 1/2)
        let e = normal_order(ell, &[P(0), P(1)]);
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(P(1), 1), (P(0), 1)])),
            MultiPoly::one()
        );
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(M, 1)])),
            MultiPoly::from_int(-1)
        );
    }

    #[test]
    fn normal_order_is_idempotent() {
        use Generator::*;
        let ell = l(3);
        let e = normal_order(ell, &[H, P(1), C, P(2), H]);
        for (m, _) in e.terms() {
            let again = normal_order(ell, &m.to_word());
            assert_eq!(again.num_terms(), 1);
            assert_eq!(again.coefficient_of(m), MultiPoly::one());
        }
    }

    #[test]
    fn product_respects_the_filtration() {
        use Generator::*;
        let ell = l(3);
        let a = normal_order(ell, &[H, C, P(2)]);
        let b = normal_order(ell, &[P(0), C]);
        let prod = a.mul(&b).unwrap();
        assert!(prod.terms().all(|(m, _)| m.degree() <= 5));
    }

    #[test]
    fn associativity_on_sampled_words() {
        use Generator::*;
        for t in [1u32, 3] {
            let ell = l(t);
            let words: Vec<Vec<Generator>> = vec![
                vec![H, C],
                vec![P(0), P(t)],
                vec![C, H, P(0)],
                vec![D, P(t), H],
            ];
            for wa in &words {
                for wb in &words {
                    for wc in &words {
                        let a = normal_order(ell, wa);
                        let b = normal_order(ell, wb);
                        let c = normal_order(ell, wc);
                        let left = a.mul(&b).unwrap().mul(&c).unwrap();
                        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn jacobi_identity_via_the_rewriter() {
        for t in [1u32, 3, 5, 7] {
            let ell = l(t);
            let mut gens = vec![Generator::C, Generator::D, Generator::H, Generator::M];
            gens.extend((0..=ell.two_ell()).map(Generator::P));
            for &a in &gens {
                for &b in &gens {
                    for &c in &gens {
                        let ea = gen_elem(ell, a);
                        let eb = gen_elem(ell, b);
                        let ec = gen_elem(ell, c);
                        let j = bracket(&bracket(&ea, &eb), &ec)
                            .add(&bracket(&bracket(&eb, &ec), &ea))
                            .unwrap()
                            .add(&bracket(&bracket(&ec, &ea), &eb))
                            .unwrap();
                        assert!(j.is_zero(), "jacobi fails at l={} on ({},{},{})", ell, a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn omega_examples_and_involution() {
        use Generator::*;
        let ell = l(1);
        // omega(C P_1^2) = P_0^2 H
        let e = normal_order(ell, &[C, P(1), P(1)]).omega().unwrap();
        assert_eq!(e.num_terms(), 1);
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(P(0), 2), (H, 1)])),
            MultiPoly::one()
        );
        for t in [1u32, 3] {
            let ell = l(t);
            for w in [vec![H, C, P(0)], vec![P(t), P(0), C], vec![D, H, H]] {
                let x = normal_order(ell, &w);
                assert_eq!(x.omega().unwrap().omega().unwrap(), x);
            }
        }
    }

    #[test]
    fn omega_is_an_antiautomorphism() {
        use Generator::*;
        let ell = l(3);
        let words: Vec<Vec<Generator>> = vec![vec![H, P(1)], vec![C, P(2), H], vec![P(0), C]];
        for wa in &words {
            for wb in &words {
                let a = normal_order(ell, wa);
                let b = normal_order(ell, wb);
                let lhs = a.mul(&b).unwrap().omega().unwrap();
                let rhs = b.omega().unwrap().mul(&a.omega().unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn mixing_algebras_is_rejected() {
        let a = gen_elem(l(1), Generator::C);
        let b = gen_elem(l(3), Generator::C);
        assert!(matches!(a.mul(&b), Err(PbwError::MixedAlgebra(_, _))));
        assert!(matches!(a.add(&b), Err(PbwError::MixedAlgebra(_, _))));
    }

    #[test]
    fn power_commutator_examples() {
        use Generator::*;
        // [P_0, C^2] at l = 1/2 -> -2 C P_1
        let e = power_commutator(l(1), PowerCommutator::PWithCPow { j: 0, h: 2 }).unwrap();
        assert_eq!(e.num_terms(), 1);
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(C, 1), (P(1), 1)])),
            MultiPoly::from_int(-2)
        );
        // [H, C] -> -D
        let e = power_commutator(l(1), PowerCommutator::HWithCPow { h: 1 }).unwrap();
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(D, 1)])),
            MultiPoly::from_int(-1)
        );
        assert_eq!(e.num_terms(), 1);
        // [H, P_1^2] at l = 1/2 -> -2 P_1 P_0 + M
        let e = power_commutator(l(1), PowerCommutator::HWithPPow { n: 1, k: 2 }).unwrap();
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(P(1), 1), (P(0), 1)])),
            MultiPoly::from_int(-2)
        );
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(M, 1)])),
            MultiPoly::one()
        );
        // [P_1, P_1] = 0 at l = 1/2 (dual index of 1 is 0... [P_j, P_{2l-j}^k] with j=1)
        let e = power_commutator(l(1), PowerCommutator::PWithDualPPow { j: 1, k: 3 }).unwrap();
        assert_eq!(
            e.coefficient_of(&PBWMonomial::from_factors(vec![(M, 1), (P(0), 2)])),
            MultiPoly::constant(rat(3, 1))
        );
    }

    #[test]
    fn power_commutators_match_the_rewriter() {
        for t in [1u32, 3, 5] {
            let ell = l(t);
            let two_ell = ell.two_ell();
            let comm = |x: Generator, ypow: &[Generator]| {
                let mut left = vec![x];
                left.extend_from_slice(ypow);
                let mut right = ypow.to_vec();
                right.push(x);
                normal_order(ell, &left)
                    .sub(&normal_order(ell, &right))
                    .unwrap()
            };
            for h in 1..=4u32 {
                let cs = vec![Generator::C; h as usize];
                for j in 0..=two_ell {
                    let closed =
                        power_commutator(ell, PowerCommutator::PWithCPow { j, h }).unwrap();
                    assert_eq!(closed, comm(Generator::P(j), &cs), "PC l={} j={} h={}", ell, j, h);
                }
                let closed = power_commutator(ell, PowerCommutator::HWithCPow { h }).unwrap();
                assert_eq!(closed, comm(Generator::H, &cs), "HC l={} h={}", ell, h);
            }
            for k in 1..=4u32 {
                for j in 0..=two_ell {
                    let dual = vec![Generator::P(two_ell - j); k as usize];
                    let closed =
                        power_commutator(ell, PowerCommutator::PWithDualPPow { j, k }).unwrap();
                    assert_eq!(closed, comm(Generator::P(j), &dual), "PP l={} j={} k={}", ell, j, k);
                }
                for n in 0..=two_ell {
                    let ps = vec![Generator::P(n); k as usize];
                    let closed =
                        power_commutator(ell, PowerCommutator::HWithPPow { n, k }).unwrap();
                    assert_eq!(closed, comm(Generator::H, &ps), "HP l={} n={} k={}", ell, n, k);
                }
            }
        }
    }
}
