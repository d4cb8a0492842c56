//! Singular vectors and submodule structure of the Verma modules.
//!
//! For each q >= 1 the module with highest weights
//!
//! ```text
//! delta_q = (q - 1) - (l + 1/2)^2 / 2,     mu != 0
//! ```
//!
//! has a singular vector at level 2q and at no other level; away from these
//! weights (and away from mu = 0) the module is irreducible. The vector has
//! the closed product form
//!
//! ```text
//! u_{2q} = (alpha mu C - P_{l+1/2}^2)^q |hwv>,   alpha = 2 ((l - 1/2)!)^2,
//! ```
//!
//! and this module cross-checks that form three independent ways: by
//! applying every raising generator to it, by solving the linear recurrences
//! its coefficients must satisfy, and by computing the full null space of
//! the raising action at the level. It also builds the span of the
//! descendants of u_{2q} inside each level, the quotient by that span, and
//! verifies the quotient carries no singular vectors of its own.

use crate::algebra::{raising_generators, structure_i, Generator, HalfInt};
use crate::exact::{
    rat_int, rat_kernel, rat_rref_ordered, reduce_against, MultiPoly, Rational,
};
use crate::pbw::UEAElement;
use crate::verma::{
    act, apply_lowering_label, enumerate_basis, evaluate_on_hwv, BasisLabel, HighestWeight,
    VermaVector,
};
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SingularError {
    #[error("mu = 0 degenerates the structure; refusing to guess")]
    ZeroMu,
    #[error("level {m} is below the singular level {required}")]
    LevelTooLow { m: u32, required: u32 },
    #[error("coefficient recurrences are inconsistent at delta = {delta} (q = {q})")]
    InconsistentRecurrence { delta: Rational, q: u32 },
    #[error("residual of {generator} is nonzero: {residual}")]
    VerificationFailed {
        generator: Generator,
        residual: VermaVector,
    },
}

/// The lowest-weight parameter at which a level-2q singular vector exists.
pub fn delta_for_singular(ell: HalfInt, q: u32) -> Rational {
    let ph = ell.plus_half_sq() as i64;
    rat_int(q as i64 - 1) - Rational::new(ph.into(), 2.into())
}

/// Highest weight tuned to the level-2q singular vector, mu left symbolic.
pub fn singular_weight(ell: HalfInt, q: u32) -> HighestWeight {
    HighestWeight::delta_fixed(delta_for_singular(ell, q))
}

/// The candidate (alpha mu C - P_{l+1/2}^2)^q |hwv> at level 2q, normalized
/// so the C^q coefficient is (alpha mu)^q. Works for symbolic or numeric mu.
pub fn build_singular(
    ell: HalfInt,
    hw: &HighestWeight,
    q: u32,
) -> Result<VermaVector, SingularError> {
    assert!(q >= 1, "singular levels start at q = 1");
    if hw.is_mu_zero() {
        return Err(SingularError::ZeroMu);
    }
    let p = Generator::P(ell.plus_half());
    let x = UEAElement::term(ell, &[Generator::C], hw.mu.scale(&ell.alpha()))
        .add(&UEAElement::term(ell, &[p, p], MultiPoly::from_int(-1)))
        .expect("same algebra");
    let xq = x.pow(q).expect("same algebra");
    Ok(evaluate_on_hwv(ell, hw, &xq))
}

/// What H maps the level-2q candidate to: a scalar multiple of the
/// level-2(q-1) candidate. The scalar, as a polynomial in delta and mu, is
/// -(q/2) alpha mu (2 delta - 2(q-1) + (l+1/2)^2); it vanishes exactly on
/// the delta of [`delta_for_singular`].
pub fn h_ladder_factor(ell: HalfInt, q: u32) -> MultiPoly {
    let ph2 = ell.plus_half_sq() as i64;
    let bracket = MultiPoly::delta()
        .scale(&rat_int(2))
        .add(&MultiPoly::from_int(ph2 - 2 * (q as i64 - 1)));
    bracket
        .mul(&MultiPoly::mu())
        .scale(&(ell.alpha() * rat_int(-(q as i64)) / rat_int(2)))
}

/// The verified vector together with the residual of every raising
/// generator (plus the D-eigenvalue defect); all residuals are zero by the
/// time a report is returned.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularReport {
    pub level: u32,
    pub vector: VermaVector,
    pub checks: Vec<(Generator, VermaVector)>,
    pub delta_used: Rational,
    pub alpha_ell: Rational,
}

impl SingularReport {
    pub fn is_verified(&self) -> bool {
        !self.vector.is_zero() && self.checks.iter().all(|(_, r)| r.is_zero())
    }
}

/// Residual of every raising generator applied to a vector, plus the defect
/// of the D-eigenvalue equation.
pub fn raising_residuals(
    ell: HalfInt,
    hw: &HighestWeight,
    v: &VermaVector,
) -> Vec<(Generator, VermaVector)> {
    let mut residuals = Vec::new();
    for g in raising_generators(ell) {
        residuals.push((g, act(ell, hw, g, v)));
    }
    let expected = hw.delta.sub(&MultiPoly::from_int(v.level() as i64));
    let d_res = act(ell, hw, Generator::D, v)
        .sub(&v.scale(&expected))
        .expect("same level");
    residuals.push((Generator::D, d_res));
    residuals
}

fn verify_with_weight(
    ell: HalfInt,
    hw: &HighestWeight,
    q: u32,
    delta_used: Rational,
) -> Result<SingularReport, SingularError> {
    let u = build_singular(ell, hw, q)?;
    let checks = raising_residuals(ell, hw, &u);
    if let Some((g, r)) = checks.iter().find(|(_, r)| !r.is_zero()) {
        return Err(SingularError::VerificationFailed {
            generator: *g,
            residual: r.clone(),
        });
    }
    Ok(SingularReport {
        level: 2 * q,
        vector: u,
        checks,
        delta_used,
        alpha_ell: ell.alpha(),
    })
}

/// Build the level-2q candidate at its distinguished delta (mu symbolic)
/// and test it against the whole raising half.
pub fn verify_singular(ell: HalfInt, q: u32) -> Result<SingularReport, SingularError> {
    let delta = delta_for_singular(ell, q);
    verify_with_weight(ell, &singular_weight(ell, q), q, delta)
}

/// Same but with a numeric mu (still at the distinguished delta).
pub fn verify_singular_with_mu(
    ell: HalfInt,
    q: u32,
    mu: &Rational,
) -> Result<SingularReport, SingularError> {
    let delta = delta_for_singular(ell, q);
    let hw = HighestWeight::numeric(delta.clone(), mu.clone());
    verify_with_weight(ell, &hw, q, delta)
}

/// Same check at an arbitrary delta; off the distinguished value the H
/// residual survives and comes back as the error.
pub fn verify_singular_at(
    ell: HalfInt,
    q: u32,
    delta: &Rational,
    mu: &Rational,
) -> Result<SingularReport, SingularError> {
    let hw = HighestWeight::numeric(delta.clone(), mu.clone());
    verify_with_weight(ell, &hw, q, delta.clone())
}

fn sign(n: u32) -> Rational {
    if n % 2 == 0 {
        rat_int(1)
    } else {
        rat_int(-1)
    }
}

fn binom_rat(n: u32, k: u32) -> Rational {
    Rational::from_integer(crate::exact::binom(n as u64, k as u64))
}

fn fact_rat(n: u32) -> Rational {
    Rational::from_integer(crate::exact::fact(n as u64))
}

/// Linear relation that annihilation by H imposes on the level-m
/// coefficients, indexed by a target label at level m-2: the returned pairs
/// (source label at level m, coefficient) must sum against the coefficient
/// table to zero.
fn h_equation_terms(
    ell: HalfInt,
    delta: &Rational,
    m: u32,
    target: &BasisLabel,
) -> Vec<(BasisLabel, MultiPoly)> {
    debug_assert_eq!(target.m + 2, m);
    let g = target.h;
    let kappa = &target.kvec;
    let s = target.k0() + 2;
    let lph = ell.plus_half();
    let mut terms = Vec::new();
    // C-power drop from (g+1, kappa)
    if let Ok(src) = BasisLabel::new(ell, g + 1, kappa.clone(), m) {
        let c = rat_int((g + 1) as i64) * (rat_int((m - g - 2) as i64) - delta.clone());
        terms.push((src, MultiPoly::constant(c)));
    }
    // central pairing from (g, kappa); s >= 2 always holds here
    {
        let src = BasisLabel::new(ell, g, kappa.clone(), m).expect("valid by construction");
        let f = fact_rat(lph);
        let c = rat_int((s as i64) * (s as i64 - 1)) / rat_int(2) * &f * &f;
        terms.push((src, MultiPoly::mu().scale(&c)));
    }
    // index step-down from (g, kappa - e_{j-1} + e_j)
    for j in 1..=ell.k_len() {
        let mut kv = kappa.clone();
        if j == 1 {
            if s < 3 {
                continue;
            }
        } else {
            if kv[j - 2] == 0 {
                continue;
            }
            kv[j - 2] -= 1;
        }
        kv[j - 1] += 1;
        let Ok(src) = BasisLabel::new(ell, g, kv, m) else { continue };
        let c = -rat_int((kappa[j - 1] + 1) as i64) * rat_int((lph + j as u32) as i64);
        terms.push((src, MultiPoly::constant(c)));
    }
    terms
}

/// Linear relation that annihilation by the raising generator P_{l-1/2-a}
/// imposes, indexed by a target label at level m-2a-1.
fn p_equation_terms(
    ell: HalfInt,
    a: u32,
    m: u32,
    target: &BasisLabel,
) -> Vec<(BasisLabel, MultiPoly)> {
    debug_assert_eq!(target.m + 2 * a + 1, m);
    let g = target.h;
    let kappa = &target.kvec;
    let k0t = target.k0();
    let lph = ell.plus_half();
    let lmh = ell.minus_half();
    let kk = ell.k_len() as u32;
    let mut terms = Vec::new();
    // contraction against a raised index, kappa gains e_{a-n}
    for n in 0..a {
        let idx = (a - n) as usize;
        let mut kv = kappa.clone();
        kv[idx - 1] += 1;
        let Ok(src) = BasisLabel::new(ell, g + n, kv, m) else { continue };
        let i_const = structure_i(ell, lmh - a + n).expect("index in range");
        let c = sign(n)
            * rat_int((kappa[idx - 1] + 1) as i64)
            * i_const
            * fact_rat(n)
            * binom_rat(g + n, n)
            * binom_rat(lph + a, n);
        terms.push((src, MultiPoly::mu().scale(&c)));
    }
    // contraction against P_{l+1/2} itself, the source k0 supplies the count
    {
        let src = BasisLabel::new(ell, g + a, kappa.clone(), m).expect("valid by construction");
        let s_mid = k0t + 1;
        let c = sign(a)
            * rat_int(s_mid as i64)
            * structure_i(ell, lmh).expect("index in range")
            * fact_rat(a)
            * binom_rat(g + a, a)
            * binom_rat(lph + a, a);
        terms.push((src, MultiPoly::mu().scale(&c)));
    }
    // no contraction: the raised index lands as a lowering factor
    for n in (a + 1)..=(a + kk + 1) {
        let idx = n - a - 1;
        let mut kv = kappa.clone();
        if idx == 0 {
            if k0t == 0 {
                continue;
            }
        } else {
            if kv[idx as usize - 1] == 0 {
                continue;
            }
            kv[idx as usize - 1] -= 1;
        }
        let Ok(src) = BasisLabel::new(ell, g + n, kv, m) else { continue };
        let c = sign(n) * fact_rat(n) * binom_rat(g + n, n) * binom_rat(lph + a, n);
        if c.is_zero() {
            continue;
        }
        terms.push((src, MultiPoly::constant(c)));
    }
    terms
}

/// Coefficient table of the level-2q singular vector obtained by solving
/// the recurrences directly, normalized like the product form. Polynomials
/// in mu; delta enters as a fixed rational parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceSolution {
    pub q: u32,
    pub delta: Rational,
    pub coefficients: BTreeMap<BasisLabel, MultiPoly>,
}

impl RecurrenceSolution {
    pub fn as_vector(&self) -> VermaVector {
        let mut v = VermaVector::zero(2 * self.q);
        for (l, c) in &self.coefficients {
            v.insert_add(l.clone(), c.clone());
        }
        v
    }
}

pub fn recurrence_coefficients(
    ell: HalfInt,
    q: u32,
) -> Result<RecurrenceSolution, SingularError> {
    recurrence_coefficients_at(ell, q, delta_for_singular(ell, q))
}

/// Solve the coefficient recurrences at an arbitrary delta. Each unknown is
/// pinned by one relation in which every other label was already filled;
/// afterwards every remaining relation is swept, and any violation (or a
/// division that fails to be exact) reports the system inconsistent. Away
/// from the distinguished delta that is exactly what happens.
pub fn recurrence_coefficients_at(
    ell: HalfInt,
    q: u32,
    delta: Rational,
) -> Result<RecurrenceSolution, SingularError> {
    assert!(q >= 1, "singular levels start at q = 1");
    let m = 2 * q;
    let kk = ell.k_len();
    let inconsistent = || SingularError::InconsistentRecurrence {
        delta: delta.clone(),
        q,
    };
    let mut table: BTreeMap<BasisLabel, MultiPoly> = BTreeMap::new();

    // seed: the pure C^q coefficient
    let top = BasisLabel::new(ell, q, vec![0; kk], m).expect("top label");
    table.insert(
        top,
        MultiPoly::mu().scale(&ell.alpha()).pow(q),
    );

    // fills one unknown from one relation; all other sources must be present
    let fill = |table: &mut BTreeMap<BasisLabel, MultiPoly>,
                unknown: &BasisLabel,
                terms: Vec<(BasisLabel, MultiPoly)>|
     -> Result<(), SingularError> {
        let mut known = MultiPoly::zero();
        let mut unknown_coeff: Option<MultiPoly> = None;
        for (src, c) in terms {
            if src == *unknown {
                unknown_coeff = Some(c);
            } else {
                let val = table.get(&src).expect("filled earlier in the order");
                known = known.add(&c.mul(val));
            }
        }
        let uc = unknown_coeff.expect("relation contains the unknown");
        let value = known.neg().exact_div(&uc).map_err(|_| inconsistent())?;
        table.insert(unknown.clone(), value);
        Ok(())
    };

    // chain down the pure C-power coefficients
    for g in (0..q).rev() {
        let unknown = BasisLabel::new(ell, g, vec![0; kk], m).expect("chain label");
        let target = BasisLabel::new(ell, g, vec![0; kk], m - 1).expect("chain target");
        fill(&mut table, &unknown, p_equation_terms(ell, 0, m, &target))?;
    }

    // remaining labels ordered by their top occupied index, then by its
    // multiplicity; each step's relation references only earlier groups
    let mut rest: Vec<BasisLabel> = enumerate_basis(ell, m)
        .into_iter()
        .filter(|l| l.kvec.iter().any(|&k| k > 0))
        .collect();
    rest.sort_by_key(|l| {
        let r = l.kvec.iter().rposition(|&k| k > 0).unwrap() + 1;
        (r, l.kvec[r - 1])
    });
    for unknown in &rest {
        let r = unknown.kvec.iter().rposition(|&k| k > 0).unwrap() + 1;
        let t = unknown.kvec[r - 1];
        if t == 1 {
            // one relation from H whose only new label is this one
            let mut kv = unknown.kvec.clone();
            kv[r - 1] -= 1;
            if r >= 2 {
                kv[r - 2] += 1;
            }
            let target = BasisLabel::new(ell, unknown.h, kv, m - 2).expect("valid target");
            fill(
                &mut table,
                unknown,
                h_equation_terms(ell, &delta, m, &target),
            )?;
        } else {
            // one relation from P_{l-1/2-r} whose only new label is this one
            let mut kv = unknown.kvec.clone();
            kv[r - 1] -= 1;
            let target =
                BasisLabel::new(ell, unknown.h, kv, m - 2 * r as u32 - 1).expect("valid target");
            fill(
                &mut table,
                unknown,
                p_equation_terms(ell, r as u32, m, &target),
            )?;
        }
    }

    // sweep every relation of every raising generator
    let eval = |terms: &[(BasisLabel, MultiPoly)]| -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (src, c) in terms {
            acc = acc.add(&c.mul(table.get(src).expect("table is complete")));
        }
        acc
    };
    for target in enumerate_basis(ell, m - 2) {
        if !eval(&h_equation_terms(ell, &delta, m, &target)).is_zero() {
            return Err(inconsistent());
        }
    }
    for a in 0..=ell.minus_half() {
        if m < 2 * a + 1 {
            continue;
        }
        for target in enumerate_basis(ell, m - 2 * a - 1) {
            if !eval(&p_equation_terms(ell, a, m, &target)).is_zero() {
                return Err(inconsistent());
            }
        }
    }

    Ok(RecurrenceSolution {
        q,
        delta,
        coefficients: table,
    })
}

/// Joint kernel of the raising action on the level-m slice at a numeric
/// weight: the space of singular vectors at that level.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelResult {
    pub level: u32,
    pub dimension: usize,
    pub basis: Vec<VermaVector>,
}

pub fn null_space(
    ell: HalfInt,
    delta: &Rational,
    mu: &Rational,
    m: u32,
) -> Result<KernelResult, SingularError> {
    if mu.is_zero() {
        return Err(SingularError::ZeroMu);
    }
    let hw = HighestWeight::numeric(delta.clone(), mu.clone());
    let src = enumerate_basis(ell, m);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in raising_generators(ell) {
        let mt = m as i64 + g.level_shift(ell);
        if mt < 0 {
            continue;
        }
        let tgt = enumerate_basis(ell, mt as u32);
        let mut block = vec![vec![Rational::zero(); src.len()]; tgt.len()];
        for (col, lab) in src.iter().enumerate() {
            let img = act(
                ell,
                &hw,
                g,
                &VermaVector::from_label(lab.clone(), MultiPoly::one()),
            );
            for (row, val) in img.numeric_coordinates(&tgt).into_iter().enumerate() {
                block[row][col] = val;
            }
        }
        rows.extend(block);
    }
    let ker = rat_kernel(&rows, src.len());
    let basis = ker
        .into_iter()
        .map(|coords| {
            let mut v = VermaVector::zero(m);
            for (lab, c) in src.iter().zip(coords) {
                v.insert_add(lab.clone(), MultiPoly::constant(c));
            }
            v
        })
        .collect::<Vec<_>>();
    Ok(KernelResult {
        level: m,
        dimension: basis.len(),
        basis,
    })
}

/// Row-reduced span of the descendants of the level-2q singular vector
/// inside the level-m slice. Pivots are chosen scanning the basis labels
/// from the top of the canonical order down, which lands them exactly on
/// the labels with h >= q; the complement (the induced quotient basis) is
/// then the labels with h <= q-1.
#[derive(Debug, Clone)]
pub struct DescendantSpan {
    pub level: u32,
    pub labels: Vec<BasisLabel>,
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
    pub complement: Vec<usize>,
}

impl DescendantSpan {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn quotient_labels(&self) -> Vec<BasisLabel> {
        self.complement
            .iter()
            .map(|&i| self.labels[i].clone())
            .collect()
    }

    /// The reduced spanning set as vectors in the level slice.
    pub fn vectors(&self) -> Vec<VermaVector> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = VermaVector::zero(self.level);
                for (lab, c) in self.labels.iter().zip(row) {
                    if !c.is_zero() {
                        v.insert_add(lab.clone(), MultiPoly::constant(c.clone()));
                    }
                }
                v
            })
            .collect()
    }

    fn empty(ell: HalfInt, m: u32) -> Self {
        let labels = enumerate_basis(ell, m);
        let complement = (0..labels.len()).collect();
        DescendantSpan {
            level: m,
            labels,
            rows: Vec::new(),
            pivots: Vec::new(),
            complement,
        }
    }
}

pub fn descendant_span(
    ell: HalfInt,
    q: u32,
    mu: &Rational,
    m: u32,
) -> Result<DescendantSpan, SingularError> {
    if m < 2 * q {
        return Err(SingularError::LevelTooLow { m, required: 2 * q });
    }
    if mu.is_zero() {
        return Err(SingularError::ZeroMu);
    }
    let hw = HighestWeight::numeric(delta_for_singular(ell, q), mu.clone());
    let u = build_singular(ell, &hw, q)?;
    let labels = enumerate_basis(ell, m);
    let mut raw: Vec<Vec<Rational>> = Vec::new();
    for lam in enumerate_basis(ell, m - 2 * q) {
        let x = apply_lowering_label(ell, &hw, &lam, &u);
        raw.push(x.numeric_coordinates(&labels));
    }
    let order: Vec<usize> = (0..labels.len()).rev().collect();
    let (rows, pivots) = rat_rref_ordered(&raw, &order);
    let complement = (0..labels.len())
        .filter(|i| !pivots.contains(i))
        .collect();
    Ok(DescendantSpan {
        level: m,
        labels,
        rows,
        pivots,
        complement,
    })
}

fn span_or_empty(
    ell: HalfInt,
    q: u32,
    mu: &Rational,
    m: u32,
) -> Result<DescendantSpan, SingularError> {
    if m < 2 * q {
        Ok(DescendantSpan::empty(ell, m))
    } else {
        descendant_span(ell, q, mu, m)
    }
}

/// Singular vectors of the quotient module at level m: the joint kernel of
/// the raising action transported to quotient coordinates. An irreducible
/// quotient has kernel dimension 0 at every positive level.
#[derive(Debug, Clone)]
pub struct QuotientKernel {
    pub level: u32,
    pub quotient_dimension: usize,
    pub kernel_dimension: usize,
    pub representatives: Vec<VermaVector>,
}

pub fn quotient_null_space(
    ell: HalfInt,
    q: u32,
    mu: &Rational,
    m: u32,
) -> Result<QuotientKernel, SingularError> {
    let hw = HighestWeight::numeric(delta_for_singular(ell, q), mu.clone());
    let span_m = span_or_empty(ell, q, mu, m)?;
    let qlabels = span_m.quotient_labels();
    let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); qlabels.len()];
    for g in raising_generators(ell) {
        let mt = m as i64 + g.level_shift(ell);
        if mt < 0 {
            continue;
        }
        let span_t = span_or_empty(ell, q, mu, mt as u32)?;
        for (ci, lab) in qlabels.iter().enumerate() {
            let img = act(
                ell,
                &hw,
                g,
                &VermaVector::from_label(lab.clone(), MultiPoly::one()),
            );
            let coords = img.numeric_coordinates(&span_t.labels);
            let reduced = reduce_against(&coords, &span_t.rows, &span_t.pivots);
            for &i in &span_t.complement {
                cols[ci].push(reduced[i].clone());
            }
        }
    }
    let nrows = cols.first().map(|c| c.len()).unwrap_or(0);
    let mut rows = vec![vec![Rational::zero(); qlabels.len()]; nrows];
    for (ci, col) in cols.iter().enumerate() {
        for (ri, v) in col.iter().enumerate() {
            rows[ri][ci] = v.clone();
        }
    }
    let ker = rat_kernel(&rows, qlabels.len());
    let representatives = ker
        .into_iter()
        .map(|coords| {
            let mut v = VermaVector::zero(m);
            for (lab, c) in qlabels.iter().zip(coords) {
                v.insert_add(lab.clone(), MultiPoly::constant(c));
            }
            v
        })
        .collect::<Vec<_>>();
    Ok(QuotientKernel {
        level: m,
        quotient_dimension: qlabels.len(),
        kernel_dimension: representatives.len(),
        representatives,
    })
}

/// Where a highest weight sits in the reducibility pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// delta is on none of the distinguished lines: the Verma module is
    /// already irreducible.
    IrreducibleVerma,
    /// delta = delta_q: a singular vector sits at level 2q and the
    /// irreducible quotient is the module by its descendants.
    ReducibleAt { q: u32, level: u32 },
}

/// Decide reducibility of the Verma module with the given numeric weights.
/// mu = 0 is refused: there the structure is not governed by the delta_q
/// lines at all.
pub fn classify(
    ell: HalfInt,
    delta: &Rational,
    mu: &Rational,
) -> Result<Classification, SingularError> {
    if mu.is_zero() {
        return Err(SingularError::ZeroMu);
    }
    let ph2 = ell.plus_half_sq() as i64;
    let x = delta.clone() + Rational::new(ph2.into(), 2.into()) + Rational::one();
    if x.is_integer() && x.is_positive() {
        let q = x.to_integer().to_u32().expect("q fits in u32");
        Ok(Classification::ReducibleAt { q, level: 2 * q })
    } else {
        Ok(Classification::IrreducibleVerma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::partitions;

    fn l(t: u32) -> HalfInt {
        HalfInt::from_twice(t).unwrap()
    }

    #[test]
    fn distinguished_delta_values() {
        assert_eq!(delta_for_singular(l(1), 1), rat(-1, 2));
        assert_eq!(delta_for_singular(l(1), 2), rat(1, 2));
        assert_eq!(delta_for_singular(l(1), 3), rat(3, 2));
        assert_eq!(delta_for_singular(l(3), 1), rat(-2, 1));
        assert_eq!(delta_for_singular(l(3), 2), rat(-1, 1));
        assert_eq!(delta_for_singular(l(5), 1), rat(-9, 2));
        assert_eq!(delta_for_singular(l(7), 1), rat(-8, 1));
    }

    #[test]
    fn product_form_vectors_are_singular() {
        for t in [1u32, 3, 5] {
            for q in 1..=3u32 {
                let report = verify_singular(l(t), q)
                    .unwrap_or_else(|e| panic!("l = {}/2, q = {}: {}", t, q, e));
                assert_eq!(report.level, 2 * q);
                assert_eq!(report.vector.level(), 2 * q);
                assert!(report.is_verified());
                assert_eq!(report.delta_used, delta_for_singular(l(t), q));
                assert_eq!(report.alpha_ell, l(t).alpha());
            }
        }
    }

    #[test]
    fn wrong_delta_leaves_an_h_residual() {
        // l = 1/2, q = 1, delta = 0 instead of -1/2: H picks up -mu (2 delta + 1)
        let ell = l(1);
        let err = verify_singular_at(ell, 1, &rat(0, 1), &rat(1, 1)).unwrap_err();
        match err {
            SingularError::VerificationFailed {
                generator,
                residual,
            } => {
                assert_eq!(generator, Generator::H);
                assert_eq!(
                    residual.coefficient_of(&BasisLabel::hwv(ell)),
                    MultiPoly::from_int(-1)
                );
            }
            other => panic!("expected a verification failure, got {}", other),
        }
        // symbolically the residual is -mu at the hwv label
        let hw = HighestWeight::delta_fixed(rat(0, 1));
        let u = build_singular(ell, &hw, 1).unwrap();
        let res = raising_residuals(ell, &hw, &u);
        let h_res = res
            .iter()
            .find(|(g, _)| *g == Generator::H)
            .map(|(_, r)| r.clone())
            .unwrap();
        assert_eq!(
            h_res.coefficient_of(&BasisLabel::hwv(ell)),
            MultiPoly::mu().neg()
        );
    }

    #[test]
    fn h_ladder_steps_down_symbolically() {
        // identity in both delta and mu, not just at the distinguished delta
        for (t, qs) in [(1u32, vec![1u32, 2, 3]), (3, vec![1, 2]), (5, vec![1, 2])] {
            let ell = l(t);
            let hw = HighestWeight::symbolic();
            for q in qs {
                let uq = build_singular(ell, &hw, q).unwrap();
                let lhs = act(ell, &hw, Generator::H, &uq);
                let prev = if q == 1 {
                    VermaVector::hwv(ell)
                } else {
                    build_singular(ell, &hw, q - 1).unwrap()
                };
                let rhs = prev.scale(&h_ladder_factor(ell, q));
                assert_eq!(lhs, rhs, "l = {}/2, q = {}", t, q);
            }
        }
    }

    #[test]
    fn pure_c_power_chain_has_binomial_coefficients() {
        // a_{h} = (-1)^(q-h) C(q,h) (alpha mu)^h on the k = 0 labels
        for (t, q) in [(1u32, 2u32), (1, 3), (3, 2), (5, 2)] {
            let ell = l(t);
            let sol = recurrence_coefficients(ell, q).unwrap();
            let alpha_mu = MultiPoly::mu().scale(&ell.alpha());
            for h in 0..=q {
                let lab = BasisLabel::new(ell, h, vec![0; ell.k_len()], 2 * q).unwrap();
                let expect = alpha_mu
                    .pow(h)
                    .scale(&(sign(q - h) * binom_rat(q, h)));
                assert_eq!(sol.coefficients[&lab], expect);
            }
        }
        // display of the l = 1/2, q = 2 chain
        let sol = recurrence_coefficients(l(1), 2).unwrap();
        let strings: Vec<String> = (0..=2u32)
            .map(|h| {
                let lab = BasisLabel::new(l(1), h, vec![], 4).unwrap();
                sol.coefficients[&lab].to_string()
            })
            .collect();
        assert_eq!(strings, ["1", "-4μ", "4μ^2"]);
    }

    #[test]
    fn recurrence_matches_the_product_form() {
        for (t, q) in [(1u32, 1u32), (1, 2), (1, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
            let ell = l(t);
            let sol = recurrence_coefficients(ell, q).unwrap();
            let u = build_singular(ell, &singular_weight(ell, q), q).unwrap();
            assert_eq!(sol.as_vector(), u, "l = {}/2, q = {}", t, q);
        }
    }

    #[test]
    fn recurrence_rejects_off_condition_delta() {
        // q = 1 only constrains delta through the sweep; deeper q fail in
        // either phase
        for (t, q) in [(1u32, 1u32), (1, 2), (3, 1), (3, 2)] {
            let ell = l(t);
            let wrong = delta_for_singular(ell, q) + rat(1, 3);
            let got = recurrence_coefficients_at(ell, q, wrong.clone());
            assert_eq!(
                got,
                Err(SingularError::InconsistentRecurrence {
                    delta: wrong,
                    q
                })
            );
        }
    }

    #[test]
    fn kernel_is_one_dimensional_exactly_at_the_singular_level() {
        let ell = l(1);
        let mu = rat(1, 1);
        let d2 = delta_for_singular(ell, 2);
        let dim = |d: &Rational, m: u32| null_space(ell, d, &mu, m).unwrap().dimension;
        assert_eq!(dim(&d2, 4), 1);
        assert_eq!(dim(&d2, 2), 0);
        assert_eq!(dim(&d2, 6), 0);
        for m in [1u32, 3, 5] {
            assert_eq!(dim(&d2, m), 0);
        }
        // generic delta sees nothing
        assert_eq!(dim(&rat(7, 3), 2), 0);
        assert_eq!(dim(&rat(7, 3), 4), 0);
        // and mu = 0 is refused outright
        assert_eq!(
            null_space(ell, &d2, &rat(0, 1), 4).unwrap_err(),
            SingularError::ZeroMu
        );
        // the kernel vector is proportional to the product form
        let ker = null_space(ell, &d2, &mu, 4).unwrap();
        let u = verify_singular(ell, 2).unwrap().vector;
        let basis = enumerate_basis(ell, 4);
        let uc: Vec<Rational> = u
            .coordinates(&basis)
            .iter()
            .map(|p| p.eval(&d2, &rat(1, 1)))
            .collect();
        let kc = ker.basis[0].numeric_coordinates(&basis);
        let i0 = uc.iter().position(|c| !c.is_zero()).unwrap();
        let scale = &uc[i0] / &kc[i0];
        for (a, b) in uc.iter().zip(&kc) {
            assert_eq!(*a, b * &scale);
        }
    }

    #[test]
    fn kernel_found_at_higher_rank_too() {
        let ell = l(3);
        let d1 = delta_for_singular(ell, 1);
        let dim = |m: u32| null_space(ell, &d1, &rat(2, 3), m).unwrap().dimension;
        assert_eq!(dim(2), 1);
        assert_eq!(dim(1), 0);
        assert_eq!(dim(3), 0);
    }

    #[test]
    fn descendants_are_free_and_pivot_on_high_c_powers() {
        for (t, q) in [(1u32, 1u32), (1, 2), (3, 1), (3, 2)] {
            let ell = l(t);
            let mu = rat(3, 2);
            for m in 2 * q..=2 * q + 3 {
                let span = descendant_span(ell, q, &mu, m).unwrap();
                let expected = partitions::dim(ell, m - 2 * q) as usize;
                assert_eq!(span.rank(), expected, "l = {}/2 q = {} m = {}", t, q, m);
                for &p in &span.pivots {
                    assert!(span.labels[p].h >= q);
                }
                for lab in span.quotient_labels() {
                    assert!(lab.h <= q - 1);
                }
            }
        }
    }

    #[test]
    fn low_levels_have_no_descendants() {
        let err = descendant_span(l(1), 2, &rat(1, 1), 3).unwrap_err();
        assert_eq!(err, SingularError::LevelTooLow { m: 3, required: 4 });
    }

    #[test]
    fn zero_mu_is_rejected() {
        let hw = HighestWeight::numeric(rat(-1, 2), rat(0, 1));
        assert_eq!(build_singular(l(1), &hw, 1), Err(SingularError::ZeroMu));
    }

    #[test]
    fn quotients_carry_no_singular_vectors() {
        for (t, q, mmax) in [(1u32, 1u32, 6u32), (1, 2, 7), (3, 1, 5)] {
            let ell = l(t);
            let mu = rat(1, 1);
            for m in 1..=mmax {
                let ker = quotient_null_space(ell, q, &mu, m).unwrap();
                assert_eq!(ker.kernel_dimension, 0, "l = {}/2 q = {} m = {}", t, q, m);
                let full = partitions::dim(ell, m) as usize;
                let below = if m >= 2 * q {
                    partitions::dim(ell, m - 2 * q) as usize
                } else {
                    0
                };
                assert_eq!(ker.quotient_dimension, full - below);
            }
        }
    }

    #[test]
    fn classification_follows_the_distinguished_line() {
        let ell = l(1);
        assert_eq!(
            classify(ell, &rat(-1, 2), &rat(1, 1)),
            Ok(Classification::ReducibleAt { q: 1, level: 2 })
        );
        assert_eq!(
            classify(ell, &rat(1, 2), &rat(5, 7)),
            Ok(Classification::ReducibleAt { q: 2, level: 4 })
        );
        assert_eq!(
            classify(ell, &rat(0, 1), &rat(1, 1)),
            Ok(Classification::IrreducibleVerma)
        );
        assert_eq!(
            classify(ell, &rat(-3, 2), &rat(1, 1)),
            Ok(Classification::IrreducibleVerma)
        );
        assert_eq!(
            classify(ell, &rat(1, 2), &rat(0, 1)),
            Err(SingularError::ZeroMu)
        );
        assert_eq!(
            classify(l(3), &rat(-2, 1), &rat(1, 1)),
            Ok(Classification::ReducibleAt { q: 1, level: 2 })
        );
        for t in [1u32, 3, 5, 7] {
            for q in 1..=6 {
                assert_eq!(
                    classify(l(t), &delta_for_singular(l(t), q), &rat(1, 1)),
                    Ok(Classification::ReducibleAt { q, level: 2 * q })
                );
            }
        }
    }

    #[test]
    fn next_to_chain_coefficients_have_a_closed_form() {
        // a_{h, e_1} = (l - 1/2) (q - h)(q - h - 1) alpha mu a_{h, 0};
        // in particular zero everywhere at q = 1
        for (t, q) in [(3u32, 1u32), (3, 2), (3, 3), (5, 1), (5, 2)] {
            let ell = l(t);
            let sol = recurrence_coefficients(ell, q).unwrap();
            let lmh = Rational::new((t as i64 - 1).into(), 2.into());
            for h in 0..=q {
                let mut kv = vec![0u32; ell.k_len()];
                kv[0] = 1;
                let lab = match BasisLabel::new(ell, h, kv, 2 * q) {
                    Ok(lab) => lab,
                    Err(_) => continue,
                };
                let chain = BasisLabel::new(ell, h, vec![0; ell.k_len()], 2 * q).unwrap();
                let c = lmh.clone()
                    * rat_int((q - h) as i64)
                    * rat_int(q as i64 - h as i64 - 1)
                    * ell.alpha();
                let expect = sol.coefficients[&chain].mul(&MultiPoly::mu()).scale(&c);
                let got = sol
                    .coefficients
                    .get(&lab)
                    .cloned()
                    .unwrap_or_else(MultiPoly::zero);
                assert_eq!(got, expect, "l = {}/2 q = {} h = {}", t, q, h);
            }
        }
    }
}
