//! The contravariant form and its level determinants.
//!
//! The form pairs two basis monomials by flipping one of them through the
//! involution omega (C <-> H, P_j <-> P_{2l-j}) and letting the flipped word
//! act on the other; what survives at level 0 is the value. Its Gram matrix
//! on a level is polynomial in the highest weights, and its determinant
//! factors completely into a power of mu and linear factors in delta:
//!
//! ```text
//! det_m  =  const * mu^{e(l,m)} * prod_{j=0}^{floor(m/2)-1}
//!                      (2 delta + (l+1/2)^2 - 2j)^{d(l, m-2(j+1))}
//! ```
//!
//! with d and e the counting functions of the partitions module. The factor
//! at index j vanishes exactly on the delta where a level-2(j+1) singular
//! vector exists, and with the right exponent: the dimension of the space
//! of its descendants. [`factor_check`] extracts the factorization from the
//! computed determinant, verifies it against the prediction, and multiplies
//! it back out to recover the determinant on the nose; [`structure_checks`]
//! verifies symmetry, degree bounds, the mu-grading of the entries, and
//! that the singular vector really lies in the radical.

use crate::algebra::{omega, HalfInt};
use crate::exact::{poly_det, MultiPoly, Rational};
use crate::partitions;
use crate::singular::{build_singular, delta_for_singular, singular_weight};
use crate::verma::{act, enumerate_basis, BasisLabel, HighestWeight, VermaVector};
use num::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ShapovalovError {
    #[error("cannot pair a level-{left} monomial with a level-{right} one")]
    LevelMismatch { left: u32, right: u32 },
    #[error("determinant at level {m} does not match the predicted factorization: {detail}")]
    FactorizationMismatch { m: u32, detail: String },
    #[error("gram matrix at level {m} fails the {check} check")]
    StructureViolation { m: u32, check: &'static str },
}

/// Pair two level-m basis monomials. The left argument is transported
/// through omega, so the value is the hwv coefficient of
/// omega(x_v) x_w |hwv>; a polynomial in delta and mu.
pub fn shapovalov_form(
    ell: HalfInt,
    v: &BasisLabel,
    w: &BasisLabel,
) -> Result<MultiPoly, ShapovalovError> {
    if v.m != w.m {
        return Err(ShapovalovError::LevelMismatch {
            left: v.m,
            right: w.m,
        });
    }
    let hw = HighestWeight::symbolic();
    let mut cur = VermaVector::from_label(w.clone(), MultiPoly::one());
    for g in v.to_monomial(ell).to_word() {
        let og = omega(ell, g).expect("valid generator");
        cur = act(ell, &hw, og, &cur);
        if cur.is_zero() {
            return Ok(MultiPoly::zero());
        }
    }
    debug_assert_eq!(cur.level(), 0);
    Ok(cur.coefficient_of(&BasisLabel::hwv(ell)))
}

/// Gram matrix of the form on a level slice, with symbolic weights. Entries
/// below the diagonal are mirrored from above; symmetry itself is
/// re-verified independently by [`structure_checks`].
#[derive(Debug, Clone, PartialEq)]
pub struct KacMatrix {
    pub ell: HalfInt,
    pub level: u32,
    pub basis: Vec<BasisLabel>,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl KacMatrix {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn determinant(&self) -> MultiPoly {
        poly_det(&self.entries)
    }
}

pub fn kac_matrix(ell: HalfInt, m: u32) -> KacMatrix {
    let basis = enumerate_basis(ell, m);
    let n = basis.len();
    let mut entries = vec![vec![MultiPoly::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let f = shapovalov_form(ell, &basis[i], &basis[j]).expect("same level");
            entries[i][j] = f.clone();
            if i != j {
                entries[j][i] = f;
            }
        }
    }
    KacMatrix {
        ell,
        level: m,
        basis,
        entries,
    }
}

pub fn kac_determinant(ell: HalfInt, m: u32) -> MultiPoly {
    kac_matrix(ell, m).determinant()
}

/// A factored level determinant: constant * mu^mu_exponent * product over
/// (j, e) in delta_factors of (2 delta + (l+1/2)^2 - 2j)^e. The constant is
/// None for a prediction and Some for an extraction from a computed
/// determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct KacFactorization {
    pub constant: Option<Rational>,
    pub mu_exponent: u64,
    pub delta_factors: Vec<(u32, u64)>,
    pub plus_half_sq: u32,
}

impl KacFactorization {
    fn shift(&self, j: u32) -> i64 {
        self.plus_half_sq as i64 - 2 * j as i64
    }

    /// Multiply the factorization back out; None while the constant is
    /// still a prediction placeholder.
    pub fn expand(&self) -> Option<MultiPoly> {
        let c = self.constant.as_ref()?;
        let mut p = MultiPoly::constant(c.clone()).mul(&MultiPoly::mu().pow(
            u32::try_from(self.mu_exponent).expect("exponent fits in u32"),
        ));
        for &(j, e) in &self.delta_factors {
            let lam = MultiPoly::delta()
                .scale(&crate::exact::rat_int(2))
                .add(&MultiPoly::from_int(self.shift(j)));
            p = p.mul(&lam.pow(u32::try_from(e).expect("exponent fits in u32")));
        }
        Some(p)
    }
}

impl fmt::Display for KacFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.constant {
            Some(c) => write!(f, "{}", c)?,
            None => write!(f, "const")?,
        }
        if self.mu_exponent > 0 {
            write!(f, " · μ^{}", self.mu_exponent)?;
        }
        for &(j, e) in &self.delta_factors {
            if e == 0 {
                continue;
            }
            let shift = self.shift(j);
            match shift.cmp(&0) {
                std::cmp::Ordering::Less => write!(f, " · (2δ-{})^{}", -shift, e)?,
                std::cmp::Ordering::Equal => write!(f, " · (2δ)^{}", e)?,
                std::cmp::Ordering::Greater => write!(f, " · (2δ+{})^{}", shift, e)?,
            }
        }
        Ok(())
    }
}

/// The closed-form prediction: mu carries e(l,m) and the linear factor at
/// index j carries d(l, m-2(j+1)).
pub fn predicted_factorization(ell: HalfInt, m: u32) -> KacFactorization {
    let delta_factors = (0..m / 2)
        .map(|j| (j, partitions::dim(ell, m - 2 * (j + 1))))
        .collect();
    KacFactorization {
        constant: None,
        mu_exponent: partitions::mu_exponent(ell, m),
        delta_factors,
        plus_half_sq: ell.plus_half_sq(),
    }
}

fn linear_factor(ell: HalfInt, j: u32) -> MultiPoly {
    MultiPoly::delta()
        .scale(&crate::exact::rat_int(2))
        .add(&MultiPoly::from_int(
            ell.plus_half_sq() as i64 - 2 * j as i64,
        ))
}

/// Compute the determinant, pull out the mu power and every linear factor
/// by exact division, and require that (a) the leftover is a nonzero
/// constant, (b) the exponents agree with [`predicted_factorization`], and
/// (c) re-expanding the factorization reproduces the determinant exactly.
pub fn factor_check(ell: HalfInt, m: u32) -> Result<KacFactorization, ShapovalovError> {
    let det = kac_determinant(ell, m);
    let mismatch = |detail: String| ShapovalovError::FactorizationMismatch { m, detail };
    if det.is_zero() {
        return Err(mismatch("determinant is identically zero".into()));
    }
    let mu_exps = det.mu_exponents();
    if mu_exps.len() != 1 {
        return Err(mismatch(format!(
            "mu appears with mixed exponents {:?}",
            mu_exps
        )));
    }
    let e = mu_exps[0];
    let mut cur = det
        .exact_div(&MultiPoly::mu().pow(e))
        .expect("mu power divides by construction");
    let mut delta_factors = Vec::new();
    for j in 0..m / 2 {
        let lam = linear_factor(ell, j);
        let mut count = 0u64;
        while let Ok(next) = cur.exact_div(&lam) {
            cur = next;
            count += 1;
        }
        delta_factors.push((j, count));
    }
    let leftover = cur
        .as_constant()
        .ok_or_else(|| mismatch(format!("non-constant remainder {}", cur)))?;
    if leftover.is_zero() {
        return Err(mismatch("zero remainder".into()));
    }
    let got = KacFactorization {
        constant: Some(leftover),
        mu_exponent: e as u64,
        delta_factors,
        plus_half_sq: ell.plus_half_sq(),
    };
    let predicted = predicted_factorization(ell, m);
    if got.mu_exponent != predicted.mu_exponent || got.delta_factors != predicted.delta_factors {
        return Err(mismatch(format!(
            "extracted {} but predicted {}",
            got, predicted
        )));
    }
    if got.expand().as_ref() != Some(&det) {
        return Err(mismatch("re-expansion does not reproduce the determinant".into()));
    }
    Ok(got)
}

/// Internal consistency of the Gram matrix beyond its determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub level: u32,
    pub dimension: usize,
    /// set when the level is even and the singular vector was verified to
    /// pair to zero with the whole slice at its distinguished delta
    pub radical_checked: Option<u32>,
}

pub fn structure_checks(ell: HalfInt, m: u32) -> Result<StructureReport, ShapovalovError> {
    let km = kac_matrix(ell, m);
    let (basis, mat) = (&km.basis, &km.entries);
    let n = basis.len();
    // symmetry, with the mirrored entries recomputed from scratch
    for i in 0..n {
        for j in (i + 1)..n {
            let flipped = shapovalov_form(ell, &basis[j], &basis[i])?;
            if flipped != mat[i][j] {
                return Err(ShapovalovError::StructureViolation {
                    m,
                    check: "symmetry",
                });
            }
        }
    }
    // delta degree is bounded by the smaller C-power
    for i in 0..n {
        for j in 0..n {
            let bound = basis[i].h.min(basis[j].h);
            if mat[i][j].deg_delta().unwrap_or(0) > bound {
                return Err(ShapovalovError::StructureViolation {
                    m,
                    check: "delta degree",
                });
            }
        }
    }
    // each entry is mu-homogeneous of weight (rho_i + rho_j)/2
    for i in 0..n {
        for j in 0..n {
            let rho = basis[i].mu_weight() + basis[j].mu_weight();
            let exps = mat[i][j].mu_exponents();
            let ok = match exps.as_slice() {
                [] => true,
                [one] => rho % 2 == 0 && *one == rho / 2,
                _ => false,
            };
            if !ok {
                return Err(ShapovalovError::StructureViolation {
                    m,
                    check: "mu grading",
                });
            }
        }
    }
    // at an even level the singular vector pairs to zero with everything
    let mut radical_checked = None;
    if m >= 2 && m % 2 == 0 {
        let q = m / 2;
        let delta = delta_for_singular(ell, q);
        let u = build_singular(ell, &singular_weight(ell, q), q)
            .expect("symbolic mu is nonzero");
        let coeffs: Vec<MultiPoly> = basis.iter().map(|b| u.coefficient_of(b)).collect();
        for row in mat {
            let mut acc = MultiPoly::zero();
            for (entry, c) in row.iter().zip(&coeffs) {
                acc = acc.add(&entry.subst_delta(&delta).mul(c));
            }
            if !acc.is_zero() {
                return Err(ShapovalovError::StructureViolation {
                    m,
                    check: "radical",
                });
            }
        }
        radical_checked = Some(q);
    }
    Ok(StructureReport {
        level: m,
        dimension: n,
        radical_checked,
    })
}
