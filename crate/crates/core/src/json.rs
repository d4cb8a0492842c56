//! JSON input and output for the report types. Every rational travels as an
//! exact "num/den" string, labels as {"h", "k", "m"}, vectors as a level
//! plus a list of (label, coefficient) entries. Each printer here has a
//! parser and parse(print(x)) = x holds structurally.

use crate::algebra::{Generator, HalfInt};
use crate::exact::{format_rational, parse_rational, MultiPoly, Rational};
use crate::pbw::UEAElement;
use crate::shapovalov::{
    factor_check, kac_matrix, structure_checks, KacFactorization, KacMatrix, ShapovalovError,
    StructureReport,
};
use crate::singular::{KernelResult, SingularReport};
use crate::verma::{BasisLabel, VermaVector};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum JsonError {
    #[error("malformed report JSON: {0}")]
    Malformed(String),
}

fn bad(what: &str) -> JsonError {
    JsonError::Malformed(what.to_string())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| bad(&format!("missing {}", key)))
}

fn get_u32(v: &Value, key: &str) -> Result<u32, JsonError> {
    get(v, key)?
        .as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| bad(&format!("{} is not a small integer", key)))
}

fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, JsonError> {
    get(v, key)?
        .as_array()
        .ok_or_else(|| bad(&format!("{} is not an array", key)))
}

fn rational_from(v: &Value, what: &str) -> Result<Rational, JsonError> {
    let s = v
        .as_str()
        .ok_or_else(|| bad(&format!("{} is not a string", what)))?;
    parse_rational(s).map_err(|e| bad(&format!("{}: {}", what, e)))
}

fn poly_from(v: &Value, what: &str) -> Result<MultiPoly, JsonError> {
    MultiPoly::from_json(v).map_err(|e| bad(&format!("{}: {}", what, e)))
}

pub fn label_to_json(lab: &BasisLabel) -> Value {
    json!({"h": lab.h, "k": lab.kvec, "m": lab.m})
}

pub fn label_from_json(ell: HalfInt, v: &Value) -> Result<BasisLabel, JsonError> {
    let h = get_u32(v, "h")?;
    let m = get_u32(v, "m")?;
    let kvec = get_array(v, "k")?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| bad("k entry is not a small integer"))
        })
        .collect::<Result<Vec<u32>, _>>()?;
    BasisLabel::new(ell, h, kvec, m).map_err(|e| bad(&e.to_string()))
}

pub fn vector_to_json(v: &VermaVector) -> Value {
    let entries: Vec<Value> = v
        .entries()
        .map(|(lab, c)| json!({"label": label_to_json(lab), "coeff": c.to_json()}))
        .collect();
    json!({"level": v.level(), "entries": entries})
}

pub fn vector_from_json(ell: HalfInt, v: &Value) -> Result<VermaVector, JsonError> {
    let level = get_u32(v, "level")?;
    let mut out = VermaVector::zero(level);
    for item in get_array(v, "entries")? {
        let lab = label_from_json(ell, get(item, "label")?)?;
        if lab.m != level {
            return Err(bad("entry label is on the wrong level"));
        }
        let c = poly_from(get(item, "coeff")?, "coeff")?;
        out.insert_add(lab, c);
    }
    Ok(out)
}

/// List of {"word": ["C","P1",...], "c": ...} in canonical order; a constant
/// coefficient is carried as a bare "num/den" string, a polynomial one as
/// its term list.
pub fn element_to_json(e: &UEAElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(mon, c)| {
            let word: Vec<String> = mon.to_word().iter().map(|g| g.to_string()).collect();
            let cv = match c.as_constant() {
                Some(r) => Value::String(format_rational(&r)),
                None => c.to_json(),
            };
            json!({"word": word, "c": cv})
        })
        .collect();
    Value::Array(terms)
}

pub fn element_from_json(ell: HalfInt, v: &Value) -> Result<UEAElement, JsonError> {
    let arr = v.as_array().ok_or_else(|| bad("element is not an array"))?;
    let mut out = UEAElement::zero(ell);
    for item in arr {
        let word = get_array(item, "word")?
            .iter()
            .map(|w| {
                let s = w.as_str().ok_or_else(|| bad("word entry is not a string"))?;
                Generator::parse(s, ell).map_err(|e| bad(&e.to_string()))
            })
            .collect::<Result<Vec<Generator>, _>>()?;
        let cv = get(item, "c")?;
        let c = match cv {
            Value::String(_) => MultiPoly::constant(rational_from(cv, "c")?),
            _ => poly_from(cv, "c")?,
        };
        let term = UEAElement::term(ell, &word, c);
        out = out.add(&term).map_err(|e| bad(&e.to_string()))?;
    }
    Ok(out)
}

pub fn singular_report_to_json(r: &SingularReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|(g, res)| json!({"generator": g.to_string(), "residual": vector_to_json(res)}))
        .collect();
    json!({
        "level": r.level,
        "delta": format_rational(&r.delta_used),
        "alpha": format_rational(&r.alpha_ell),
        "vector": vector_to_json(&r.vector),
        "checks": checks,
    })
}

pub fn singular_report_from_json(ell: HalfInt, v: &Value) -> Result<SingularReport, JsonError> {
    let mut checks = Vec::new();
    for item in get_array(v, "checks")? {
        let gs = get(item, "generator")?
            .as_str()
            .ok_or_else(|| bad("generator is not a string"))?;
        let g = Generator::parse(gs, ell).map_err(|e| bad(&e.to_string()))?;
        checks.push((g, vector_from_json(ell, get(item, "residual")?)?));
    }
    Ok(SingularReport {
        level: get_u32(v, "level")?,
        vector: vector_from_json(ell, get(v, "vector")?)?,
        checks,
        delta_used: rational_from(get(v, "delta")?, "delta")?,
        alpha_ell: rational_from(get(v, "alpha")?, "alpha")?,
    })
}

pub fn kernel_to_json(k: &KernelResult) -> Value {
    json!({
        "level": k.level,
        "dimension": k.dimension,
        "basis": k.basis.iter().map(vector_to_json).collect::<Vec<_>>(),
    })
}

pub fn kernel_from_json(ell: HalfInt, v: &Value) -> Result<KernelResult, JsonError> {
    let basis = get_array(v, "basis")?
        .iter()
        .map(|b| vector_from_json(ell, b))
        .collect::<Result<Vec<_>, _>>()?;
    let dimension = get_u32(v, "dimension")? as usize;
    if dimension != basis.len() {
        return Err(bad("dimension disagrees with the basis length"));
    }
    Ok(KernelResult {
        level: get_u32(v, "level")?,
        dimension,
        basis,
    })
}

pub fn factorization_to_json(f: &KacFactorization) -> Value {
    json!({
        "constant": f.constant.as_ref().map(format_rational),
        "mu_exponent": f.mu_exponent,
        "delta_factors": f.delta_factors,
        "plus_half_sq": f.plus_half_sq,
    })
}

pub fn factorization_from_json(v: &Value) -> Result<KacFactorization, JsonError> {
    let constant = match get(v, "constant")? {
        Value::Null => None,
        c => Some(rational_from(c, "constant")?),
    };
    let delta_factors = get_array(v, "delta_factors")?
        .iter()
        .map(|pair| {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| bad("delta factor is not a pair"))?;
            let j = p[0]
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| bad("factor index"))?;
            let e = p[1].as_u64().ok_or_else(|| bad("factor exponent"))?;
            Ok((j, e))
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(KacFactorization {
        constant,
        mu_exponent: get(v, "mu_exponent")?
            .as_u64()
            .ok_or_else(|| bad("mu_exponent"))?,
        delta_factors,
        plus_half_sq: get_u32(v, "plus_half_sq")?,
    })
}

fn structure_to_json(s: &StructureReport) -> Value {
    json!({
        "level": s.level,
        "dimension": s.dimension,
        "radical_checked": s.radical_checked,
    })
}

fn structure_from_json(v: &Value) -> Result<StructureReport, JsonError> {
    let radical_checked = match get(v, "radical_checked")? {
        Value::Null => None,
        q => Some(
            q.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| bad("radical_checked"))?,
        ),
    };
    Ok(StructureReport {
        level: get_u32(v, "level")?,
        dimension: get_u32(v, "dimension")? as usize,
        radical_checked,
    })
}

/// Everything the determinant machinery produces for one level: the Gram
/// matrix in its basis order, the expanded determinant, the verified
/// factorization, and the structure report.
#[derive(Debug, Clone, PartialEq)]
pub struct KacReport {
    pub matrix: KacMatrix,
    pub determinant: MultiPoly,
    pub factorization: KacFactorization,
    pub structure: StructureReport,
}

pub fn kac_report(ell: HalfInt, m: u32) -> Result<KacReport, ShapovalovError> {
    let matrix = kac_matrix(ell, m);
    let determinant = matrix.determinant();
    let factorization = factor_check(ell, m)?;
    let structure = structure_checks(ell, m)?;
    Ok(KacReport {
        matrix,
        determinant,
        factorization,
        structure,
    })
}

pub fn kac_report_to_json(r: &KacReport) -> Value {
    let basis: Vec<Value> = r.matrix.basis.iter().map(label_to_json).collect();
    let matrix: Vec<Value> = r
        .matrix
        .entries
        .iter()
        .map(|row| Value::Array(row.iter().map(|p| p.to_json()).collect()))
        .collect();
    json!({
        "ell": r.matrix.ell.to_string(),
        "level": r.matrix.level,
        "basis": basis,
        "matrix": matrix,
        "determinant": r.determinant.to_json(),
        "factorization": factorization_to_json(&r.factorization),
        "structure": structure_to_json(&r.structure),
    })
}

pub fn kac_report_from_json(v: &Value) -> Result<KacReport, JsonError> {
    let ell: HalfInt = get(v, "ell")?
        .as_str()
        .ok_or_else(|| bad("ell is not a string"))?
        .parse()
        .map_err(|e: crate::algebra::AlgebraError| bad(&e.to_string()))?;
    let level = get_u32(v, "level")?;
    let basis = get_array(v, "basis")?
        .iter()
        .map(|b| label_from_json(ell, b))
        .collect::<Result<Vec<_>, _>>()?;
    let entries = get_array(v, "matrix")?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("matrix row is not an array"))?
                .iter()
                .map(|p| poly_from(p, "matrix entry"))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != basis.len() || entries.iter().any(|r| r.len() != basis.len()) {
        return Err(bad("matrix shape disagrees with the basis"));
    }
    Ok(KacReport {
        matrix: KacMatrix {
            ell,
            level,
            basis,
            entries,
        },
        determinant: poly_from(get(v, "determinant")?, "determinant")?,
        factorization: factorization_from_json(get(v, "factorization")?)?,
        structure: structure_from_json(get(v, "structure")?)?,
    })
}
