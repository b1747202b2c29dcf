//! JSON encoding of lattice objects.
//!
//! Numbers are written as decimal strings and rationals as `"p/q"` in
//! lowest terms with `q > 0`, so every value survives a round trip exactly.
//! Readers also accept plain JSON integers. Errors carry the JSON pointer of
//! the offending value.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::algebraic::AlgebraicReal;
use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice, LatticeVector};
use crate::matrix::IntMatrix;
use crate::nef::NumberFieldVector;
use crate::number_field::{NfElem, NumberField};
use crate::poly::IntPolynomial;
use crate::spectral::irreducibility_audit;
use crate::surface::{blowup_model, SurfaceModel};
use crate::zariski::CurveConfig;

fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    format!("{pointer}/{key}")
}

pub fn field<'a>(v: &'a Value, key: &str, pointer: &str) -> Result<&'a Value> {
    v.as_object()
        .ok_or_else(|| Error::schema(pointer, "expected an object"))?
        .get(key)
        .ok_or_else(|| Error::schema(pointer, format!("missing field {key:?}")))
}

pub fn array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(pointer, "expected an array"))
}

pub fn parse_integer(v: &Value, pointer: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer literal")),
        Value::String(s) => s.trim().parse().map_err(|_| Error::schema(pointer, format!("not an integer: {s:?}"))),
        _ => Err(Error::schema(pointer, "expected an integer or a decimal string")),
    }
}

pub fn parse_usize(v: &Value, pointer: &str) -> Result<usize> {
    let n = parse_integer(v, pointer)?;
    n.try_into().map_err(|_| Error::schema(pointer, "expected a non-negative machine-size integer"))
}

pub fn parse_rational(v: &Value, pointer: &str) -> Result<BigRational> {
    if let Value::String(s) = v {
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| Error::schema(pointer, format!("bad numerator in {s:?}")))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::schema(pointer, format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::schema(pointer, "zero denominator"));
            }
            return Ok(BigRational::new(p, q));
        }
    }
    parse_integer(v, pointer).map(BigRational::from_integer)
}

fn parse_rational_list(v: &Value, pointer: &str) -> Result<Vec<BigRational>> {
    array(v, pointer)?.iter().enumerate().map(|(i, x)| parse_rational(x, &child(pointer, i))).collect()
}

fn parse_integer_list(v: &Value, pointer: &str) -> Result<Vec<BigInt>> {
    array(v, pointer)?.iter().enumerate().map(|(i, x)| parse_integer(x, &child(pointer, i))).collect()
}

pub fn parse_int_matrix(v: &Value, pointer: &str) -> Result<IntMatrix> {
    let rows: Vec<Vec<BigInt>> =
        array(v, pointer)?.iter().enumerate().map(|(i, r)| parse_integer_list(r, &child(pointer, i))).collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::schema(pointer, "empty matrix"));
    }
    IntMatrix::from_rows(rows).ok_or_else(|| Error::schema(pointer, "rows have different lengths"))
}

/// `{"gram": [[...]]}` or `{"rank": r}` for `Z^{1,r-1}`.
pub fn parse_lattice(v: &Value, pointer: &str) -> Result<Lattice> {
    let obj = v.as_object().ok_or_else(|| Error::schema(pointer, "expected an object"))?;
    if let Some(g) = obj.get("gram") {
        let gram = parse_int_matrix(g, &child(pointer, "gram"))?;
        if let Some(r) = obj.get("rank") {
            if parse_usize(r, &child(pointer, "rank"))? != gram.rows() {
                return Err(Error::schema(&child(pointer, "rank"), "rank does not match the gram matrix"));
            }
        }
        return Lattice::new(gram);
    }
    let rank = parse_usize(field(v, "rank", pointer)?, &child(pointer, "rank"))?;
    if rank < 2 {
        return Err(Error::schema(&child(pointer, "rank"), "rank must be at least 2"));
    }
    Lattice::lorentzian(rank - 1)
}

/// The lattice an isometry document lives on: its `"lattice"` entry, or
/// the standard `Z^{1,r-1}` for an `r x r` matrix.
pub fn lattice_of_isometry(v: &Value, pointer: &str) -> Result<Lattice> {
    if let Some(l) = v.as_object().and_then(|o| o.get("lattice")) {
        return parse_lattice(l, &child(pointer, "lattice"));
    }
    let m = parse_int_matrix(field(v, "matrix", pointer)?, &child(pointer, "matrix"))?;
    Lattice::lorentzian(m.rows().saturating_sub(1).max(1)).and_then(|l| {
        if l.rank() != m.rows() {
            Err(Error::schema(&child(pointer, "matrix"), "matrix must be at least 2 x 2"))
        } else {
            Ok(l)
        }
    })
}

/// `{"matrix": [[...]]}` checked against `lattice`.
pub fn parse_isometry(v: &Value, lattice: &Lattice, pointer: &str) -> Result<Isometry> {
    let m = parse_int_matrix(field(v, "matrix", pointer)?, &child(pointer, "matrix"))?;
    if m.rows() != lattice.rank() || m.cols() != lattice.rank() {
        return Err(Error::schema(
            &child(pointer, "matrix"),
            format!("expected a {r} x {r} matrix", r = lattice.rank()),
        ));
    }
    Isometry::certify(m, lattice)
}

/// `{"gens": [...]}` or a bare array of isometry documents, all on the
/// lattice of the first.
pub fn parse_isometry_list(v: &Value, pointer: &str) -> Result<Vec<Isometry>> {
    let (list, base) = match v {
        Value::Array(a) => (a, pointer.to_string()),
        _ => (array(field(v, "gens", pointer)?, &child(pointer, "gens"))?, child(pointer, "gens")),
    };
    if list.is_empty() {
        return Err(Error::schema(&base, "empty list"));
    }
    let lattice = lattice_of_isometry(&list[0], &child(&base, 0))?;
    list.iter().enumerate().map(|(i, g)| parse_isometry(g, &lattice, &child(&base, i))).collect()
}

/// `{"coords": [...]}` or a bare array.
pub fn parse_vector(v: &Value, lattice: &Lattice, pointer: &str) -> Result<LatticeVector> {
    let (coords, p) = match v {
        Value::Array(_) => (v, pointer.to_string()),
        _ => (field(v, "coords", pointer)?, child(pointer, "coords")),
    };
    let c = parse_rational_list(coords, &p)?;
    if c.len() != lattice.rank() {
        return Err(Error::schema(&p, format!("expected {} coordinates, found {}", lattice.rank(), c.len())));
    }
    lattice.vector(c)
}

/// `{"curves": [{"name": .., "coords": [..]}, ...]}` or the bare array.
pub fn parse_curves(v: &Value, lattice: &Lattice, pointer: &str) -> Result<CurveConfig> {
    let (list, base) = match v {
        Value::Array(a) => (a, pointer.to_string()),
        _ => (array(field(v, "curves", pointer)?, &child(pointer, "curves"))?, child(pointer, "curves")),
    };
    let mut curves = Vec::with_capacity(list.len());
    for (i, c) in list.iter().enumerate() {
        let p = child(&base, i);
        let name = field(c, "name", &p)?
            .as_str()
            .ok_or_else(|| Error::schema(&child(&p, "name"), "expected a string"))?
            .to_string();
        curves.push((name, parse_vector(field(c, "coords", &p)?, lattice, &child(&p, "coords"))?));
    }
    CurveConfig::new(lattice, curves)
}

/// `{"n": n, "curves": [...]}` on the standard blowup lattice, using the
/// given lattice object when one is supplied so that isometries parsed
/// separately can act on the model.
pub fn parse_model(v: &Value, lattice: Option<&Lattice>, pointer: &str) -> Result<SurfaceModel> {
    let n = parse_usize(field(v, "n", pointer)?, &child(pointer, "n"))?;
    let base = blowup_model(n)?;
    let lattice = match lattice {
        Some(l) if l.rank() != n + 1 || !l.is_standard_lorentzian() => {
            return Err(Error::schema(&child(pointer, "n"), format!("model rank {} does not match the isometry", n + 1)))
        }
        Some(l) => l.clone(),
        None => base.lattice().clone(),
    };
    let canonical = match v.get("canonical") {
        Some(k) => parse_vector(k, &lattice, &child(pointer, "canonical"))?,
        None => lattice.vector(base.canonical().coords().to_vec())?,
    };
    let curves = match v.get("curves") {
        Some(c) => parse_curves(c, &lattice, &child(pointer, "curves"))?,
        None => CurveConfig::empty(&lattice),
    };
    SurfaceModel::new(&lattice, canonical, curves)
}

/// `{"min_poly": [ascending coefficients], "lo": q, "hi": q}`, or a plain
/// rational.
pub fn parse_algebraic_real(v: &Value, pointer: &str) -> Result<AlgebraicReal> {
    if !v.is_object() {
        return parse_rational(v, pointer).map(|q| AlgebraicReal::from_rational(&q));
    }
    let coeffs = parse_integer_list(field(v, "min_poly", pointer)?, &child(pointer, "min_poly"))?;
    let lo = parse_rational(field(v, "lo", pointer)?, &child(pointer, "lo"))?;
    let hi = parse_rational(field(v, "hi", pointer)?, &child(pointer, "hi"))?;
    AlgebraicReal::new(IntPolynomial::new(coeffs), lo, hi)
        .map_err(|e| Error::schema(pointer, format!("not an isolating interval: {e}")))
}

/// `{"alphas": [...]}` or a bare array of algebraic reals.
pub fn parse_algebraic_list(v: &Value, pointer: &str) -> Result<Vec<AlgebraicReal>> {
    let (list, base) = match v {
        Value::Array(a) => (a, pointer.to_string()),
        _ => (array(field(v, "alphas", pointer)?, &child(pointer, "alphas"))?, child(pointer, "alphas")),
    };
    list.iter().enumerate().map(|(i, a)| parse_algebraic_real(a, &child(&base, i))).collect()
}

/// Either a rational class (`{"coords": [q, ...]}`) or a class over
/// `Q(lambda)`: `{"lambda": .., "coords": [[c0, c1, ..], ...]}` where each
/// coordinate lists its coefficients in powers of `lambda`.
pub fn parse_nf_vector(v: &Value, lattice: &Lattice, pointer: &str) -> Result<NumberFieldVector> {
    let lambda = match v.get("lambda") {
        None => return parse_vector(v, lattice, pointer).map(|x| NumberFieldVector::from_rational(&x)),
        Some(l) => parse_algebraic_real(l, &child(pointer, "lambda"))?,
    };
    let p = child(pointer, "lambda");
    if lambda.poly().degree().unwrap_or(0) >= 2 {
        if let Err(Error::ReducibleSalemFactor { factor }) = irreducibility_audit(lambda.poly()) {
            return Err(Error::schema(&p, format!("defining polynomial is reducible (factor {factor})")));
        }
    }
    let k = Arc::new(NumberField::new(lambda));
    let cp = child(pointer, "coords");
    let rows = array(field(v, "coords", pointer)?, &cp)?;
    if rows.len() != lattice.rank() {
        return Err(Error::schema(&cp, format!("expected {} coordinates, found {}", lattice.rank(), rows.len())));
    }
    let coords: Vec<NfElem> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let c = match r {
                Value::Array(_) => parse_rational_list(r, &child(&cp, i))?,
                _ => vec![parse_rational(r, &child(&cp, i))?],
            };
            Ok(k.from_coefficients(c))
        })
        .collect::<Result<_>>()?;
    NumberFieldVector::new(k, lattice.clone(), coords)
}

// ---- writers

pub fn int_json(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_json(q: &BigRational) -> Value {
    if q.denom().is_one() {
        Value::String(q.numer().to_string())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn rational_list_json(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(int_json).collect())).collect())
}

pub fn lattice_json(l: &Lattice) -> Value {
    json!({ "rank": l.rank().to_string(), "gram": matrix_json(l.gram()) })
}

pub fn vector_json(v: &LatticeVector) -> Value {
    json!({ "coords": rational_list_json(v.coords()) })
}

pub fn isometry_json(g: &Isometry) -> Value {
    let mut m = Map::new();
    m.insert("matrix".into(), matrix_json(g.matrix()));
    if !g.lattice().is_standard_lorentzian() {
        m.insert("lattice".into(), lattice_json(g.lattice()));
    }
    Value::Object(m)
}

/// Ascending coefficients plus a readable form.
pub fn polynomial_json(p: &IntPolynomial) -> Value {
    json!({
        "coeffs": Value::Array(p.coeffs().iter().map(int_json).collect()),
        "display": p.to_string(),
    })
}

pub fn algebraic_real_json(a: &AlgebraicReal) -> Value {
    json!({
        "min_poly": Value::Array(a.poly().coeffs().iter().map(int_json).collect()),
        "lo": rational_json(a.lo()),
        "hi": rational_json(a.hi()),
    })
}

pub fn nf_elem_json(k: &NumberField, a: &NfElem) -> Value {
    rational_list_json(&a.coefficients(k.degree().max(1)))
}

pub fn nf_vector_json(v: &NumberFieldVector) -> Value {
    let k = v.field();
    json!({
        "lambda": algebraic_real_json(v.lambda()),
        "coords": Value::Array(v.coords().iter().map(|c| nf_elem_json(k, c)).collect()),
    })
}

pub fn curves_json(cfg: &CurveConfig) -> Value {
    Value::Array(
        (0..cfg.len())
            .map(|i| json!({ "name": cfg.name(i), "coords": rational_list_json(cfg.class(i).coords()) }))
            .collect(),
    )
}

pub fn model_json(m: &SurfaceModel) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), Value::String(m.n().to_string()));
    obj.insert("canonical".into(), vector_json(m.canonical()));
    obj.insert("curves".into(), curves_json(m.curves()));
    if !m.lattice().is_standard_lorentzian() {
        obj.insert("lattice".into(), lattice_json(m.lattice()));
    }
    Value::Object(obj)
}
