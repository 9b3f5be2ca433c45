//! Hypermatrix documents: `{"shape": [...], "domain": "...", "entries": [...]}`, entries row-major.
//!
//! Entry encodings: complex `["re", "im"]` (strings or numbers), rational `"p/q"`,
//! set a sorted integer array, bool `true`/`false`, funcexpr a prefix token string,
//! tropical `"p/q"` | `"inf"` | `"-inf"`, block a nested array of rationals.
//! Set documents may carry a `"universe"` integer array.

use std::str::FromStr;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{BlockValue, Ext, SetValue, Universe};
use crate::error::{CoreError, Result};
use crate::funcexpr::FuncExpr;
use crate::hypermatrix::{Hypermatrix, Shape};

pub trait JsonValue: Sized {
    const DOMAIN: &'static str;
    fn from_json(v: &Value) -> Result<Self>;
    fn to_json(&self) -> Value;
}

fn bad(what: &str, v: &Value) -> CoreError {
    CoreError::Json(format!("expected {what}, got {v}"))
}

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || CoreError::Json(format!("bad rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
        let den = num::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| err())?))
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl JsonValue for BigRational {
    const DOMAIN: &'static str = "rational";
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap_or_default().into())),
            Value::Number(n) => parse_rational(&n.to_string()),
            _ => Err(bad("rational", v)),
        }
    }
    fn to_json(&self) -> Value {
        json!(rational_to_string(self))
    }
}

fn f64_of(v: &Value) -> Result<f64> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| bad("decimal", v)),
        Value::Number(n) => n.as_f64().ok_or_else(|| bad("decimal", v)),
        _ => Err(bad("decimal", v)),
    }
}

impl JsonValue for Complex64 {
    const DOMAIN: &'static str = "complex";
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(p) if p.len() == 2 => Ok(Complex64::new(f64_of(&p[0])?, f64_of(&p[1])?)),
            Value::Number(_) | Value::String(_) => Ok(Complex64::new(f64_of(v)?, 0.0)),
            _ => Err(bad("[re, im]", v)),
        }
    }
    fn to_json(&self) -> Value {
        json!([self.re.to_string(), self.im.to_string()])
    }
}

impl JsonValue for bool {
    const DOMAIN: &'static str = "bool";
    fn from_json(v: &Value) -> Result<Self> {
        v.as_bool().ok_or_else(|| bad("boolean", v))
    }
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl JsonValue for SetValue {
    const DOMAIN: &'static str = "set";
    fn from_json(v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| bad("integer array", v))?;
        items.iter().map(|x| x.as_i64().ok_or_else(|| bad("integer", x))).collect::<Result<_>>().map(SetValue)
    }
    fn to_json(&self) -> Value {
        json!(self.0.iter().collect::<Vec<_>>())
    }
}

impl JsonValue for FuncExpr {
    const DOMAIN: &'static str = "funcexpr";
    fn from_json(v: &Value) -> Result<Self> {
        FuncExpr::parse_prefix(v.as_str().ok_or_else(|| bad("prefix string", v))?)
    }
    fn to_json(&self) -> Value {
        json!(self.to_prefix())
    }
}

impl JsonValue for Ext {
    const DOMAIN: &'static str = "tropical";
    fn from_json(v: &Value) -> Result<Self> {
        match v.as_str() {
            Some("inf") | Some("+inf") => Ok(Ext::PosInf),
            Some("-inf") => Ok(Ext::NegInf),
            _ => Ok(Ext::Fin(BigRational::from_json(v)?)),
        }
    }
    fn to_json(&self) -> Value {
        json!(self.to_string())
    }
}

impl JsonValue for BlockValue<BigRational> {
    const DOMAIN: &'static str = "block";
    fn from_json(v: &Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| bad("nested array", v))?;
        let rows = rows
            .iter()
            .map(|r| r.as_array().ok_or_else(|| bad("row", r))?.iter().map(BigRational::from_json).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        BlockValue::from_rows(rows)
    }
    fn to_json(&self) -> Value {
        Value::Array(self.rows().iter().map(|r| Value::Array(r.iter().map(JsonValue::to_json).collect())).collect())
    }
}

pub fn hypermatrix_from_json<V: JsonValue>(doc: &Value) -> Result<Hypermatrix<V>> {
    let domain = doc.get("domain").and_then(Value::as_str).ok_or_else(|| CoreError::Json("missing \"domain\"".into()))?;
    if domain != V::DOMAIN {
        return Err(CoreError::Json(format!("domain {domain:?} where {:?} was expected", V::DOMAIN)));
    }
    let dims = doc
        .get("shape")
        .and_then(Value::as_array)
        .ok_or_else(|| CoreError::Json("missing \"shape\"".into()))?
        .iter()
        .map(|d| d.as_u64().map(|d| d as usize).ok_or_else(|| bad("extent", d)))
        .collect::<Result<Vec<_>>>()?;
    let entries = doc
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| CoreError::Json("missing \"entries\"".into()))?
        .iter()
        .map(V::from_json)
        .collect::<Result<Vec<_>>>()?;
    Hypermatrix::new(Shape::new(dims)?, entries)
}

pub fn hypermatrix_to_json<V: JsonValue>(h: &Hypermatrix<V>) -> Value {
    json!({
        "shape": h.dims(),
        "domain": V::DOMAIN,
        "entries": h.entries().iter().map(JsonValue::to_json).collect::<Vec<_>>(),
    })
}

/// The optional `"universe"` of a set document.
pub fn universe_from_json(doc: &Value) -> Result<Option<Universe>> {
    match doc.get("universe") {
        None => Ok(None),
        Some(u) => Ok(Some(Universe::new(SetValue::from_json(u)?.0))),
    }
}

/// Peeks at a document's domain tag.
pub fn domain_of(doc: &Value) -> Option<&str> {
    doc.get("domain").and_then(Value::as_str)
}

/// Nearest f64, for display of exact values.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}
