//! Reading documents and scalar lists.

use std::path::Path;

use construct_core::json::{parse_rational, rational_to_string, JsonValue};
use nalgebra::{DMatrix, Quaternion};
use num::complex::Complex64;
use num::BigRational;
use serde_json::{json, Value};

use crate::error::{CliError, Result};

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| CliError::usage(format!("missing field {key:?}")))
}

pub fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::usage(format!("{what} must be an array")))
}

pub fn vec_of<T>(v: &Value, what: &str, f: impl Fn(&Value) -> Result<T>) -> Result<Vec<T>> {
    array(v, what)?.iter().map(f).collect()
}

pub fn matrix_of<T>(v: &Value, what: &str, f: impl Fn(&Value) -> Result<T> + Copy) -> Result<Vec<Vec<T>>> {
    let rows = vec_of(v, what, |r| vec_of(r, what, f))?;
    let n = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::usage(format!("{what} must be a nonempty rectangular array")));
    }
    Ok(rows)
}

pub fn rational(v: &Value) -> Result<BigRational> {
    Ok(BigRational::from_json(v)?)
}

pub fn complex(v: &Value) -> Result<Complex64> {
    Ok(Complex64::from_json(v)?)
}

pub fn real(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| CliError::usage(format!("bad number {v}"))),
        Value::String(s) => s.trim().parse().map_err(|_| CliError::usage(format!("bad number {v}"))),
        _ => Err(CliError::usage(format!("expected a number, got {v}"))),
    }
}

pub fn quaternion(v: &Value) -> Result<Quaternion<f64>> {
    match v.as_array().map(Vec::as_slice) {
        Some([w, i, j, k]) => Ok(Quaternion::new(real(w)?, real(i)?, real(j)?, real(k)?)),
        _ => Ok(Quaternion::new(real(v)?, 0.0, 0.0, 0.0)),
    }
}

pub fn integer(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| CliError::usage(format!("expected an integer, got {v}")))
}

pub fn dmatrix(v: &Value, what: &str) -> Result<DMatrix<f64>> {
    let rows = matrix_of(v, what, real)?;
    Ok(DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]))
}

/// "a,b,c" into its trimmed items.
pub fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

pub fn parse_complex_str(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(re) = t.parse::<f64>() {
        return Ok(Complex64::new(re, 0.0));
    }
    // a+bi, a-bi, bi
    let body = t.strip_suffix('i').or_else(|| t.strip_suffix('I')).ok_or_else(|| CliError::usage(format!("bad complex number {s:?}")))?;
    let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let bad = || CliError::usage(format!("bad complex number {s:?}"));
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.trim_start_matches('+').parse().map_err(|_| bad())?))
}

pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    parse_rational(s).map_err(|_| CliError::usage(format!("bad rational {s:?}")))
}

pub fn c_json(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn cs_json(z: &[Complex64]) -> Value {
    Value::Array(z.iter().map(c_json).collect())
}

pub fn q_json(q: &BigRational) -> Value {
    json!(rational_to_string(q))
}

pub fn dmatrix_json(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| json!((0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_strings() {
        let z = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex_str("1+2i").unwrap(), z(1.0, 2.0));
        assert_eq!(parse_complex_str("-0.5 - i").unwrap(), z(-0.5, -1.0));
        assert_eq!(parse_complex_str("3i").unwrap(), z(0.0, 3.0));
        assert_eq!(parse_complex_str("-2").unwrap(), z(-2.0, 0.0));
        assert_eq!(parse_complex_str("1e-3+1e2i").unwrap(), z(1e-3, 100.0));
        assert!(parse_complex_str("1+2j").is_err());
    }

    #[test]
    fn scalars_from_json() {
        assert_eq!(quaternion(&json!([1, 2, 3, 4])).unwrap(), Quaternion::new(1.0, 2.0, 3.0, 4.0));
        assert_eq!(quaternion(&json!("2.5")).unwrap(), Quaternion::new(2.5, 0.0, 0.0, 0.0));
        assert_eq!(rational(&json!("-3/6")).unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(matrix_of(&json!([[1, 2], [3]]), "a", real).is_err());
        assert_eq!(split_list(" 1, 2 ,,3"), ["1", "2", "3"]);
    }
}
