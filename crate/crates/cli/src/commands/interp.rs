//! `interp --points FILE`: the document's fields pick the construction.
//!
//! `{"points": [[x, y], ...]}` Lagrange; `{"nodes": [[..],[..]], "values": [b0, b1]}` the
//! two-point functional on the plane; `{"p", "n", "table"}` the reduction over F_q.

use construct_solvers::interp::{
    gf_solution_count, gf_univariate_reduction, lagrange, lagrange_multiplicative, linear_functional_2x2,
    multiplicative_functional_2x2, poly_eval,
};
use num::complex::Complex64;
use num::BigRational;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::{
    array, c_json, complex, field, matrix_of, parse_complex_str, parse_rational_str, q_json, rational, read_json, real,
    split_list, vec_of,
};
use crate::{GfCountArgs, InterpArgs};

fn pair<T: Clone>(v: &[T], what: &str) -> Result<[T; 2]> {
    match v {
        [a, b] => Ok([a.clone(), b.clone()]),
        _ => Err(CliError::usage(format!("{what} needs exactly two entries"))),
    }
}

fn points<T>(doc: &Value, parse: fn(&Value) -> Result<T>) -> Result<Vec<(T, T)>> {
    vec_of(field(doc, "points")?, "points", |p| match p.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok((parse(x)?, parse(y)?)),
        _ => Err(CliError::usage(format!("point {p} is not an [x, y] pair"))),
    })
}

fn univariate(doc: &Value, args: &InterpArgs) -> Result<Value> {
    if args.multiplicative {
        let pts = points(doc, complex)?;
        let values = args
            .query
            .iter()
            .map(|q| {
                let x = parse_complex_str(q)?;
                Ok(json!({ "x": q, "y": c_json(&lagrange_multiplicative(&pts, x)?) }))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(json!({ "kind": "multiplicative-lagrange", "queries": values }));
    }
    let pts = points(doc, rational)?;
    let c = lagrange(&pts)?;
    let values = args
        .query
        .iter()
        .map(|q| Ok(json!({ "x": q, "y": q_json(&poly_eval(&c, &parse_rational_str(q)?)) })))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "kind": "lagrange", "coeffs": c.iter().map(q_json).collect::<Vec<_>>(), "queries": values }))
}

fn coords(q: &str) -> Result<Vec<&str>> {
    let c = split_list(q);
    if c.len() != 2 {
        return Err(CliError::usage(format!("query {q:?} must be two comma-separated coordinates")));
    }
    Ok(c)
}

fn two_point(doc: &Value, args: &InterpArgs) -> Result<Value> {
    if args.multiplicative {
        let a = matrix_of(field(doc, "nodes")?, "nodes", real)?;
        let rows = pair(&a, "nodes")?;
        let a = [pair(&rows[0], "node")?, pair(&rows[1], "node")?];
        let b = pair(&vec_of(field(doc, "values")?, "values", complex)?, "values")?;
        let f = multiplicative_functional_2x2(a, b)?;
        let values = args
            .query
            .iter()
            .map(|q| {
                let c = coords(q)?;
                let x = [parse_complex_str(c[0])?, parse_complex_str(c[1])?];
                Ok(json!({ "x": q, "y": c_json(&f.eval(x)?) }))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(json!({
            "kind": "multiplicative-functional",
            "gamma": c_json(&f.gamma),
            "node_residual": f.node_residual,
            "at_origin": c_json(&f.eval([Complex64::new(0.0, 0.0); 2])?),
            "queries": values,
        }));
    }
    let a = matrix_of(field(doc, "nodes")?, "nodes", rational)?;
    let rows = pair(&a, "nodes")?;
    let a: [[BigRational; 2]; 2] = [pair(&rows[0], "node")?, pair(&rows[1], "node")?];
    let b = pair(&vec_of(field(doc, "values")?, "values", rational)?, "values")?;
    let f = linear_functional_2x2(a, b)?;
    let values = args
        .query
        .iter()
        .map(|q| {
            let c = coords(q)?;
            let x = [parse_rational_str(c[0])?, parse_rational_str(c[1])?];
            Ok(json!({ "x": q, "y": q_json(&f.eval([&x[0], &x[1]])) }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "kind": "linear-functional",
        "gamma": q_json(&f.gamma),
        "coeffs": f.coeffs.iter().map(q_json).collect::<Vec<_>>(),
        "queries": values,
    }))
}

fn residue(v: &Value) -> Result<u64> {
    v.as_u64().ok_or_else(|| CliError::usage(format!("expected a nonnegative integer, got {v}")))
}

fn finite_field(doc: &Value) -> Result<Value> {
    let p = residue(field(doc, "p")?)?;
    let n = u32::try_from(residue(field(doc, "n")?)?).map_err(|_| CliError::usage("n is too large"))?;
    let table = array(field(doc, "table")?, "table")?.iter().map(residue).collect::<Result<Vec<_>>>()?;
    let g = gf_univariate_reduction(&table, p, n)?;
    Ok(json!({ "kind": "gf-reduction", "q": g.q, "coeffs": g.coeffs }))
}

pub fn interp(args: &InterpArgs) -> Result<Value> {
    let doc = read_json(&args.points)?;
    if doc.get("points").is_some() {
        univariate(&doc, args)
    } else if doc.get("nodes").is_some() {
        two_point(&doc, args)
    } else if doc.get("table").is_some() {
        finite_field(&doc)
    } else {
        Err(CliError::usage("expected \"points\", \"nodes\" or \"table\""))
    }
}

fn residues(s: &str) -> Result<Vec<u64>> {
    split_list(s).into_iter().map(|t| t.parse().map_err(|_| CliError::usage(format!("bad residue {t:?}")))).collect()
}

pub fn gf_count(args: &GfCountArgs) -> Result<Value> {
    let a = args.matrix.split(';').map(residues).collect::<Result<Vec<_>>>()?;
    let b = residues(&args.rhs)?;
    let count = gf_solution_count(&a, &b, args.p)?;
    Ok(json!({ "p": args.p, "count": count }))
}
