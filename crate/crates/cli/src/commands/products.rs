use construct_core::algebra::{make_algebra, trace_collapse, BlockValue, Ext, InstanceDomain, InstanceKind, SetValue};
use construct_core::funcexpr::{cprod_functional, Combine, FuncExpr, Side};
use construct_core::json::{domain_of, hypermatrix_from_json, hypermatrix_to_json, JsonValue};
use construct_core::poly::Poly;
use construct_core::{cprod2, cprod3, Hypermatrix, Shape};
use num::complex::Complex64;
use num::BigRational;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::{field, read_json};
use crate::CprodArgs;

fn product<V: InstanceDomain + JsonValue>(kind: InstanceKind, docs: &[Value]) -> Result<Hypermatrix<V>> {
    let ops = docs.iter().map(hypermatrix_from_json::<V>).collect::<construct_core::Result<Vec<_>>>()?;
    let alg = make_algebra::<V>(kind)?;
    Ok(match ops.as_slice() {
        [a, b] => cprod2(a, b, &alg)?,
        [a, b, c] => cprod3(a, b, c, &alg)?,
        _ => unreachable!("two or three operands"),
    })
}

fn plain<V: InstanceDomain + JsonValue>(kind: InstanceKind, docs: &[Value]) -> Result<Value> {
    Ok(hypermatrix_to_json(&product::<V>(kind, docs)?))
}

/// Symbolic entries: each string is a variable name or a rational constant.
fn symbolic(doc: &Value) -> Result<Hypermatrix<Poly>> {
    let dims = serde_json::from_value::<Vec<usize>>(field(doc, "shape")?.clone()).map_err(|e| CliError::usage(e.to_string()))?;
    let entries = field(doc, "entries")?
        .as_array()
        .ok_or_else(|| CliError::usage("entries must be an array"))?
        .iter()
        .map(|v| match v.as_str() {
            Some(s) if s.chars().next().is_some_and(char::is_alphabetic) => Ok(Poly::var(s)),
            _ => Ok(Poly::constant(BigRational::from_json(v)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Hypermatrix::new(Shape::new(dims)?, entries)?)
}

fn symbolic_product(kind: InstanceKind, docs: &[Value], trace: bool) -> Result<Value> {
    let show = |h: &Hypermatrix<Poly>| json!({ "shape": h.dims(), "domain": "polynomial", "entries": h.entries().iter().map(|p| p.to_string()).collect::<Vec<_>>() });
    if kind == InstanceKind::DirsumTensor {
        let ops = docs.iter().map(symbolic).collect::<Result<Vec<_>>>()?;
        let blocks: Vec<Hypermatrix<BlockValue<Poly>>> = ops.iter().map(|h| h.map(|p| BlockValue::scalar(p.clone()))).collect();
        let alg = make_algebra::<BlockValue<Poly>>(kind)?;
        let c = match blocks.as_slice() {
            [a, b] => cprod2(a, b, &alg)?,
            [a, b, c] => cprod3(a, b, c, &alg)?,
            _ => unreachable!("two or three operands"),
        };
        return Ok(if trace {
            show(&trace_collapse(&c)?)
        } else {
            json!({ "shape": c.dims(), "domain": "block", "entries": c.entries().iter().map(|b| b.to_string()).collect::<Vec<_>>() })
        });
    }
    let ops = docs.iter().map(symbolic).collect::<Result<Vec<_>>>()?;
    let alg = make_algebra::<Poly>(kind)?;
    let c = match ops.as_slice() {
        [a, b] => cprod2(a, b, &alg)?,
        [a, b, c] => cprod3(a, b, c, &alg)?,
        _ => unreachable!("two or three operands"),
    };
    Ok(show(&c))
}

fn functional(alg: &str, side: &str, docs: &[Value]) -> Result<Value> {
    let comb = match alg {
        "functional-sum" => Combine::Sum,
        "functional-product" => Combine::Product,
        _ => return Err(CliError::usage("funcexpr documents take --alg functional-sum or functional-product")),
    };
    let side = if side == "dual" { Side::Dual } else { Side::Primal };
    let [a, b] = docs else { return Err(CliError::usage("functional products take exactly two operands")) };
    let c = cprod_functional(&hypermatrix_from_json::<FuncExpr>(a)?, &hypermatrix_from_json::<FuncExpr>(b)?, comb, side)?;
    Ok(hypermatrix_to_json(&c))
}

pub fn cprod(args: &CprodArgs) -> Result<Value> {
    let mut docs = vec![read_json(&args.a)?, read_json(&args.b)?];
    if let Some(c) = &args.c {
        docs.push(read_json(c)?);
    }
    let domain = domain_of(&docs[0]).ok_or_else(|| CliError::usage("operand has no \"domain\""))?.to_string();
    if docs.iter().any(|d| domain_of(d) != Some(domain.as_str())) {
        return Err(CliError::usage("operands must share one domain"));
    }
    if domain == "funcexpr" {
        return functional(&args.alg, &args.side, &docs);
    }
    let kind: InstanceKind = args.alg.parse().map_err(|_| CliError::usage(format!("unknown instance {:?}", args.alg)))?;
    let result = match domain.as_str() {
        "rational" => plain::<BigRational>(kind, &docs)?,
        "complex" => plain::<Complex64>(kind, &docs)?,
        "bool" => plain::<bool>(kind, &docs)?,
        "set" => plain::<SetValue>(kind, &docs)?,
        "tropical" => plain::<Ext>(kind, &docs)?,
        "polynomial" => symbolic_product(kind, &docs, args.trace)?,
        "block" => {
            let c = product::<BlockValue<BigRational>>(kind, &docs)?;
            if args.trace {
                hypermatrix_to_json(&trace_collapse(&c)?)
            } else {
                hypermatrix_to_json(&c)
            }
        }
        other => return Err(CliError::usage(format!("unknown domain {other:?}"))),
    };
    Ok(json!({ "instance": kind.tag(), "result": result }))
}
