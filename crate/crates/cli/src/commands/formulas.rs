use construct_formula::strata::complexity_with;
use construct_formula::{cardinality_bounds, enumerate_bool, enumerate_strata_with, parse_cvalue, BoolFormula, EnumOptions};
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::c_json;
use crate::{Bool2IntArgs, ComplexityArgs, EnumArithArgs, EnumBoolArgs};

pub fn enum_arith(args: &EnumArithArgs, seed: u64) -> Result<Value> {
    let opts = EnumOptions { monotone: args.monotone, shuffle: args.shuffle.then_some(seed) };
    let s = enumerate_strata_with(args.max_size, opts);
    let strata: Vec<Value> = (1..=args.max_size)
        .map(|n| {
            let values: Vec<Value> = s
                .stratum(n)
                .iter()
                .map(|e| json!({ "value": e.value.to_string(), "approx": c_json(&e.value.to_complex64()), "formula": e.witness.to_string() }))
                .collect();
            json!({ "size": n, "count": values.len(), "values": values })
        })
        .collect();
    let bounds: Vec<Value> = cardinality_bounds(&s)
        .into_iter()
        .map(|b| {
            json!({
                "n": b.n,
                "size": b.size,
                "lower": b.lower.map(|x| x.to_string()),
                "upper": b.upper.map(|x| x.to_string()),
                "holds": b.holds,
            })
        })
        .collect();
    Ok(json!({ "monotone": args.monotone, "strata": strata, "bounds": bounds }))
}

pub fn complexity(args: &ComplexityArgs) -> Result<Value> {
    let v = parse_cvalue(&args.value).ok_or_else(|| CliError::usage(format!("bad value {:?}", args.value)))?;
    let n = complexity_with(&v, args.max_size, args.monotone)?;
    Ok(json!({ "value": v.to_string(), "complexity": n }))
}

pub fn enum_bool(args: &EnumBoolArgs) -> Result<Value> {
    let e = enumerate_bool(args.max_size);
    let strata: Vec<Value> = e
        .strata
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, fs)| json!({ "size": i, "count": fs.len(), "formulas": fs.iter().map(ToString::to_string).collect::<Vec<_>>() }))
        .collect();
    Ok(json!({ "strata": strata, "lex": e.lex.iter().map(ToString::to_string).collect::<Vec<_>>() }))
}

pub fn bool2int(args: &Bool2IntArgs) -> Result<Value> {
    let f: BoolFormula = args.formula.parse()?;
    let lex = f.lex_number();
    Ok(json!({
        "formula": f.to_string(),
        "lex": lex.value.to_string(),
        "arity": lex.arity,
        "truth_table": f.truth_table(),
        "polynomial": f.to_multilinear(false).to_string(),
        "multilinear": f.to_multilinear(true).to_string(),
    }))
}
