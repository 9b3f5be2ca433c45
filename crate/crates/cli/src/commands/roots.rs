use construct_solvers::roots::{coeffs_to_power_sums, voronoi_probe};
use construct_solvers::iterate_roots;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::{complex, cs_json, field, parse_complex_str, read_json, split_list, vec_of};
use crate::RootsArgs;

/// Poly documents: `{"coeffs": [c0, c1, ..., cn]}`, constant first, entries real or `[re, im]`.
pub fn roots(args: &RootsArgs) -> Result<Value> {
    let doc = read_json(&args.poly)?;
    let poly = vec_of(field(&doc, "coeffs")?, "coeffs", complex)?;
    let a = split_list(&args.center).into_iter().map(parse_complex_str).collect::<Result<Vec<_>>>()?;
    if a.len() + 1 != poly.len() {
        return Err(CliError::usage(format!("degree {} polynomial needs {} centers, got {}", poly.len().saturating_sub(1), poly.len().saturating_sub(1), a.len())));
    }
    let target = coeffs_to_power_sums(&poly)?;
    let it = iterate_roots(&target, &a, args.tmax, args.tol)?;
    let mut out = json!({
        "target": cs_json(&target),
        "x": cs_json(&it.x),
        "iterations": it.iterations,
        "residual": it.residual,
        "norms": it.norms,
        "iterates": it.iterates.iter().map(|x| cs_json(x)).collect::<Vec<_>>(),
        "ill_conditioned": it.ill_conditioned,
    });
    if args.probe {
        let p = voronoi_probe(&poly, &a, args.tmax, args.tol)?;
        let label = |c: &Option<usize>| c.map_or(Value::Null, |i| json!(i));
        out["probe"] = json!({
            "roots": cs_json(&p.roots),
            "converged_to": p.converged_to.iter().map(|&i| if i == usize::MAX { Value::Null } else { json!(i) }).collect::<Vec<_>>(),
            "center_cells": p.center_cells.iter().map(label).collect::<Vec<_>>(),
            "inconclusive": p.inconclusive,
            "matches_cells": p.matches_cells(),
        });
    }
    Ok(out)
}
