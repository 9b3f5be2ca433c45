//! `solve --in FILE`: the document's "type" picks the system family.

use construct_solvers::exponent::{log_least_squares_type2, log_least_squares_type3};
use construct_solvers::{
    least_squares, mixed_fixed_point, solve_sylvester, solve_type1_skew, solve_type2, solve_type3, DivisionRing,
    Elimination, LogSolution, MixedSystem, MulSide, Solution, Type1System, Type2System, Type3System,
};
use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use serde_json::{json, Value};

use crate::error::{CliError, Result};
use crate::input::{complex, cs_json, dmatrix, dmatrix_json, field, integer, matrix_of, quaternion, rational, real, vec_of};
use crate::SolveArgs;

fn elimination_json<T: DivisionRing>(e: &Elimination<T>, show: impl Fn(&T) -> Value) -> Value {
    let row = |r: &[T]| Value::Array(r.iter().map(&show).collect());
    let mut v = json!({
        "rank": e.rank(),
        "pivots": e.pivots,
        "rref": e.rref.iter().map(|r| row(r)).collect::<Vec<_>>(),
        "rhs": row(&e.rhs),
        "trace": e.trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "residual": e.residual,
    });
    match &e.solution {
        Solution::Unique(x) => {
            v["solution"] = json!("unique");
            v["x"] = row(x);
        }
        Solution::Parametric { particular, basis, free } => {
            v["solution"] = json!("parametric");
            v["x"] = row(particular);
            v["basis"] = Value::Array(basis.iter().map(|b| row(b)).collect());
            v["free"] = json!(free);
        }
    }
    v
}

fn type1<T: DivisionRing>(doc: &Value, side: MulSide, parse: fn(&Value) -> Result<T>) -> Result<Value> {
    let a = matrix_of(field(doc, "a")?, "a", parse)?;
    let b = vec_of(field(doc, "b")?, "b", parse)?;
    let sys = Type1System::new(a, b)?;
    Ok(elimination_json(&solve_type1_skew(&sys, side)?, |x| json!(x.render())))
}

fn type1_complex(doc: &Value, side: MulSide) -> Result<Value> {
    let a = matrix_of(field(doc, "a")?, "a", complex)?;
    let b = vec_of(field(doc, "b")?, "b", complex)?;
    let sys = Type1System::new(a, b)?;
    Ok(elimination_json(&solve_type1_skew(&sys, side)?, |z| json!([z.re, z.im])))
}

fn branch(doc: &Value, n: usize) -> Result<Vec<i64>> {
    match doc.get("branch") {
        None => Ok(vec![0; n]),
        Some(v) => {
            let k = vec_of(v, "branch", integer)?;
            if k.len() != n {
                return Err(CliError::usage(format!("branch has {} entries for {n} equations", k.len())));
            }
            Ok(k)
        }
    }
}

fn log_json(s: &LogSolution) -> Value {
    json!({
        "x": cs_json(&s.x),
        "log_x": cs_json(&s.linear),
        "residual": s.residual,
        "rank": s.elimination.rank(),
        "trace": s.elimination.trace.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn least_squares_json(a: DMatrix<Complex64>, b: Vec<Complex64>) -> Result<Value> {
    let b = DVector::from_vec(b);
    let x = least_squares(&a, &b)?;
    let r = (&a * &x - &b).norm();
    Ok(json!({ "x": cs_json(x.as_slice()), "residual_norm": r }))
}

fn mat_pair(v: &Value, what: &str) -> Result<[DMatrix<f64>; 2]> {
    match v.as_array().map(Vec::as_slice) {
        Some([p, q]) => Ok([dmatrix(p, what)?, dmatrix(q, what)?]),
        _ => Err(CliError::usage(format!("{what} must hold two matrices"))),
    }
}

fn mat_grid(v: &Value, what: &str) -> Result<[[DMatrix<f64>; 2]; 2]> {
    match v.as_array().map(Vec::as_slice) {
        Some([r0, r1]) => Ok([mat_pair(r0, what)?, mat_pair(r1, what)?]),
        _ => Err(CliError::usage(format!("{what} must be a 2×2 grid of matrices"))),
    }
}

pub fn solve(args: &SolveArgs) -> Result<Value> {
    let doc = crate::input::read_json(&args.input)?;
    let kind = field(&doc, "type")?.as_str().ok_or_else(|| CliError::usage("\"type\" must be a string"))?;
    let side = match doc.get("side").and_then(Value::as_str).unwrap_or("left") {
        "left" => MulSide::Left,
        "right" => MulSide::Right,
        s => return Err(CliError::usage(format!("side must be left or right, got {s:?}"))),
    };
    let ring = doc.get("ring").and_then(Value::as_str).unwrap_or("rational");
    let body = match (kind, args.least_squares) {
        ("type1", false) => match ring {
            "rational" => type1(&doc, side, rational)?,
            "real" => type1(&doc, side, real)?,
            "complex" => type1_complex(&doc, side)?,
            "quaternion" => type1(&doc, side, quaternion)?,
            r => return Err(CliError::usage(format!("unknown ring {r:?}"))),
        },
        ("type1", true) => {
            let a = matrix_of(field(&doc, "a")?, "a", complex)?;
            let b = vec_of(field(&doc, "b")?, "b", complex)?;
            least_squares_json(DMatrix::from_fn(a.len(), a[0].len(), |i, j| a[i][j]), b)?
        }
        ("type2", ls) => {
            let sys = Type2System::new(matrix_of(field(&doc, "e")?, "e", rational)?, vec_of(field(&doc, "b")?, "b", complex)?)?;
            if ls {
                json!({ "x": cs_json(&log_least_squares_type2(&sys)?) })
            } else {
                log_json(&solve_type2(&sys, &branch(&doc, sys.b.len())?)?)
            }
        }
        ("type3", ls) => {
            let sys = Type3System::new(matrix_of(field(&doc, "a")?, "a", complex)?, vec_of(field(&doc, "b")?, "b", complex)?)?;
            if ls {
                json!({ "x": cs_json(&log_least_squares_type3(&sys)?) })
            } else {
                log_json(&solve_type3(&sys, &branch(&doc, sys.b.len())?)?)
            }
        }
        ("sylvester", _) => {
            let s = solve_sylvester(&dmatrix(field(&doc, "a")?, "a")?, &dmatrix(field(&doc, "b")?, "b")?, &dmatrix(field(&doc, "c")?, "c")?)?;
            json!({ "x": dmatrix_json(&s.x), "cramer_agreement": s.agreement, "residual": s.residual })
        }
        ("mixed", _) => {
            let sys = MixedSystem { a: mat_grid(field(&doc, "a")?, "a")?, b: mat_grid(field(&doc, "b")?, "b")?, c: mat_pair(field(&doc, "c")?, "c")? };
            let t_max = doc.get("tmax").and_then(Value::as_u64).unwrap_or(10_000) as usize;
            let tol = doc.get("tol").and_then(Value::as_f64).unwrap_or(1e-12);
            let s = mixed_fixed_point(&sys, t_max, tol)?;
            json!({
                "x": [dmatrix_json(&s.x[0]), dmatrix_json(&s.x[1])],
                "f": dmatrix_json(&s.f),
                "iterations": s.iterations,
                "residual": s.residual,
            })
        }
        (k, true) => return Err(CliError::usage(format!("--least-squares does not apply to {k:?} systems"))),
        (k, false) => return Err(CliError::usage(format!("unknown system type {k:?}"))),
    };
    Ok(json!({ "type": kind, "result": body }))
}
