//! Functions of one complex variable z, closed under composition.
//!
//! Serialization is a prefix token stream:
//!
//! ```text
//! expr := "z" | "c:" RE ["," IM]
//!       | "neg" expr | "exp" expr | "log" expr
//!       | "add" expr expr | "mul" expr expr | "pow" expr expr
//!       | "scale" "c:" RE ["," IM] expr
//!       | "comp" expr expr          (comp f g = f(g(z)))
//! ```
//!
//! `log` and `pow` use principal branches.

mod affine;
mod domain;
mod functional;

use std::fmt;
use std::ops;
use std::str::FromStr;

use num::complex::Complex64;
use num::{One, Zero};

pub use affine::{affine_cprod, inverse_construct, right_identity, Affine};
pub use domain::{max_over_samples, SampleDomain};
pub use functional::{
    cprod_functional, eval_construct, exp_log_pair, functional_algebra, scalar_diag, spectral_synthesize,
    verify_eigen, verify_pseudo_inverse, Combine, Side, Synthesis,
};

use crate::error::{CoreError, Result};

/// Relative distance to the negative real axis below which `log` refuses to evaluate.
pub const CUT_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum FuncExpr {
    Const(Complex64),
    Z,
    Neg(Box<FuncExpr>),
    Add(Box<FuncExpr>, Box<FuncExpr>),
    Mul(Box<FuncExpr>, Box<FuncExpr>),
    Scale(Complex64, Box<FuncExpr>),
    Exp(Box<FuncExpr>),
    Log(Box<FuncExpr>),
    Pow(Box<FuncExpr>, Box<FuncExpr>),
    /// Compose(f, g) is f(g(z)).
    Compose(Box<FuncExpr>, Box<FuncExpr>),
}

impl FuncExpr {
    pub fn z() -> FuncExpr {
        FuncExpr::Z
    }

    pub fn c(re: f64) -> FuncExpr {
        FuncExpr::Const(Complex64::new(re, 0.0))
    }

    pub fn cc(v: Complex64) -> FuncExpr {
        FuncExpr::Const(v)
    }

    pub fn zero() -> FuncExpr {
        FuncExpr::Const(Complex64::zero())
    }

    pub fn exp(f: FuncExpr) -> FuncExpr {
        FuncExpr::Exp(Box::new(f))
    }

    pub fn ln(f: FuncExpr) -> FuncExpr {
        FuncExpr::Log(Box::new(f))
    }

    pub fn pow(base: FuncExpr, e: FuncExpr) -> FuncExpr {
        FuncExpr::Pow(Box::new(base), Box::new(e))
    }

    pub fn scale(k: f64, f: FuncExpr) -> FuncExpr {
        FuncExpr::Scale(Complex64::new(k, 0.0), Box::new(f))
    }

    pub fn scale_c(k: Complex64, f: FuncExpr) -> FuncExpr {
        FuncExpr::Scale(k, Box::new(f))
    }

    /// a·z + b.
    pub fn affine(a: Complex64, b: Complex64) -> FuncExpr {
        FuncExpr::Scale(a, Box::new(FuncExpr::Z)) + FuncExpr::Const(b)
    }

    /// The zero function; absorbing under both composers.
    pub fn is_zero_fn(&self) -> bool {
        matches!(self, FuncExpr::Const(c) if c.is_zero())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(match self {
            FuncExpr::Const(c) => *c,
            FuncExpr::Z => z,
            FuncExpr::Neg(f) => -f.eval(z)?,
            FuncExpr::Add(f, g) => f.eval(z)? + g.eval(z)?,
            FuncExpr::Mul(f, g) => f.eval(z)? * g.eval(z)?,
            FuncExpr::Scale(k, f) => k * f.eval(z)?,
            FuncExpr::Exp(f) => f.eval(z)?.exp(),
            FuncExpr::Log(f) => principal_ln(f.eval(z)?)?,
            FuncExpr::Pow(b, e) => principal_pow(b.eval(z)?, e.eval(z)?)?,
            FuncExpr::Compose(f, g) => f.eval(g.eval(z)?)?,
        })
    }

    /// Coefficients c₀, c₁, … when the expression is a polynomial in z.
    pub fn poly_coeffs(&self) -> Option<Vec<Complex64>> {
        fn trim(mut v: Vec<Complex64>) -> Vec<Complex64> {
            while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        }
        fn add(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
            let n = a.len().max(b.len());
            trim((0..n).map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default()).collect())
        }
        fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
            let mut out = vec![Complex64::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            trim(out)
        }
        Some(match self {
            FuncExpr::Const(c) => vec![*c],
            FuncExpr::Z => vec![Complex64::zero(), Complex64::one()],
            FuncExpr::Neg(f) => f.poly_coeffs()?.into_iter().map(|c| -c).collect(),
            FuncExpr::Add(f, g) => add(&f.poly_coeffs()?, &g.poly_coeffs()?),
            FuncExpr::Mul(f, g) => mul(&f.poly_coeffs()?, &g.poly_coeffs()?),
            FuncExpr::Scale(k, f) => trim(f.poly_coeffs()?.into_iter().map(|c| k * c).collect()),
            FuncExpr::Pow(b, e) => {
                let k = match **e {
                    FuncExpr::Const(c) if c.im == 0.0 && c.re >= 0.0 && c.re.fract() == 0.0 => c.re as u32,
                    _ => return None,
                };
                let base = b.poly_coeffs()?;
                (0..k).fold(vec![Complex64::one()], |acc, _| mul(&acc, &base))
            }
            FuncExpr::Compose(f, g) => {
                // Horner in the inner polynomial
                let outer = f.poly_coeffs()?;
                let inner = g.poly_coeffs()?;
                outer.iter().rev().fold(vec![Complex64::zero()], |acc, c| add(&mul(&acc, &inner), &[*c]))
            }
            FuncExpr::Exp(_) | FuncExpr::Log(_) => return None,
        })
    }

    pub fn to_prefix(&self) -> String {
        self.to_string()
    }

    pub fn parse_prefix(s: &str) -> Result<FuncExpr> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let mut pos = 0;
        let e = parse_at(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(CoreError::Parse { pos, msg: format!("trailing token {:?}", toks[pos]) });
        }
        Ok(e)
    }
}

pub fn principal_ln(w: Complex64) -> Result<Complex64> {
    if w.is_zero() {
        return Err(CoreError::Domain("log of zero".into()));
    }
    if w.re < 0.0 && w.im.abs() <= CUT_MARGIN * w.norm() {
        return Err(CoreError::BranchCut(format!("{w}")));
    }
    Ok(w.ln())
}

pub fn principal_pow(b: Complex64, e: Complex64) -> Result<Complex64> {
    if e.im == 0.0 && e.re.fract() == 0.0 && e.re.abs() <= i32::MAX as f64 {
        if b.is_zero() && e.re < 0.0 {
            return Err(CoreError::Domain("zero to a negative power".into()));
        }
        return Ok(b.powi(e.re as i32));
    }
    if b.is_zero() {
        return if e.re > 0.0 { Ok(Complex64::zero()) } else { Err(CoreError::Domain(format!("0^{e}"))) };
    }
    Ok((e * principal_ln(b)?).exp())
}

fn fmt_const(c: &Complex64) -> String {
    if c.im == 0.0 {
        format!("c:{}", c.re)
    } else {
        format!("c:{},{}", c.re, c.im)
    }
}

fn parse_const(tok: &str, pos: usize) -> Result<Complex64> {
    let body = tok.strip_prefix("c:").ok_or_else(|| CoreError::Parse { pos, msg: format!("expected constant, got {tok:?}") })?;
    let bad = |_| CoreError::Parse { pos, msg: format!("bad constant {tok:?}") };
    match body.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(re.parse().map_err(bad)?, im.parse().map_err(bad)?)),
        None => Ok(Complex64::new(body.parse().map_err(bad)?, 0.0)),
    }
}

fn parse_at(toks: &[&str], pos: &mut usize) -> Result<FuncExpr> {
    let at = *pos;
    let tok = *toks.get(at).ok_or(CoreError::Parse { pos: at, msg: "unexpected end of input".into() })?;
    *pos += 1;
    let sub = |pos: &mut usize| parse_at(toks, pos).map(Box::new);
    Ok(match tok {
        "z" => FuncExpr::Z,
        "neg" => FuncExpr::Neg(sub(pos)?),
        "exp" => FuncExpr::Exp(sub(pos)?),
        "log" => FuncExpr::Log(sub(pos)?),
        "add" => FuncExpr::Add(sub(pos)?, sub(pos)?),
        "mul" => FuncExpr::Mul(sub(pos)?, sub(pos)?),
        "pow" => FuncExpr::Pow(sub(pos)?, sub(pos)?),
        "comp" => FuncExpr::Compose(sub(pos)?, sub(pos)?),
        "scale" => {
            let k = parse_const(toks.get(*pos).copied().unwrap_or(""), *pos)?;
            *pos += 1;
            FuncExpr::Scale(k, sub(pos)?)
        }
        t if t.starts_with("c:") => FuncExpr::Const(parse_const(t, at)?),
        t => return Err(CoreError::Parse { pos: at, msg: format!("unknown token {t:?}") }),
    })
}

impl fmt::Display for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuncExpr::Const(c) => write!(f, "{}", fmt_const(c)),
            FuncExpr::Z => write!(f, "z"),
            FuncExpr::Neg(a) => write!(f, "neg {a}"),
            FuncExpr::Exp(a) => write!(f, "exp {a}"),
            FuncExpr::Log(a) => write!(f, "log {a}"),
            FuncExpr::Add(a, b) => write!(f, "add {a} {b}"),
            FuncExpr::Mul(a, b) => write!(f, "mul {a} {b}"),
            FuncExpr::Pow(a, b) => write!(f, "pow {a} {b}"),
            FuncExpr::Compose(a, b) => write!(f, "comp {a} {b}"),
            FuncExpr::Scale(k, a) => write!(f, "scale {} {a}", fmt_const(k)),
        }
    }
}

impl FromStr for FuncExpr {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        FuncExpr::parse_prefix(s)
    }
}

impl ops::Add for FuncExpr {
    type Output = FuncExpr;
    fn add(self, rhs: FuncExpr) -> FuncExpr {
        FuncExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for FuncExpr {
    type Output = FuncExpr;
    fn sub(self, rhs: FuncExpr) -> FuncExpr {
        self + FuncExpr::Neg(Box::new(rhs))
    }
}

impl ops::Mul for FuncExpr {
    type Output = FuncExpr;
    fn mul(self, rhs: FuncExpr) -> FuncExpr {
        FuncExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for FuncExpr {
    type Output = FuncExpr;
    fn neg(self) -> FuncExpr {
        FuncExpr::Neg(Box::new(self))
    }
}

/// 𝓕(f, g) = f∘g. The zero function absorbs on either side.
pub fn compose_primal(f: &FuncExpr, g: &FuncExpr) -> FuncExpr {
    if f.is_zero_fn() || g.is_zero_fn() {
        return FuncExpr::zero();
    }
    match (f, g) {
        (FuncExpr::Z, _) => g.clone(),
        (_, FuncExpr::Z) => f.clone(),
        _ => FuncExpr::Compose(Box::new(f.clone()), Box::new(g.clone())),
    }
}

/// 𝓖(f, g) = g∘f.
pub fn compose_dual(f: &FuncExpr, g: &FuncExpr) -> FuncExpr {
    compose_primal(g, f)
}
