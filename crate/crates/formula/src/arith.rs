//! Arithmetic formulas over the inputs {−1, 1} and symbolic variables.
//!
//! Prefix tokens: `1`, `-1`, `xN`, `+`, `*`, `^`, `log`, `mod`, `dN`.
//! `log b a` is the logarithm of `a` to base `b`; `dN k f` is the k-th partial
//! derivative of `f` in `xN`.

use std::fmt;
use std::str::FromStr;

use crate::cvalue::CValue;
use crate::error::{FormulaError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    Add,
    Mul,
    Pow,
    Log,
    Mod,
    Deriv(usize),
}

impl Gate {
    pub fn token(&self) -> String {
        match self {
            Gate::Add => "+".into(),
            Gate::Mul => "*".into(),
            Gate::Pow => "^".into(),
            Gate::Log => "log".into(),
            Gate::Mod => "mod".into(),
            Gate::Deriv(i) => format!("d{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithFormula {
    /// 1 or −1
    Leaf(i8),
    Var(usize),
    Gate(Gate, Box<ArithFormula>, Box<ArithFormula>),
}

use ArithFormula::*;

impl ArithFormula {
    pub fn one() -> Self {
        Leaf(1)
    }

    pub fn neg_one() -> Self {
        Leaf(-1)
    }

    /// The formula −1+1.
    pub fn zero() -> Self {
        Self::add(Leaf(-1), Leaf(1))
    }

    pub fn var(i: usize) -> Self {
        Var(i)
    }

    pub fn gate(g: Gate, a: Self, b: Self) -> Self {
        Gate(g, Box::new(a), Box::new(b))
    }

    pub fn add(a: Self, b: Self) -> Self {
        Self::gate(Gate::Add, a, b)
    }

    pub fn mul(a: Self, b: Self) -> Self {
        Self::gate(Gate::Mul, a, b)
    }

    pub fn pow(a: Self, b: Self) -> Self {
        Self::gate(Gate::Pow, a, b)
    }

    pub fn log(base: Self, arg: Self) -> Self {
        Self::gate(Gate::Log, base, arg)
    }

    pub fn modulo(a: Self, h: Self) -> Self {
        Self::gate(Gate::Mod, a, h)
    }

    pub fn deriv(var: usize, order: Self, body: Self) -> Self {
        Self::gate(Gate::Deriv(var), order, body)
    }

    pub fn size(&self) -> usize {
        match self {
            Gate(_, a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    pub fn has_vars(&self) -> bool {
        match self {
            Var(_) => true,
            Leaf(_) => false,
            Gate(_, a, b) => a.has_vars() || b.has_vars(),
        }
    }

    /// No −1 input.
    pub fn is_monotone(&self) -> bool {
        match self {
            Leaf(v) => *v == 1,
            Var(_) => true,
            Gate(_, a, b) => a.is_monotone() && b.is_monotone(),
        }
    }

    /// Sub-formula at `path` (0 = left child, 1 = right child).
    pub fn at(&self, path: &[usize]) -> Result<&ArithFormula> {
        let mut cur = self;
        for &step in path {
            cur = match (cur, step) {
                (Gate(_, a, _), 0) => a,
                (Gate(_, _, b), 1) => b,
                _ => return Err(FormulaError::BadPath(path.to_vec())),
            };
        }
        Ok(cur)
    }

    /// Copy with the sub-formula at `path` replaced.
    pub fn replace(&self, path: &[usize], new: ArithFormula) -> Result<ArithFormula> {
        let Some((&step, rest)) = path.split_first() else {
            return Ok(new);
        };
        match (self, step) {
            (Gate(g, a, b), 0) => Ok(Self::gate(*g, a.replace(rest, new)?, (**b).clone())),
            (Gate(g, a, b), 1) => Ok(Self::gate(*g, (**a).clone(), b.replace(rest, new)?)),
            _ => Err(FormulaError::BadPath(path.to_vec())),
        }
    }

    /// Every position in preorder.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        fn walk(f: &ArithFormula, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(cur.clone());
            if let Gate(_, a, b) = f {
                cur.push(0);
                walk(a, cur, out);
                cur.pop();
                cur.push(1);
                walk(b, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn encode_prefix(&self) -> String {
        let mut toks = Vec::new();
        self.push_tokens(&mut toks);
        toks.join(" ")
    }

    fn push_tokens(&self, out: &mut Vec<String>) {
        match self {
            Leaf(v) => out.push(v.to_string()),
            Var(i) => out.push(format!("x{i}")),
            Gate(g, a, b) => {
                out.push(g.token());
                a.push_tokens(out);
                b.push_tokens(out);
            }
        }
    }

    pub fn decode_prefix(s: &str) -> Result<ArithFormula> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let mut pos = 0;
        let f = parse_at(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(FormulaError::Parse { pos, msg: format!("trailing token {:?}", toks[pos]) });
        }
        Ok(f)
    }

    /// Value of a variable-free formula.
    pub fn eval(&self) -> Result<CValue> {
        self.eval_with(&[])
    }

    /// Value with `env[i]` substituted for `xi`.
    pub fn eval_with(&self, env: &[CValue]) -> Result<CValue> {
        match self {
            Leaf(v) => Ok(CValue::int(i64::from(*v))),
            Var(i) => env.get(*i).cloned().ok_or(FormulaError::Unbound(*i)),
            Gate(g, a, b) => {
                apply(*g, &a.eval_with(env)?, &b.eval_with(env)?)
            }
        }
    }

    /// `None` when reduced; otherwise why not.
    pub fn reduced_diagnostic(&self) -> Option<String> {
        fn walk(f: &ArithFormula) -> std::result::Result<CValue, String> {
            let v = match f {
                Gate(g, a, b) => apply(*g, &walk(a)?, &walk(b)?).map_err(|e| format!("{}: {e}", f.encode_prefix()))?,
                _ => return f.eval().map_err(|e| e.to_string()),
            };
            if f.size() > 2 && (v.is_zero() || v.is_one()) {
                return Err(format!("sub-formula {} equals {v}", f.encode_prefix()));
            }
            Ok(v)
        }
        walk(self).err()
    }

    /// No sub-formula of size > 2 evaluates to 0 or 1 (evaluation errors count as not reduced).
    pub fn is_reduced(&self) -> bool {
        self.reduced_diagnostic().is_none()
    }
}

/// One gate applied to values.
pub fn apply(g: Gate, x: &CValue, y: &CValue) -> Result<CValue> {
    match g {
        Gate::Add => Ok(x.add(y)),
        Gate::Mul => Ok(x.mul(y)),
        Gate::Pow => x.pow(y),
        Gate::Log => CValue::log(x, y),
        Gate::Mod => x.modulo(y),
        Gate::Deriv(_) => Err(FormulaError::Unsupported("derivative gates are rewritten, not evaluated".into())),
    }
}

fn parse_at(toks: &[&str], pos: &mut usize) -> Result<ArithFormula> {
    let at = *pos;
    let tok = *toks.get(at).ok_or(FormulaError::Parse { pos: at, msg: "unexpected end of input".into() })?;
    *pos += 1;
    let gate = match tok {
        "1" => return Ok(Leaf(1)),
        "-1" | "−1" => return Ok(Leaf(-1)),
        "+" => Gate::Add,
        "*" | "×" => Gate::Mul,
        "^" => Gate::Pow,
        "log" => Gate::Log,
        "mod" => Gate::Mod,
        t => {
            let index = |rest: &str| rest.parse::<usize>().ok();
            if let Some(i) = t.strip_prefix('x').and_then(index) {
                return Ok(Var(i));
            }
            match t.strip_prefix('d').and_then(index) {
                Some(i) => Gate::Deriv(i),
                None => return Err(FormulaError::Parse { pos: at, msg: format!("unknown token {t:?}") }),
            }
        }
    };
    let a = parse_at(toks, pos)?;
    let b = parse_at(toks, pos)?;
    Ok(ArithFormula::gate(gate, a, b))
}

impl fmt::Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode_prefix())
    }
}

impl FromStr for ArithFormula {
    type Err = FormulaError;
    fn from_str(s: &str) -> Result<Self> {
        ArithFormula::decode_prefix(s)
    }
}
