//! Boolean formulas over x₀, x₁, …: enumeration by size, lexicographic numbering
//! of the functions they compute, and conversion to multilinear polynomials.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use construct_core::poly::Poly;
use num::{BigUint, One};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::{FormulaError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolFormula {
    Const(bool),
    Var(usize),
    Not(Box<BoolFormula>),
    And(Box<BoolFormula>, Box<BoolFormula>),
    Or(Box<BoolFormula>, Box<BoolFormula>),
}

use BoolFormula::*;

pub fn var(i: usize) -> BoolFormula {
    Var(i)
}

pub fn not(a: BoolFormula) -> BoolFormula {
    Not(Box::new(a))
}

pub fn and(a: BoolFormula, b: BoolFormula) -> BoolFormula {
    And(Box::new(a), Box::new(b))
}

pub fn or(a: BoolFormula, b: BoolFormula) -> BoolFormula {
    Or(Box::new(a), Box::new(b))
}

/// Σ_{0<i<n} 2^(2^i), the first lex number of arity n.
pub fn lex_offset(n: usize) -> BigUint {
    (1..n).map(|i| BigUint::one() << (1usize << i)).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexNumber {
    pub value: BigUint,
    pub arity: usize,
}

impl fmt::Display for LexNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl BoolFormula {
    /// One token per gate, variable or constant.
    pub fn size(&self) -> usize {
        match self {
            Const(_) | Var(_) => 1,
            Not(a) => 1 + a.size(),
            And(a, b) | Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Largest variable index plus one; 0 without variables.
    pub fn arity(&self) -> usize {
        match self {
            Const(_) => 0,
            Var(i) => i + 1,
            Not(a) => a.arity(),
            And(a, b) | Or(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn increment_var_index(&self, j: usize) -> BoolFormula {
        match self {
            Const(c) => Const(*c),
            Var(i) => Var(i + j),
            Not(a) => not(a.increment_var_index(j)),
            And(a, b) => and(a.increment_var_index(j), b.increment_var_index(j)),
            Or(a, b) => or(a.increment_var_index(j), b.increment_var_index(j)),
        }
    }

    /// Value under `x[i]`; missing variables read as false.
    pub fn eval(&self, x: &[bool]) -> bool {
        match self {
            Const(c) => *c,
            Var(i) => x.get(*i).copied().unwrap_or(false),
            Not(a) => !a.eval(x),
            And(a, b) => a.eval(x) && b.eval(x),
            Or(a, b) => a.eval(x) || b.eval(x),
        }
    }

    /// F(b) for b = 0 … 2ⁿ−1, bit j of b giving x_j; n = max(arity, 1).
    pub fn truth_table(&self) -> Vec<bool> {
        let n = self.arity().max(1);
        (0..1usize << n)
            .map(|b| {
                let x: Vec<bool> = (0..n).map(|j| b >> j & 1 == 1).collect();
                self.eval(&x)
            })
            .collect()
    }

    pub fn lex_number(&self) -> LexNumber {
        let n = self.arity();
        if n == 0 {
            return LexNumber { value: BigUint::from(u8::from(self.eval(&[]))), arity: 1 };
        }
        let mut value = lex_offset(n);
        for (b, bit) in self.truth_table().into_iter().enumerate() {
            if bit {
                value += BigUint::one() << b;
            }
        }
        LexNumber { value, arity: n }
    }

    /// Substitution into 1, 0, 1−a, a·b, a+b−a·b; `reduce` applies x² = x.
    pub fn to_multilinear(&self, reduce: bool) -> Poly {
        let p = self.substitute();
        if reduce {
            p.reduce_multilinear()
        } else {
            p
        }
    }

    fn substitute(&self) -> Poly {
        match self {
            Const(c) => Poly::from_int(i64::from(*c)),
            Var(i) => Poly::var(&format!("x{i}")),
            Not(a) => Poly::one() - a.substitute(),
            And(a, b) => &a.substitute() * &b.substitute(),
            Or(a, b) => {
                let (p, q) = (a.substitute(), b.substitute());
                let pq = &p * &q;
                &p + &q - pq
            }
        }
    }
}

impl fmt::Display for BoolFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const(true) => write!(f, "True"),
            Const(false) => write!(f, "False"),
            Var(i) => write!(f, "x{i}"),
            Not(a) => write!(f, "['NOT', {a}]"),
            And(a, b) => write!(f, "['AND', {a}, {b}]"),
            Or(a, b) => write!(f, "['OR', {a}, {b}]"),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> FormulaError {
        FormulaError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", c as char)))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || b"'\"_".contains(&self.s[self.pos])) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.pos]).trim_matches(['\'', '"']).to_string()
    }

    fn formula(&mut self) -> Result<BoolFormula> {
        self.skip_ws();
        if self.s.get(self.pos) != Some(&b'[') {
            let w = self.word();
            return match w.as_str() {
                "True" => Ok(Const(true)),
                "False" => Ok(Const(false)),
                _ => w.strip_prefix('x').and_then(|d| d.parse().ok()).map(Var).ok_or_else(|| self.err(&format!("bad atom {w:?}"))),
            };
        }
        self.eat(b'[')?;
        let op = self.word();
        self.eat(b',')?;
        let a = self.formula()?;
        let f = match op.as_str() {
            "NOT" => not(a),
            "AND" | "OR" => {
                self.eat(b',')?;
                let b = self.formula()?;
                if op == "AND" {
                    and(a, b)
                } else {
                    or(a, b)
                }
            }
            _ => return Err(self.err(&format!("unknown gate {op:?}"))),
        };
        self.eat(b']')?;
        Ok(f)
    }
}

impl FromStr for BoolFormula {
    type Err = FormulaError;
    /// Bracket form: `['AND', x0, ['NOT', x1]]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let f = p.formula()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug)]
pub struct BoolEnumeration {
    /// A_0 … A_N.
    pub strata: Vec<Vec<BoolFormula>>,
    /// Lex numbers of the admitted formulas in generation order.
    pub lex: Vec<BigUint>,
}

pub fn enumerate_bool(n: usize) -> BoolEnumeration {
    enumerate_bool_with(n, None)
}

/// Candidates at each size are AND(s, t↑j), then OR(s, t↑j), then NOT(s), ordered by
/// (size of s, s, t, j); a candidate is admitted when its lex number is unseen.
pub fn enumerate_bool_with(n: usize, shuffle: Option<u64>) -> BoolEnumeration {
    let mut strata: Vec<Vec<BoolFormula>> = vec![Vec::new(); n + 1];
    let mut lex = Vec::new();
    let mut seen = HashSet::new();
    if n >= 1 {
        strata[1].push(Var(0));
        let l = Var(0).lex_number().value;
        seen.insert(l.clone());
        lex.push(l);
    }
    for m in 2..=n {
        let mut cands = Vec::new();
        for gate in [and as fn(BoolFormula, BoolFormula) -> BoolFormula, or] {
            for i in 1..m.saturating_sub(1) {
                for s in &strata[i] {
                    for t in &strata[m - 1 - i] {
                        for j in 0..=s.arity() {
                            cands.push(gate(s.clone(), t.increment_var_index(j)));
                        }
                    }
                }
            }
        }
        cands.extend(strata[m - 1].iter().map(|s| not(s.clone())));
        if let Some(seed) = shuffle {
            cands.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed ^ m as u64));
        }
        for c in cands {
            let l = c.lex_number().value;
            if seen.insert(l.clone()) {
                lex.push(l);
                strata[m].push(c);
            }
        }
    }
    BoolEnumeration { strata, lex }
}
