//! Transformation rules relating equivalent formulas, applied at a single position.
//!
//! Each rule rewrites its left-hand pattern into its right-hand side; rules whose
//! reverse direction is determined by the pattern alone come in pairs.

use std::fmt;
use std::str::FromStr;

use crate::arith::{ArithFormula, Gate};
use crate::error::{FormulaError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    CommAdd,
    CommMul,
    AssocAddRight,
    AssocAddLeft,
    AssocMulRight,
    AssocMulLeft,
    DistMulExpand,
    DistMulFactor,
    DistPowSumExpand,
    DistPowSumFactor,
    DistPowProdExpand,
    DistPowProdFactor,
    UnitMul,
    UnitPow,
    OnePow,
    AddZero,
    MulZero,
    PowZero,
    LogProdPow,
    LogPow,
    LogOne,
    ModAddCollapse,
    ModAddExpand,
    ModMulCollapse,
    ModMulExpand,
    ModZero,
    DerivAdd,
    DerivMul,
}

use RuleId::*;

impl RuleId {
    pub const ALL: [RuleId; 28] = [
        CommAdd,
        CommMul,
        AssocAddRight,
        AssocAddLeft,
        AssocMulRight,
        AssocMulLeft,
        DistMulExpand,
        DistMulFactor,
        DistPowSumExpand,
        DistPowSumFactor,
        DistPowProdExpand,
        DistPowProdFactor,
        UnitMul,
        UnitPow,
        OnePow,
        AddZero,
        MulZero,
        PowZero,
        LogProdPow,
        LogPow,
        LogOne,
        ModAddCollapse,
        ModAddExpand,
        ModMulCollapse,
        ModMulExpand,
        ModZero,
        DerivAdd,
        DerivMul,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CommAdd => "comm-add",
            CommMul => "comm-mul",
            AssocAddRight => "assoc-add-right",
            AssocAddLeft => "assoc-add-left",
            AssocMulRight => "assoc-mul-right",
            AssocMulLeft => "assoc-mul-left",
            DistMulExpand => "dist-mul-expand",
            DistMulFactor => "dist-mul-factor",
            DistPowSumExpand => "dist-pow-sum-expand",
            DistPowSumFactor => "dist-pow-sum-factor",
            DistPowProdExpand => "dist-pow-prod-expand",
            DistPowProdFactor => "dist-pow-prod-factor",
            UnitMul => "unit-mul",
            UnitPow => "unit-pow",
            OnePow => "one-pow",
            AddZero => "add-zero",
            MulZero => "mul-zero",
            PowZero => "pow-zero",
            LogProdPow => "log-prod-pow",
            LogPow => "log-pow",
            LogOne => "log-one",
            ModAddCollapse => "mod-add-collapse",
            ModAddExpand => "mod-add-expand",
            ModMulCollapse => "mod-mul-collapse",
            ModMulExpand => "mod-mul-expand",
            ModZero => "mod-zero",
            DerivAdd => "deriv-add",
            DerivMul => "deriv-mul",
        }
    }

    /// Rules that only hold off the principal-branch cut, e.g. (f×g)^h = f^h × g^h
    /// fails at f = g = −1, h = 1/2.
    pub fn branch_sensitive(&self) -> bool {
        matches!(self, DistPowProdExpand | DistPowProdFactor | LogProdPow | LogPow)
    }

    /// Rules about the mod gate, meaningful on integer values only.
    pub fn integer_only(&self) -> bool {
        matches!(self, ModAddCollapse | ModAddExpand | ModMulCollapse | ModMulExpand | ModZero)
    }

    /// Rules on derivative gates, which have no numeric semantics here.
    pub fn symbolic_only(&self) -> bool {
        matches!(self, DerivAdd | DerivMul)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = FormulaError;
    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| FormulaError::Unsupported(format!("unknown rule {s:?}")))
    }
}

type F = ArithFormula;

fn split(f: &F, g: Gate) -> Option<(&F, &F)> {
    match f {
        F::Gate(h, a, b) if *h == g => Some((a, b)),
        _ => None,
    }
}

fn is_zero_formula(f: &F) -> bool {
    *f == F::zero()
}

/// Rewrites the node itself; `None` when the pattern does not match.
fn rewrite_node(f: &F, rule: RuleId) -> Option<F> {
    use Gate::*;
    let c = |x: &F| x.clone();
    match rule {
        CommAdd => split(f, Add).map(|(a, b)| F::add(c(b), c(a))),
        CommMul => split(f, Mul).map(|(a, b)| F::mul(c(b), c(a))),
        AssocAddRight => {
            let (l, h) = split(f, Add)?;
            let (a, b) = split(l, Add)?;
            Some(F::add(c(a), F::add(c(b), c(h))))
        }
        AssocAddLeft => {
            let (a, r) = split(f, Add)?;
            let (b, h) = split(r, Add)?;
            Some(F::add(F::add(c(a), c(b)), c(h)))
        }
        AssocMulRight => {
            let (l, h) = split(f, Mul)?;
            let (a, b) = split(l, Mul)?;
            Some(F::mul(c(a), F::mul(c(b), c(h))))
        }
        AssocMulLeft => {
            let (a, r) = split(f, Mul)?;
            let (b, h) = split(r, Mul)?;
            Some(F::mul(F::mul(c(a), c(b)), c(h)))
        }
        DistMulExpand => {
            let (a, s) = split(f, Mul)?;
            let (g, h) = split(s, Add)?;
            Some(F::add(F::mul(c(a), c(g)), F::mul(c(a), c(h))))
        }
        DistMulFactor => {
            let (l, r) = split(f, Add)?;
            let ((a, g), (a2, h)) = (split(l, Mul)?, split(r, Mul)?);
            (a == a2).then(|| F::mul(c(a), F::add(c(g), c(h))))
        }
        DistPowSumExpand => {
            let (a, s) = split(f, Pow)?;
            let (g, h) = split(s, Add)?;
            Some(F::mul(F::pow(c(a), c(g)), F::pow(c(a), c(h))))
        }
        DistPowSumFactor => {
            let (l, r) = split(f, Mul)?;
            let ((a, g), (a2, h)) = (split(l, Pow)?, split(r, Pow)?);
            (a == a2).then(|| F::pow(c(a), F::add(c(g), c(h))))
        }
        DistPowProdExpand => {
            let (p, h) = split(f, Pow)?;
            let (a, g) = split(p, Mul)?;
            Some(F::mul(F::pow(c(a), c(h)), F::pow(c(g), c(h))))
        }
        DistPowProdFactor => {
            let (l, r) = split(f, Mul)?;
            let ((a, h), (g, h2)) = (split(l, Pow)?, split(r, Pow)?);
            (h == h2).then(|| F::pow(F::mul(c(a), c(g)), c(h)))
        }
        UnitMul => split(f, Mul).and_then(|(a, b)| (*b == F::one()).then(|| c(a))),
        UnitPow => split(f, Pow).and_then(|(a, b)| (*b == F::one()).then(|| c(a))),
        OnePow => split(f, Pow).and_then(|(a, _)| (*a == F::one()).then(F::one)),
        AddZero => split(f, Add).and_then(|(a, b)| is_zero_formula(b).then(|| c(a))),
        MulZero => split(f, Mul).and_then(|(_, b)| is_zero_formula(b).then(F::zero)),
        PowZero => split(f, Pow).and_then(|(_, b)| is_zero_formula(b).then(F::one)),
        LogProdPow => {
            let (h, m) = split(f, Log)?;
            let (l, r) = split(m, Mul)?;
            let ((h1, a), (h2, b)) = (split(l, Pow)?, split(r, Pow)?);
            (h1 == h && h2 == h).then(|| F::add(c(a), c(b)))
        }
        LogPow => {
            let (a, p) = split(f, Log)?;
            let (a2, g) = split(p, Pow)?;
            (a == a2).then(|| c(g))
        }
        LogOne => split(f, Log).and_then(|(_, x)| (*x == F::one()).then(F::zero)),
        ModAddCollapse | ModMulCollapse => {
            let g = if rule == ModAddCollapse { Add } else { Mul };
            let (s, h) = split(f, Mod)?;
            let (l, r) = split(s, g)?;
            let ((a, h1), (b, h2)) = (split(l, Mod)?, split(r, Mod)?);
            (h1 == h && h2 == h).then(|| F::modulo(F::gate(g, c(a), c(b)), c(h)))
        }
        ModAddExpand | ModMulExpand => {
            let g = if rule == ModAddExpand { Add } else { Mul };
            let (s, h) = split(f, Mod)?;
            let (a, b) = split(s, g)?;
            Some(F::modulo(F::gate(g, F::modulo(c(a), c(h)), F::modulo(c(b), c(h))), c(h)))
        }
        ModZero => split(f, Mod).and_then(|(a, _)| is_zero_formula(a).then(F::zero)),
        DerivAdd => {
            let F::Gate(Deriv(i), k, body) = f else { return None };
            let (a, b) = split(body, Add)?;
            Some(F::add(F::deriv(*i, c(k), c(a)), F::deriv(*i, c(k), c(b))))
        }
        DerivMul => {
            // the product rule is first order only
            let F::Gate(Deriv(i), k, body) = f else { return None };
            if **k != F::one() {
                return None;
            }
            let (a, b) = split(body, Mul)?;
            Some(F::add(F::mul(c(b), F::deriv(*i, F::one(), c(a))), F::mul(c(a), F::deriv(*i, F::one(), c(b)))))
        }
    }
}

/// Applies `rule` at the node found by following `path` from the root.
pub fn apply_rewrite(f: &ArithFormula, rule: RuleId, path: &[usize]) -> Result<ArithFormula> {
    let node = f.at(path)?;
    let new = rewrite_node(node, rule).ok_or_else(|| FormulaError::NoMatch {
        rule: rule.name().into(),
        path: path.to_vec(),
        msg: format!("pattern absent in {node}"),
    })?;
    f.replace(path, new)
}

/// Positions where `rule` matches.
pub fn matches(f: &ArithFormula, rule: RuleId) -> Vec<Vec<usize>> {
    f.paths().into_iter().filter(|p| f.at(p).ok().and_then(|n| rewrite_node(n, rule)).is_some()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> F {
        s.parse().unwrap()
    }

    #[test]
    fn commutativity_at_root() {
        assert_eq!(apply_rewrite(&p("+ 1 -1"), CommAdd, &[]).unwrap(), p("+ -1 1"));
    }

    #[test]
    fn log_rule_preserves_value() {
        let lhs = p("log + 1 1 ^ + 1 1 + 1 1");
        let rhs = apply_rewrite(&lhs, LogPow, &[]).unwrap();
        assert_eq!(rhs, p("+ 1 1"));
        assert!(lhs.eval().unwrap().same(&rhs.eval().unwrap()));
    }

    #[test]
    fn nested_positions() {
        let f = p("* x0 + 1 * x1 + x2 1");
        assert_eq!(matches(&f, DistMulExpand), vec![vec![], vec![1, 1]]);
        let g = apply_rewrite(&f, DistMulExpand, &[1, 1]).unwrap();
        assert_eq!(g, p("* x0 + 1 + * x1 x2 * x1 1"));
        assert!(matches!(apply_rewrite(&f, LogOne, &[]), Err(FormulaError::NoMatch { .. })));
    }

    #[test]
    fn derivative_rules() {
        let f = p("d0 1 * x0 x1");
        assert_eq!(apply_rewrite(&f, DerivMul, &[]).unwrap(), p("+ * x1 d0 1 x0 * x0 d0 1 x1"));
        assert!(apply_rewrite(&p("d0 + 1 1 * x0 x1"), DerivMul, &[]).is_err());
        assert_eq!(apply_rewrite(&p("d2 x5 + x0 x1"), DerivAdd, &[]).unwrap(), p("+ d2 x5 x0 d2 x5 x1"));
    }

    #[test]
    fn principal_branch_breaks_product_power() {
        let lhs = p("^ * -1 -1 ^ + 1 1 -1");
        let rhs = apply_rewrite(&lhs, DistPowProdExpand, &[]).unwrap();
        assert_eq!(lhs.eval().unwrap().to_string(), "1");
        assert_eq!(rhs.eval().unwrap().to_string(), "-1");
    }

    #[test]
    fn names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(r.name().parse::<RuleId>().unwrap(), r);
        }
    }
}
