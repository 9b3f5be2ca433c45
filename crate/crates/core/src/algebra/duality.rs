//! External composers (×, a^b, b^a) rewritten as functional composition.

use num::complex::Complex64;
use num::{One, Zero};

use super::{make_algebra, InstanceKind};
use crate::error::{CoreError, Result};
use crate::funcexpr::FuncExpr;
use crate::hypermatrix::Hypermatrix;
use crate::product::cprod2;

/// Max absolute residual of each duality, plus entries skipped for domain reasons.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DualityReport {
    pub sum_prod: f64,
    pub prod_exp: f64,
    pub prod_baseexp: f64,
    pub violations: Vec<String>,
}

impl DualityReport {
    pub fn max(&self) -> f64 {
        self.sum_prod.max(self.prod_exp).max(self.prod_baseexp)
    }
}

/// Op_t F(i,t)(B[t,j]): each functional entry applied to a scalar input.
fn apply_product(
    fa: &Hypermatrix<FuncExpr>,
    b: &Hypermatrix<Complex64>,
    product: bool,
    violations: &mut Vec<String>,
    tag: &str,
) -> Result<Hypermatrix<Option<Complex64>>> {
    let l = fa.dims()[1];
    Hypermatrix::from_fn(&[fa.dims()[0], b.dims()[1]], |ix| {
        let mut acc = if product { Complex64::one() } else { Complex64::zero() };
        for t in 0..l {
            match fa.get(&[ix[0], t]).eval(*b.get(&[t, ix[1]])) {
                Ok(v) if product => acc *= v,
                Ok(v) => acc += v,
                Err(e) => {
                    violations.push(format!("{tag} entry ({}, {}) term {t}: {e}", ix[0], ix[1]));
                    return None;
                }
            }
        }
        Some(acc)
    })
}

fn residual(lhs: &Hypermatrix<Complex64>, rhs: &Hypermatrix<Option<Complex64>>) -> f64 {
    lhs.entries()
        .iter()
        .zip(rhs.entries())
        .filter_map(|(x, y)| y.map(|y| (x - y).norm()))
        .fold(0.0, f64::max)
}

/// Checks CProd_{Σ,×}(A,B) = CProd_{Σ,∘}(A·z, B), CProd_{Π,exp}(A,B) = CProd_{Π,∘}(A^{∘z}, B)
/// and CProd_{Π,baseexp}(A,B) = CProd_{Π,∘}(z^{∘A}, B), composition evaluated at B's entries.
pub fn check_duality(a: &Hypermatrix<Complex64>, b: &Hypermatrix<Complex64>) -> Result<DualityReport> {
    if a.shape().order() != 2 || b.shape().order() != 2 || a.dims()[1] != b.dims()[0] {
        return Err(CoreError::Conformability(format!("duality check needs {} and {} conformable", a.shape(), b.shape())));
    }
    let mut report = DualityReport::default();

    let lhs = cprod2(a, b, &make_algebra::<Complex64>(InstanceKind::SumProd)?)?;
    let az = a.map(|&x| FuncExpr::scale_c(x, FuncExpr::z()));
    report.sum_prod = residual(&lhs, &apply_product(&az, b, false, &mut report.violations, "sum-prod")?);

    let lhs = cprod2(a, b, &make_algebra::<Complex64>(InstanceKind::ProdExp)?)?;
    let a_exp = a.map(|&x| if x.is_zero() { FuncExpr::zero() } else { FuncExpr::pow(FuncExpr::cc(x), FuncExpr::z()) });
    report.prod_exp = residual(&lhs, &apply_product(&a_exp, b, true, &mut report.violations, "prod-exp")?);

    let lhs = cprod2(a, b, &make_algebra::<Complex64>(InstanceKind::ProdBaseExp)?)?;
    let z_a = a.map(|&x| FuncExpr::pow(FuncExpr::z(), FuncExpr::cc(x)));
    let mut rhs = apply_product(&z_a, b, true, &mut report.violations, "prod-baseexp")?;
    // a zero base is outside the principal power's domain; report instead of comparing
    for ix in b.shape().indices() {
        if b.get(&ix).is_zero() {
            report.violations.push(format!("prod-baseexp: zero base at B[{}, {}]", ix[0], ix[1]));
            for i in 0..a.dims()[0] {
                rhs.set(&[i, ix[1]], None);
            }
        }
    }
    report.prod_baseexp = residual(&lhs, &rhs);
    Ok(report)
}
