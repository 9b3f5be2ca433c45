use num::complex::Complex64;
use rand::Rng;

use super::{compose_dual, compose_primal, max_over_samples, FuncExpr, SampleDomain};
use crate::error::Result;
use crate::hypermatrix::Hypermatrix;
use crate::product::{cprod2, AlgebraSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Product,
}

/// Primal composes f∘g, dual composes g∘f.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

pub fn functional_algebra(comb: Combine, side: Side) -> AlgebraSpec<FuncExpr> {
    let name = format!("{comb:?}/{side:?}").to_lowercase();
    let composer = move |a: &[&FuncExpr]| match side {
        Side::Primal => compose_primal(a[0], a[1]),
        Side::Dual => compose_dual(a[0], a[1]),
    };
    let combinator = move |terms: Vec<FuncExpr>| match comb {
        // zero functions contribute nothing to a sum
        Combine::Sum => terms.into_iter().filter(|t| !t.is_zero_fn()).reduce(|a, b| a + b).unwrap_or_else(FuncExpr::zero),
        Combine::Product => {
            if terms.iter().any(FuncExpr::is_zero_fn) {
                FuncExpr::zero()
            } else {
                terms.into_iter().reduce(|a, b| a * b).expect("nonempty")
            }
        }
    };
    AlgebraSpec::new(name, Some(2), combinator, composer)
}

pub fn cprod_functional(
    a: &Hypermatrix<FuncExpr>,
    b: &Hypermatrix<FuncExpr>,
    comb: Combine,
    side: Side,
) -> Result<Hypermatrix<FuncExpr>> {
    cprod2(a, b, &functional_algebra(comb, side))
}

pub fn eval_construct(h: &Hypermatrix<FuncExpr>, z: Complex64) -> Result<Hypermatrix<Complex64>> {
    h.try_map(|f| f.eval(z))
}

fn max_abs_diff(a: &Hypermatrix<Complex64>, b: &Hypermatrix<Complex64>) -> f64 {
    a.entries().iter().zip(b.entries()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// diag(λ₀, …, λₙ₋₁) with zero functions off the diagonal.
pub fn scalar_diag(lambdas: &[FuncExpr]) -> Hypermatrix<FuncExpr> {
    let n = lambdas.len();
    Hypermatrix::from_fn(&[n, n], |ix| if ix[0] == ix[1] { lambdas[ix[0]].clone() } else { FuncExpr::zero() })
        .expect("at least one eigenfunction")
}

/// U = [[e^z/2, ln z/2], [−e^z/2, ln z/2]] and V = [[ln z, ln(−z)], [e^z, e^z]],
/// whose product under (Σ, ∘) is z·I away from the real axis.
pub fn exp_log_pair() -> (Hypermatrix<FuncExpr>, Hypermatrix<FuncExpr>) {
    let z = FuncExpr::z;
    let half = |f: FuncExpr| FuncExpr::scale(0.5, f);
    let u = Hypermatrix::from_rows(vec![
        vec![half(FuncExpr::exp(z())), half(FuncExpr::ln(z()))],
        vec![FuncExpr::scale(-0.5, FuncExpr::exp(z())), half(FuncExpr::ln(z()))],
    ])
    .expect("2×2");
    let v = Hypermatrix::from_rows(vec![
        vec![FuncExpr::ln(z()), FuncExpr::ln(-z())],
        vec![FuncExpr::exp(z()), FuncExpr::exp(z())],
    ])
    .expect("2×2");
    (u, v)
}

/// Largest deviation of the (Σ, primal) product of U and V from z·I over `k` samples.
pub fn verify_pseudo_inverse<R: Rng + ?Sized>(
    u: &Hypermatrix<FuncExpr>,
    v: &Hypermatrix<FuncExpr>,
    dom: &SampleDomain,
    k: usize,
    rng: &mut R,
) -> Result<f64> {
    let p = cprod_functional(u, v, Combine::Sum, Side::Primal)?;
    let n = p.dims()[0];
    max_over_samples(dom, k, rng, |z| {
        let got = eval_construct(&p, z)?;
        let want = Hypermatrix::from_fn(&[n, p.dims()[1]], |ix| if ix[0] == ix[1] { z } else { Complex64::new(0.0, 0.0) })?;
        Ok(max_abs_diff(&got, &want))
    })
}

/// Both association orders of U∘diag(λ)∘V.
#[derive(Clone, Debug)]
pub struct Synthesis {
    /// U ∘ (diag(λ) ∘ V)
    pub right_assoc: Hypermatrix<FuncExpr>,
    /// (U ∘ diag(λ)) ∘ V
    pub left_assoc: Hypermatrix<FuncExpr>,
}

impl Synthesis {
    pub fn disagreement<R: Rng + ?Sized>(&self, dom: &SampleDomain, k: usize, rng: &mut R) -> Result<f64> {
        max_over_samples(dom, k, rng, |z| {
            Ok(max_abs_diff(&eval_construct(&self.right_assoc, z)?, &eval_construct(&self.left_assoc, z)?))
        })
    }
}

pub fn spectral_synthesize(
    u: &Hypermatrix<FuncExpr>,
    v: &Hypermatrix<FuncExpr>,
    lambdas: &[FuncExpr],
) -> Result<Synthesis> {
    let d = scalar_diag(lambdas);
    let dv = cprod_functional(&d, v, Combine::Sum, Side::Primal)?;
    let ud = cprod_functional(u, &d, Combine::Sum, Side::Primal)?;
    Ok(Synthesis {
        right_assoc: cprod_functional(u, &dv, Combine::Sum, Side::Primal)?,
        left_assoc: cprod_functional(&ud, v, Combine::Sum, Side::Primal)?,
    })
}

/// Residual of A∘v = λI ∘ v, the right side composed with the chosen composer.
pub fn verify_eigen<R: Rng + ?Sized>(
    a: &Hypermatrix<FuncExpr>,
    v: &Hypermatrix<FuncExpr>,
    lambda: &FuncExpr,
    side: Side,
    dom: &SampleDomain,
    k: usize,
    rng: &mut R,
) -> Result<f64> {
    let n = a.dims()[0];
    let lhs = cprod_functional(a, v, Combine::Sum, Side::Primal)?;
    let rhs = cprod_functional(&scalar_diag(&vec![lambda.clone(); n]), v, Combine::Sum, side)?;
    max_over_samples(dom, k, rng, |z| Ok(max_abs_diff(&eval_construct(&lhs, z)?, &eval_construct(&rhs, z)?)))
}
