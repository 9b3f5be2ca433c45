//! Algebraic systems 0 = C·(x^E): a coefficient layer over a monomial layer.

use num::complex::Complex64;
use num::{One, ToPrimitive};

use crate::error::{Result, SolveError};
use crate::exponent::Type2System;
use crate::linear::Type1System;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicSystem {
    /// m×ℓ: row k is the exponent vector of monomial k.
    pub e: Vec<Vec<i64>>,
    /// n×m: equation j is Σₖ c[j][k]·x^{e[k]}.
    pub c: Vec<Vec<Complex64>>,
}

impl AlgebraicSystem {
    pub fn new(e: Vec<Vec<i64>>, c: Vec<Vec<Complex64>>) -> Result<Self> {
        let l = e.first().map_or(0, Vec::len);
        if e.is_empty() || l == 0 || e.iter().any(|r| r.len() != l) {
            return Err(SolveError::Shape("exponent matrix must be a nonempty rectangle".into()));
        }
        if c.is_empty() || c.iter().any(|r| r.len() != e.len()) {
            return Err(SolveError::Shape(format!("coefficient rows must have {} entries", e.len())));
        }
        Ok(AlgebraicSystem { e, c })
    }

    pub fn unknowns(&self) -> usize {
        self.e[0].len()
    }

    pub fn monomials(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.unknowns() {
            return Err(SolveError::Shape(format!("{} unknowns expected, got {}", self.unknowns(), x.len())));
        }
        self.e
            .iter()
            .map(|row| {
                row.iter().zip(x).try_fold(Complex64::one(), |acc, (&k, xi)| {
                    if k < 0 && xi.norm() == 0.0 {
                        return Err(SolveError::Domain(format!("0^{k}")));
                    }
                    let p = i32::try_from(k).map_err(|_| SolveError::Domain(format!("exponent {k} out of range")))?;
                    Ok(acc * xi.powi(p))
                })
            })
            .collect()
    }

    /// C·(x^E); zero at a solution.
    pub fn residual(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let mono = self.monomials(x)?;
        Ok(self.c.iter().map(|row| row.iter().zip(&mono).map(|(c, m)| c * m).sum()).collect())
    }
}

/// Composes 0 = CProd_Σ(B, CProd_Π(A, x)).
///
/// Row k of the product layer is x^{E[k]}/b_k and row j of the linear layer
/// is Σₖ α_jk·(·) − β_j, so the composite is Σₖ (α_jk/b_k)·x^{E[k]} − β_j.
/// The constant term becomes an extra all-zero exponent row.
pub fn compose_algebraic(b: &Type1System<Complex64>, a: &Type2System) -> Result<AlgebraicSystem> {
    let m = a.e.len();
    if b.a[0].len() != m {
        return Err(SolveError::Shape(format!("linear layer has {} columns, product layer {m} rows", b.a[0].len())));
    }
    let mut e = Vec::with_capacity(m + 1);
    for row in &a.e {
        let ints = row
            .iter()
            .map(|q| {
                if q.is_integer() {
                    q.to_integer().to_i64().ok_or_else(|| SolveError::Domain(format!("exponent {q} out of range")))
                } else {
                    Err(SolveError::Domain(format!("algebraic systems need integer exponents, got {q}")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        e.push(ints);
    }
    e.push(vec![0; a.cols()]);
    let c = b
        .a
        .iter()
        .zip(&b.b)
        .map(|(row, beta)| row.iter().zip(&a.b).map(|(alpha, bk)| alpha / bk).chain([-beta]).collect())
        .collect();
    AlgebraicSystem::new(e, c)
}
