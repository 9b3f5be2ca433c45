//! Exact affine entries a·z + b over ℚ, for identities that must hold symbolically.

use std::fmt;

use num::complex::Complex64;
use num::{BigRational, One, ToPrimitive, Zero};

use super::FuncExpr;
use crate::error::{CoreError, Result};
use crate::hypermatrix::Hypermatrix;
use crate::product::{cprod2, AlgebraSpec};

/// The function z ↦ a·z + b.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: BigRational,
    pub b: BigRational,
}

impl Affine {
    pub fn new(a: BigRational, b: BigRational) -> Affine {
        Affine { a, b }
    }

    pub fn zero() -> Affine {
        Affine::new(BigRational::zero(), BigRational::zero())
    }

    pub fn is_zero_fn(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// self ∘ g by substitution: a(c·z + d) + b.
    pub fn compose(&self, g: &Affine) -> Affine {
        Affine::new(&self.a * &g.a, &self.a * &g.b + &self.b)
    }

    pub fn to_funcexpr(&self) -> FuncExpr {
        let f = |r: &BigRational| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0);
        FuncExpr::affine(f(&self.a), f(&self.b))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*z + ({})", self.a, self.b)
    }
}

fn affine_algebra(absorbing: bool) -> AlgebraSpec<Affine> {
    AlgebraSpec::new(
        "sum/primal",
        Some(2),
        |terms: Vec<Affine>| terms.into_iter().reduce(|x, y| Affine::new(x.a + y.a, x.b + y.b)).expect("nonempty"),
        move |args: &[&Affine]| {
            if absorbing && (args[0].is_zero_fn() || args[1].is_zero_fn()) {
                Affine::zero()
            } else {
                args[0].compose(args[1])
            }
        },
    )
}

/// (Σ, ∘) product of affine constructs, computed exactly. With `absorbing`
/// the zero function absorbs under composition (the library convention);
/// without it, f∘0 = f(0) as plain substitution gives.
pub fn affine_cprod(a: &Hypermatrix<Affine>, b: &Hypermatrix<Affine>, absorbing: bool) -> Result<Hypermatrix<Affine>> {
    cprod2(a, b, &affine_algebra(absorbing))
}

fn inverse(a: &Hypermatrix<BigRational>) -> Result<Hypermatrix<BigRational>> {
    let n = a.dims()[0];
    if a.shape().order() != 2 || a.dims()[1] != n {
        return Err(CoreError::Conformability(format!("inverse of non-square {}", a.shape())));
    }
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| a.get(&[i, j]).clone()).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).ok_or_else(|| CoreError::Domain("singular coefficient matrix".into()))?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Hypermatrix::from_fn(&[n, n], |ix| m[ix[0]][n + ix[1]].clone())
}

/// Entries (A⁻¹)[i,j]·z: composing with A·z on either side gives z·I.
pub fn inverse_construct(a: &Hypermatrix<BigRational>) -> Result<Hypermatrix<Affine>> {
    Ok(inverse(a)?.map(|x| Affine::new(x.clone(), BigRational::zero())))
}

/// Right identity for M(z) = A·z + B under plain substitution:
/// rId(z) = z·I − A⁻¹·B·(J − I), J the all-ones matrix. The left identity is z·I.
pub fn right_identity(a: &Hypermatrix<BigRational>, b: &Hypermatrix<BigRational>) -> Result<Hypermatrix<Affine>> {
    let n = a.dims()[0];
    let ainv = inverse(a)?;
    // B·(J − I)[i,j] = Σ_{t≠j} B[i,t]
    let bj = Hypermatrix::from_fn(&[n, n], |ix| {
        (0..n).filter(|&t| t != ix[1]).fold(BigRational::zero(), |acc, t| acc + b.get(&[ix[0], t]))
    })?;
    Hypermatrix::from_fn(&[n, n], |ix| {
        let k = (0..n).fold(BigRational::zero(), |acc, t| acc + ainv.get(&[ix[0], t]) * bj.get(&[t, ix[1]]));
        let slope = if ix[0] == ix[1] { BigRational::one() } else { BigRational::zero() };
        Affine::new(slope, -k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mat(v: [[i64; 2]; 2]) -> Hypermatrix<BigRational> {
        Hypermatrix::from_fn(&[2, 2], |ix| q(v[ix[0]][ix[1]], 1)).unwrap()
    }

    #[test]
    fn displayed_two_by_two_inverse_pair() {
        let a = mat([[2, 3], [-1, 5]]);
        let inv = inverse_construct(&a).unwrap();
        // entries ±a_ij z / (a01·a10 − a00·a11)
        let d = q(3 * -1 - 2 * 5, 1);
        let want = [[q(-5, 1), q(3, 1)], [q(-1, 1), q(-2, 1)]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(inv.get(&[i, j]).a, &want[i][j] / &d);
            }
        }
        let az = a.map(|x| Affine::new(x.clone(), BigRational::zero()));
        let zi = Hypermatrix::from_fn(&[2, 2], |ix| {
            Affine::new(if ix[0] == ix[1] { q(1, 1) } else { q(0, 1) }, q(0, 1))
        })
        .unwrap();
        for absorbing in [true, false] {
            assert_eq!(affine_cprod(&az, &inv, absorbing).unwrap(), zi);
            assert_eq!(affine_cprod(&inv, &az, absorbing).unwrap(), zi);
        }
    }

    #[test]
    fn left_and_right_identities() {
        let a = mat([[1, 2], [3, 5]]);
        let b = mat([[7, -1], [4, 2]]);
        let m = Hypermatrix::from_fn(&[2, 2], |ix| Affine::new(a.get(ix).clone(), b.get(ix).clone())).unwrap();
        let rid = right_identity(&a, &b).unwrap();
        let lid = Hypermatrix::from_fn(&[2, 2], |ix| {
            if ix[0] == ix[1] { Affine::new(q(1, 1), q(0, 1)) } else { Affine::zero() }
        })
        .unwrap();
        for absorbing in [true, false] {
            assert_eq!(affine_cprod(&m, &rid, absorbing).unwrap(), m);
            assert_eq!(affine_cprod(&lid, &m, absorbing).unwrap(), m);
        }
        // by substitution, z·I fails as a right identity once B is nonzero off the diagonal
        assert_ne!(affine_cprod(&m, &lid, false).unwrap(), m);
        assert_eq!(affine_cprod(&m, &lid, true).unwrap(), m);
    }
}
