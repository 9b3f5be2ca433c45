//! Systems written as constructs, and their degree matrices.
//!
//! A system of the first kind is 0 = CProd_Σ(A, x) with A[i,j] = aᵢⱼz − bᵢ/n;
//! the second kind is 1 = CProd_Π(A, x) with A[i,j] = z^{eᵢⱼ}·bᵢ^{−1/n}; the
//! third kind uses A[i,j] = aᵢⱼ^z·bᵢ^{−1/n}. The variable construct holds
//! the constant functions xⱼ, so each product entry is the row's residual
//! expression.

use construct_core::funcexpr::{cprod_functional, principal_pow, Combine, FuncExpr, Side};
use construct_core::json::rational_to_f64;
use construct_core::Hypermatrix;
use num::complex::Complex64;
use num::{BigRational, Zero};

use crate::error::{Result, SolveError};
use crate::exponent::{Type2System, Type3System};
use crate::linear::{solve_type1, Elimination, Type1System};

/// Scalars that embed in ℂ.
pub trait ToComplex {
    fn to_c64(&self) -> Complex64;
}

impl ToComplex for BigRational {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl ToComplex for f64 {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl ToComplex for Complex64 {
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

fn root_factor(b: Complex64, n: usize) -> Result<Complex64> {
    Ok(principal_pow(b, Complex64::new(-1.0 / n as f64, 0.0))?)
}

pub fn type1_construct<T: ToComplex>(sys: &Type1System<T>) -> Hypermatrix<FuncExpr> {
    let n = sys.a[0].len();
    let rows = sys
        .a
        .iter()
        .zip(&sys.b)
        .map(|(r, b)| r.iter().map(|a| FuncExpr::affine(a.to_c64(), -b.to_c64() / n as f64)).collect())
        .collect();
    Hypermatrix::from_rows(rows).expect("validated shape")
}

pub fn type2_construct(sys: &Type2System) -> Result<Hypermatrix<FuncExpr>> {
    let n = sys.cols();
    let mut rows = Vec::new();
    for (r, b) in sys.e.iter().zip(&sys.b) {
        let k = root_factor(*b, n)?;
        rows.push(r.iter().map(|e| FuncExpr::scale_c(k, FuncExpr::pow(FuncExpr::z(), FuncExpr::c(rational_to_f64(e))))).collect());
    }
    Ok(Hypermatrix::from_rows(rows)?)
}

pub fn type3_construct(sys: &Type3System) -> Result<Hypermatrix<FuncExpr>> {
    let n = sys.cols();
    let mut rows = Vec::new();
    for (r, b) in sys.a.iter().zip(&sys.b) {
        let k = root_factor(*b, n)?;
        rows.push(r.iter().map(|a| FuncExpr::scale_c(k, FuncExpr::pow(FuncExpr::cc(*a), FuncExpr::z()))).collect());
    }
    Ok(Hypermatrix::from_rows(rows)?)
}

/// The n×1 construct of constant functions xⱼ.
pub fn variable_construct(x: &[Complex64]) -> Hypermatrix<FuncExpr> {
    Hypermatrix::from_rows(x.iter().map(|v| vec![FuncExpr::cc(*v)]).collect()).expect("nonempty")
}

/// Row i combines A[i,j](xⱼ) over j. This is CProd(A, x) under plain
/// substitution; the functional product treats a zero constant xⱼ as
/// absorbing, which would drop the −bᵢ/n term.
pub fn construct_residual(a: &Hypermatrix<FuncExpr>, x: &[Complex64], comb: Combine) -> Result<Vec<Complex64>> {
    let (m, n) = (a.dims()[0], a.dims()[1]);
    if x.len() != n {
        return Err(SolveError::Shape(format!("{n} columns but {} unknowns", x.len())));
    }
    (0..m)
        .map(|i| {
            let terms = (0..n).map(|j| a.get(&[i, j]).eval(x[j]));
            Ok(match comb {
                Combine::Sum => terms.sum::<std::result::Result<Complex64, _>>()?,
                Combine::Product => terms.product::<std::result::Result<Complex64, _>>()?,
            })
        })
        .collect()
}

/// The symbolic product CProd(A, x) with the functional composer.
pub fn construct_product(a: &Hypermatrix<FuncExpr>, x: &[Complex64], comb: Combine) -> Result<Hypermatrix<FuncExpr>> {
    Ok(cprod_functional(a, &variable_construct(x), comb, Side::Primal)?)
}

/// The construct of a completed elimination of the first kind: rows of the
/// RREF as coefficients of z, the reduced right side as constants.
pub fn type1_rref_construct<T: ToComplex>(e: &Elimination<T>) -> Hypermatrix<FuncExpr> {
    let n = e.rref[0].len();
    let rows = e
        .rref
        .iter()
        .zip(&e.rhs)
        .map(|(r, d)| r.iter().map(|a| FuncExpr::affine(a.to_c64(), -d.to_c64() / n as f64)).collect())
        .collect();
    Hypermatrix::from_rows(rows).expect("nonempty")
}

/// Exact RREF of a rational exponent (or log-coefficient) matrix.
pub fn exponent_rref(e: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let zero = vec![BigRational::zero(); e.len()];
    Ok(solve_type1(&Type1System::new(e.to_vec(), zero)?)?.rref)
}

/// z^{Rᵢⱼ}·dᵢ^{−1/n} from the RREF R of the exponent matrix and the reduced constants d.
pub fn type2_rref_construct(sys: &Type2System, d: &[Complex64]) -> Result<Hypermatrix<FuncExpr>> {
    let r = exponent_rref(&sys.e)?;
    Type2System::new(r, d.to_vec()).and_then(|s| type2_construct(&s))
}

/// e^{Rᵢⱼz}·dᵢ^{−1/n} where R is the RREF of the log-base matrix.
pub fn type3_rref_construct(elim: &Elimination<Complex64>, d: &[Complex64]) -> Result<Hypermatrix<FuncExpr>> {
    let n = elim.rref[0].len();
    let mut rows = Vec::new();
    for (r, di) in elim.rref.iter().zip(d) {
        let k = root_factor(*di, n)?;
        rows.push(r.iter().map(|v| FuncExpr::scale_c(k, FuncExpr::exp(FuncExpr::scale_c(*v, FuncExpr::z())))).collect());
    }
    Ok(Hypermatrix::from_rows(rows)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMatrix(pub Vec<Vec<i64>>);

/// Degree in z of one construct entry. Powers z^e count e (integers only),
/// bases a^z and e^{kz} count 1 unless they are constant in z.
pub fn entry_degree(f: &FuncExpr) -> Option<i64> {
    const EPS: f64 = 1e-12;
    match f {
        FuncExpr::Scale(k, g) if k.norm() != 0.0 => entry_degree(g),
        FuncExpr::Pow(base, e) if matches!(**base, FuncExpr::Z) => match **e {
            FuncExpr::Const(c) if c.im == 0.0 && c.re.fract() == 0.0 => Some(c.re as i64),
            _ => None,
        },
        FuncExpr::Pow(base, e) if matches!(**e, FuncExpr::Z) => match **base {
            FuncExpr::Const(a) => Some(i64::from((a - 1.0).norm() > EPS)),
            _ => None,
        },
        FuncExpr::Exp(g) => match &**g {
            FuncExpr::Z => Some(1),
            FuncExpr::Scale(k, h) if matches!(**h, FuncExpr::Z) => Some(i64::from(k.norm() > EPS)),
            _ => None,
        },
        _ => f.poly_coeffs().map(|c| {
            let top = c.iter().rposition(|v| v.norm() > EPS).unwrap_or(0);
            top as i64
        }),
    }
}

pub fn degree_matrix(a: &Hypermatrix<FuncExpr>) -> Result<DegreeMatrix> {
    if a.dims().len() != 2 {
        return Err(SolveError::Shape(format!("degree matrix needs a matrix, got {}", a.shape())));
    }
    let (m, n) = (a.dims()[0], a.dims()[1]);
    let mut out = vec![vec![0; n]; m];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, d) in row.iter_mut().enumerate() {
            let f = a.get(&[i, j]);
            *d = entry_degree(f).ok_or_else(|| SolveError::Degree { row: i, col: j, expr: f.to_string() })?;
        }
    }
    Ok(DegreeMatrix(out))
}

impl DegreeMatrix {
    fn leads(&self) -> Vec<Option<usize>> {
        self.0.iter().map(|r| r.iter().position(|&v| v != 0)).collect()
    }

    /// Leading entries move strictly right and zero rows sit at the bottom.
    pub fn is_ref(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for lead in self.leads() {
            match lead {
                None => seen_zero = true,
                Some(_) if seen_zero => return false,
                Some(c) => {
                    if last.is_some_and(|l| c <= l) {
                        return false;
                    }
                    last = Some(c);
                }
            }
        }
        true
    }

    /// REF with unit leading entries that are alone in their columns.
    pub fn is_rref(&self) -> bool {
        self.is_ref()
            && self.leads().iter().enumerate().all(|(i, lead)| match lead {
                None => true,
                Some(c) => self.0[i][*c] == 1 && self.0.iter().enumerate().all(|(k, r)| k == i || r[*c] == 0),
            })
    }
}

pub fn is_ref(d: &DegreeMatrix) -> bool {
    d.is_ref()
}

pub fn is_rref(d: &DegreeMatrix) -> bool {
    d.is_rref()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::solve_type3;

    fn c(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn first_kind_rows_are_linear_residuals() {
        let sys = Type1System::new(vec![vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]], vec![7.0, 8.0]).unwrap();
        let x = [c(1.0), c(-1.0), c(2.0)];
        let r = construct_residual(&type1_construct(&sys), &x, Combine::Sum).unwrap();
        assert!((r[0] - c(1.0 - 2.0 + 6.0 - 7.0)).norm() < 1e-14);
        assert!((r[1] - c(4.0 - 5.0 + 12.0 - 8.0)).norm() < 1e-14);
    }

    #[test]
    fn second_and_third_kind_rows_are_monomial_ratios() {
        let e = Type2System::new(vec![vec![q(2), q(1)], vec![q(0), q(3)]], vec![c(3.0), c(5.0)]).unwrap();
        let x = [c(1.5), c(0.7)];
        let r = construct_residual(&type2_construct(&e).unwrap(), &x, Combine::Product).unwrap();
        assert!((r[0] - c(1.5f64.powi(2) * 0.7 / 3.0)).norm() < 1e-14);
        assert!((r[1] - c(0.7f64.powi(3) / 5.0)).norm() < 1e-14);

        let t = Type3System::new(vec![vec![c(2.0), c(3.0)], vec![c(0.5), c(1.0)]], vec![c(3.0), c(5.0)]).unwrap();
        let r = construct_residual(&type3_construct(&t).unwrap(), &x, Combine::Product).unwrap();
        assert!((r[0] - c(2f64.powf(1.5) * 3f64.powf(0.7) / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn dense_first_kind_is_not_ref() {
        let sys = Type1System::new(vec![vec![1.0, 2.0], vec![3.0, 4.0]], vec![0.0, 0.0]).unwrap();
        let d = degree_matrix(&type1_construct(&sys)).unwrap();
        assert_eq!(d, DegreeMatrix(vec![vec![1, 1], vec![1, 1]]));
        assert!(!d.is_ref());
    }

    #[test]
    fn diagonal_z_is_rref() {
        let h = Hypermatrix::from_rows(vec![vec![FuncExpr::z(), FuncExpr::zero()], vec![FuncExpr::zero(), FuncExpr::z()]]).unwrap();
        assert!(degree_matrix(&h).unwrap().is_rref());
    }

    #[test]
    fn eliminated_second_kind_has_identity_degrees() {
        let sys = Type2System::new(vec![vec![q(2), q(1)], vec![q(1), q(3)]], vec![c(6.0), c(0.5)]).unwrap();
        let d = degree_matrix(&type2_rref_construct(&sys, &[c(1.0), c(2.0)]).unwrap()).unwrap();
        assert_eq!(d, DegreeMatrix(vec![vec![1, 0], vec![0, 1]]));
        assert!(d.is_rref());
    }

    #[test]
    fn eliminated_third_kind_is_rref() {
        let sys = Type3System::new(vec![vec![c(2.0), c(3.0)], vec![c(5.0), c(0.5)]], vec![c(6.0), c(0.5)]).unwrap();
        let s = solve_type3(&sys, &[0, 0]).unwrap();
        let d = degree_matrix(&type3_rref_construct(&s.elimination, &[c(1.0), c(1.0)]).unwrap()).unwrap();
        assert!(d.is_rref(), "{d:?}");
        // before elimination every base differs from 1
        assert!(!degree_matrix(&type3_construct(&sys).unwrap()).unwrap().is_ref());
    }

    #[test]
    fn staircase_definitions() {
        assert!(DegreeMatrix(vec![vec![1, 1, 0], vec![0, 0, 1]]).is_rref());
        assert!(DegreeMatrix(vec![vec![1, 1], vec![0, 0]]).is_rref());
        assert!(!DegreeMatrix(vec![vec![0, 0], vec![1, 0]]).is_ref());
        assert!(DegreeMatrix(vec![vec![2, 1], vec![0, 1]]).is_ref());
        assert!(!DegreeMatrix(vec![vec![2, 1], vec![0, 1]]).is_rref());
    }
}
