//! Systems of the second kind, Πⱼ xⱼ^{eᵢⱼ} = bᵢ, and of the third kind,
//! Πⱼ aᵢⱼ^{xⱼ} = bᵢ. Both become linear after taking logarithms; the
//! integer vector k selects the branch Log bᵢ + 2πi·kᵢ of each row.

use std::f64::consts::PI;

use construct_core::funcexpr::{principal_ln, principal_pow};
use num::complex::Complex64;
use num::BigRational;

use crate::error::{Result, SolveError};
use crate::linear::{solve_type1, Elimination, Type1System};

/// Relative substitution tolerance for log-linear solutions.
pub const LOG_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Type2System {
    pub e: Vec<Vec<BigRational>>,
    pub b: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Type3System {
    pub a: Vec<Vec<Complex64>>,
    pub b: Vec<Complex64>,
}

fn check_shape<T>(a: &[Vec<T>], b: &[Complex64]) -> Result<()> {
    let n = a.first().map_or(0, Vec::len);
    if a.is_empty() || n == 0 || a.iter().any(|r| r.len() != n) || b.len() != a.len() {
        return Err(SolveError::Shape(format!("{} rows, {} right-hand sides", a.len(), b.len())));
    }
    Ok(())
}

impl Type2System {
    pub fn new(e: Vec<Vec<BigRational>>, b: Vec<Complex64>) -> Result<Self> {
        check_shape(&e, &b)?;
        Ok(Type2System { e, b })
    }

    pub fn cols(&self) -> usize {
        self.e[0].len()
    }

    pub fn e_f64(&self) -> Vec<Vec<f64>> {
        self.e.iter().map(|r| r.iter().map(construct_core::json::rational_to_f64).collect()).collect()
    }

    /// maxᵢ |Πⱼ xⱼ^{eᵢⱼ}/bᵢ − 1| with principal powers.
    pub fn principal_residual(&self, x: &[Complex64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (row, bi) in self.e_f64().iter().zip(&self.b) {
            let mut p = Complex64::new(1.0, 0.0);
            for (e, xj) in row.iter().zip(x) {
                p *= principal_pow(*xj, Complex64::new(*e, 0.0))?;
            }
            worst = worst.max((p / bi - 1.0).norm());
        }
        Ok(worst)
    }
}

impl Type3System {
    pub fn new(a: Vec<Vec<Complex64>>, b: Vec<Complex64>) -> Result<Self> {
        check_shape(&a, &b)?;
        Ok(Type3System { a, b })
    }

    pub fn cols(&self) -> usize {
        self.a[0].len()
    }

    /// maxᵢ |Πⱼ aᵢⱼ^{xⱼ}/bᵢ − 1| with principal powers.
    pub fn principal_residual(&self, x: &[Complex64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (row, bi) in self.a.iter().zip(&self.b) {
            let mut p = Complex64::new(1.0, 0.0);
            for (a, xj) in row.iter().zip(x) {
                p *= principal_pow(*a, *xj)?;
            }
            worst = worst.max((p / bi - 1.0).norm());
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug)]
pub struct LogSolution {
    pub x: Vec<Complex64>,
    /// The linear unknowns: Log xⱼ on the chosen branch (type 2) or xⱼ itself (type 3).
    pub linear: Vec<Complex64>,
    /// maxᵢ |exp(row·linear − Log bᵢ) − 1|; the branch-consistent substitution.
    pub residual: f64,
    pub elimination: Elimination<Complex64>,
}

/// exp(r·(Log w + 2πik)): the power of w·e^{2πik} that remembers its branch.
pub fn branch_pow(w: Complex64, k: i64, r: Complex64) -> Result<Complex64> {
    Ok((r * (principal_ln(w)? + Complex64::new(0.0, 2.0 * PI * k as f64))).exp())
}

fn branch_rhs(b: &[Complex64], k: &[i64]) -> Result<Vec<Complex64>> {
    if !k.is_empty() && k.len() != b.len() {
        return Err(SolveError::Shape(format!("{} branch integers for {} rows", k.len(), b.len())));
    }
    b.iter()
        .enumerate()
        .map(|(i, bi)| Ok(principal_ln(*bi)? + Complex64::new(0.0, 2.0 * PI * k.get(i).copied().unwrap_or(0) as f64)))
        .collect()
}

fn solve_logs(coef: Vec<Vec<Complex64>>, rhs: Vec<Complex64>) -> Result<(Elimination<Complex64>, f64)> {
    let sys = Type1System::new(coef, rhs)?;
    let elim = solve_type1(&sys)?;
    let l = elim.solution.particular();
    let mut worst: f64 = 0.0;
    for (row, r) in sys.a.iter().zip(&sys.b) {
        let s: Complex64 = row.iter().zip(l).map(|(c, v)| c * v).sum();
        worst = worst.max(((s - r).exp() - 1.0).norm());
    }
    if worst > LOG_TOL {
        return Err(SolveError::Residual { residual: worst, tol: LOG_TOL });
    }
    Ok((elim, worst))
}

/// Solves E·L = Log b + 2πik and returns x = exp L. Rank-deficient systems
/// return the particular solution with every free Log xⱼ = 0.
pub fn solve_type2(sys: &Type2System, k: &[i64]) -> Result<LogSolution> {
    if let Some(row) = sys.b.iter().position(|b| b.norm() == 0.0) {
        return Err(SolveError::Branching { row, n: sys.cols() });
    }
    let coef = sys.e_f64().into_iter().map(|r| r.into_iter().map(|v| Complex64::new(v, 0.0)).collect()).collect();
    let (elimination, residual) = solve_logs(coef, branch_rhs(&sys.b, k)?)?;
    let linear = elimination.solution.particular().to_vec();
    let x = linear.iter().map(|l| l.exp()).collect();
    Ok(LogSolution { x, linear, residual, elimination })
}

/// Solves Σⱼ xⱼ·Log aᵢⱼ = Log bᵢ + 2πikᵢ.
pub fn solve_type3(sys: &Type3System, k: &[i64]) -> Result<LogSolution> {
    if let Some(row) = sys.b.iter().position(|b| b.norm() == 0.0) {
        return Err(SolveError::Unbounded { row });
    }
    let coef = sys
        .a
        .iter()
        .map(|r| r.iter().map(|a| principal_ln(*a).map_err(SolveError::from)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let (elimination, residual) = solve_logs(coef, branch_rhs(&sys.b, k)?)?;
    let x = elimination.solution.particular().to_vec();
    if elimination.rank() < sys.cols() {
        log::info!("base-exponent system has rank {} < {}; free unknowns set to 0", elimination.rank(), sys.cols());
    }
    Ok(LogSolution { x: x.clone(), linear: x, residual, elimination })
}

/// The written-out 2×2 elimination for either kind.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm2x2 {
    /// Values of the pivot-scaled unknowns (y₀, y₁) read off the RREF.
    pub d: [Complex64; 2],
    pub x: [Complex64; 2],
}

/// x₀^{a₀₀}x₁^{a₀₁} = b₀, x₀^{a₁₀}x₁^{a₁₁} = b₁.
///
/// R₀^{−a₁₀/a₀₀}·R₁ → R₁ leaves x₁^s with s = −a₁₀a₀₀⁻¹a₀₁ + a₁₁, then
/// R₁^{−a₀₁/s}·R₀ → R₀ isolates x₀^{a₀₀}. The scaled unknowns are
/// y₀ = x₀^{a₀₀} = d₀ and y₁ = x₁^s = d₁.
pub fn type2_closed_form(a: [[f64; 2]; 2], b: [Complex64; 2], k: [i64; 2]) -> Result<ClosedForm2x2> {
    let [[a00, a01], [a10, a11]] = a;
    if a00 == 0.0 {
        return Err(SolveError::Singular("a00 = 0".into()));
    }
    let s = a11 - a10 * a01 / a00;
    if s == 0.0 {
        return Err(SolveError::Singular("-a10 a00^-1 a01 + a11 = 0".into()));
    }
    let re = |v: f64| Complex64::new(v, 0.0);
    let d1 = principal_pow(branch_pow(b[0], k[0], re(1.0 / a00))?, re(-a10))? * b[1];
    let d0 = b[0] * branch_pow(d1, k[1], re(-a01 / s))?;
    let x = [branch_pow(d0, k[0], re(1.0 / a00))?, branch_pow(d1, k[1], re(1.0 / s))?];
    Ok(ClosedForm2x2 { d: [d0, d1], x })
}

/// a₀₀^{x₀}a₀₁^{x₁} = b₀, a₁₀^{x₀}a₁₁^{x₁} = b₁.
///
/// With r = ln a₁₀/ln a₀₀ and s = ln(a₀₁^{−r}a₁₁): d₁ = (b₀e^{2πik₀})^{−r}b₁,
/// d₀ = (d₁e^{2πik₁})^{−ln a₀₁/s}·b₀, and e^{y₀} = d₀, e^{y₁} = d₁ where
/// y₀ = x₀ ln a₀₀, y₁ = x₁ s.
pub fn type3_closed_form(a: [[Complex64; 2]; 2], b: [Complex64; 2], k: [i64; 2]) -> Result<ClosedForm2x2> {
    let [[a00, a01], [a10, a11]] = a;
    let l00 = principal_ln(a00)?;
    if l00.norm() == 0.0 {
        return Err(SolveError::Singular("ln a00 = 0".into()));
    }
    let r = principal_ln(a10)? / l00;
    let s = principal_ln(principal_pow(a01, -r)? * a11)?;
    if s.norm() == 0.0 {
        return Err(SolveError::Singular("ln(a01^-r a11) = 0".into()));
    }
    let d1 = branch_pow(b[0], k[0], -r)? * b[1];
    let d0 = branch_pow(d1, k[1], -principal_ln(a01)? / s)? * b[0];
    let two_pi_i = |k: i64| Complex64::new(0.0, 2.0 * PI * k as f64);
    let y0 = principal_ln(d0)? + two_pi_i(k[0]);
    let y1 = principal_ln(d1)? + two_pi_i(k[1]);
    Ok(ClosedForm2x2 { d: [d0, d1], x: [y0 / l00, y1 / s] })
}

/// Least-squares in the logarithms: minimizes Σᵢ |Σⱼ eᵢⱼ Log xⱼ − Log bᵢ|².
pub fn log_least_squares_type2(sys: &Type2System) -> Result<Vec<Complex64>> {
    let e = sys.e_f64();
    let m = nalgebra::DMatrix::from_fn(e.len(), sys.cols(), |i, j| Complex64::new(e[i][j], 0.0));
    let rhs = branch_rhs(&sys.b, &[])?;
    let l = crate::lsq::least_squares(&m, &nalgebra::DVector::from_vec(rhs))?;
    Ok(l.iter().map(|v| v.exp()).collect())
}

/// Least-squares for the third kind: minimizes Σᵢ |Σⱼ xⱼ Log aᵢⱼ − Log bᵢ|².
pub fn log_least_squares_type3(sys: &Type3System) -> Result<Vec<Complex64>> {
    let mut logs = Vec::new();
    for r in &sys.a {
        for a in r {
            logs.push(principal_ln(*a)?);
        }
    }
    let m = nalgebra::DMatrix::from_row_slice(sys.a.len(), sys.cols(), &logs);
    let rhs = branch_rhs(&sys.b, &[])?;
    Ok(crate::lsq::least_squares(&m, &nalgebra::DVector::from_vec(rhs))?.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn identity_exponents_return_b() {
        let sys = Type2System::new(vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![c(5.0), c(7.0)]).unwrap();
        let s = solve_type2(&sys, &[0, 0]).unwrap();
        assert!((s.x[0] - 5.0).norm() < 1e-12 && (s.x[1] - 7.0).norm() < 1e-12);
    }

    #[test]
    fn sum_difference_exponents() {
        // x₀x₁ = 4, x₀/x₁ = 1
        let sys = Type2System::new(vec![vec![q(1), q(1)], vec![q(1), q(-1)]], vec![c(4.0), c(1.0)]).unwrap();
        let s = solve_type2(&sys, &[0, 0]).unwrap();
        assert!((s.x[0] - 2.0).norm() < 1e-12 && (s.x[1] - 2.0).norm() < 1e-12);
        assert!(sys.principal_residual(&s.x).unwrap() < 1e-12);
    }

    #[test]
    fn zero_right_side_branches() {
        let sys = Type2System::new(vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![c(0.0), c(3.0)]).unwrap();
        let err = solve_type2(&sys, &[]).unwrap_err();
        assert!(err.to_string().contains("branches combinatorially"), "{err}");
    }

    #[test]
    fn branch_integer_moves_to_another_sheet() {
        // x² = 4 on sheet k = 1: Log x = (ln 4 + 2πi)/2, so x = −2
        let sys = Type2System::new(vec![vec![q(2)]], vec![c(4.0)]).unwrap();
        let s = solve_type2(&sys, &[1]).unwrap();
        assert!((s.x[0] + 2.0).norm() < 1e-12);
    }

    #[test]
    fn base_exponent_example() {
        let sys = Type3System::new(vec![vec![c(2.0), c(1.0)], vec![c(1.0), c(2.0)]], vec![c(8.0), c(4.0)]).unwrap();
        let s = solve_type3(&sys, &[0, 0]).unwrap();
        assert!((s.x[0] - 3.0).norm() < 1e-12 && (s.x[1] - 2.0).norm() < 1e-12);
    }

    #[test]
    fn equal_bases_with_clashing_targets_are_inconsistent() {
        let sys = Type3System::new(vec![vec![c(2.0), c(2.0)], vec![c(2.0), c(2.0)]], vec![c(8.0), c(4.0)]).unwrap();
        assert!(matches!(solve_type3(&sys, &[0, 0]), Err(SolveError::Inconsistent { .. })));
    }

    #[test]
    fn zero_target_is_unbounded() {
        let sys = Type3System::new(vec![vec![c(2.0)]], vec![c(0.0)]).unwrap();
        assert!(matches!(solve_type3(&sys, &[]), Err(SolveError::Unbounded { row: 0 })));
    }

    #[test]
    fn closed_forms_agree_with_log_solve() {
        let a = [[2.0, 1.0], [1.0, 3.0]];
        let b = [c(6.0), c(0.5)];
        let cf = type2_closed_form(a, b, [0, 0]).unwrap();
        let sys = Type2System::new(vec![vec![q(2), q(1)], vec![q(1), q(3)]], b.to_vec()).unwrap();
        let s = solve_type2(&sys, &[0, 0]).unwrap();
        for j in 0..2 {
            assert!((cf.x[j] - s.x[j]).norm() < 1e-12);
        }

        let a3 = [[c(2.0), c(3.0)], [c(5.0), c(0.5)]];
        let cf = type3_closed_form(a3, b, [0, 0]).unwrap();
        let sys = Type3System::new(a3.iter().map(|r| r.to_vec()).collect(), b.to_vec()).unwrap();
        let s = solve_type3(&sys, &[0, 0]).unwrap();
        for j in 0..2 {
            assert!((cf.x[j] - s.x[j]).norm() < 1e-12, "{:?} vs {:?}", cf.x, s.x);
        }
    }
}
