//! Sylvester's equation a·x + x·b = c.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Result, SolveError};

/// Relative gap below which λ(a) + μ(b) counts as zero.
pub const SPECTRAL_GAP_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SylvesterSolution {
    /// From an LU solve of the vectorized operator.
    pub x: DMatrix<f64>,
    /// Entrywise det(mₖ)/det(M), mₖ being M with column k replaced by vec(c).
    pub cramer: DMatrix<f64>,
    /// max |x − cramer|.
    pub agreement: f64,
    /// ‖a·x + x·b − c‖_F.
    pub residual: f64,
}

/// I_q ⊗ a + bᵀ ⊗ I_p, acting on column-major vec(x) with x[s,t] at s + p·t.
pub fn sylvester_operator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (p, q) = (a.nrows(), b.nrows());
    DMatrix::identity(q, q).kronecker(a) + b.transpose().kronecker(&DMatrix::identity(p, p))
}

/// Unique solvability fails exactly when a and −b share an eigenvalue,
/// i.e. when the resultant of det(x − a) and det(x + b) vanishes.
pub fn check_spectra(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    let la = a.complex_eigenvalues();
    let lb = b.complex_eigenvalues();
    let scale = la.iter().chain(lb.iter()).map(|v| v.norm()).fold(1.0, f64::max);
    for l in la.iter() {
        for m in lb.iter() {
            let gap: Complex<f64> = l + m;
            if gap.norm() <= SPECTRAL_GAP_TOL * scale {
                return Err(SolveError::Singular(format!(
                    "no unique solution: eigenvalue {l} of a is minus the eigenvalue {m} of b"
                )));
            }
        }
    }
    Ok(())
}

pub fn solve_sylvester(a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>) -> Result<SylvesterSolution> {
    let (p, q) = (a.nrows(), b.nrows());
    if !a.is_square() || !b.is_square() || c.shape() != (p, q) {
        return Err(SolveError::Shape(format!(
            "a is {:?}, b is {:?}, c is {:?}",
            a.shape(),
            b.shape(),
            c.shape()
        )));
    }
    check_spectra(a, b)?;
    let m = sylvester_operator(a, b);
    let rhs = DVector::from_column_slice(c.as_slice());
    let v = m.clone().lu().solve(&rhs).ok_or_else(|| SolveError::Singular("vectorized operator is singular".into()))?;
    let x = DMatrix::from_column_slice(p, q, v.as_slice());

    let det = m.determinant();
    let cramer = DMatrix::from_fn(p, q, |s, t| {
        let k = s + p * t;
        let mut mk = m.clone();
        mk.set_column(k, &rhs);
        mk.determinant() / det
    });
    let agreement = (&x - &cramer).abs().max();
    let residual = (a * &x + &x * b - c).norm();
    Ok(SylvesterSolution { x, cramer, agreement, residual })
}
