//! Least squares by completing the square over the spectrum of A*A.

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};

use crate::error::{Result, SolveError};

/// Relative cutoff for singular values and eigenvalues treated as zero.
const RANK_TOL: f64 = 1e-12;

/// x = Q*·(√Λ)⁺·√Λ·Q·A⁺·b where A*A = (√Λ Q)*(√Λ Q).
///
/// This is the minimum-norm least-squares solution; rank-deficient A is fine.
pub fn least_squares<T>(a: &DMatrix<T>, b: &DVector<T>) -> Result<DVector<T>>
where
    T: ComplexField<RealField = f64>,
{
    if a.nrows() != b.len() {
        return Err(SolveError::Shape(format!("{} rows but {} right-hand sides", a.nrows(), b.len())));
    }
    let scale = a.iter().map(|v| v.clone().modulus()).fold(1.0, f64::max);
    let pinv = a.clone().pseudo_inverse(RANK_TOL * scale).map_err(|e| SolveError::Singular(e.to_string()))?;
    let gram = a.adjoint() * a;
    let eig = SymmetricEigen::new(gram);
    let q = eig.eigenvectors.adjoint();
    let lmax = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let sqrt_l: Vec<f64> = eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    let cut = (RANK_TOL * lmax.max(1.0)).sqrt();
    let v = DVector::from_fn(sqrt_l.len(), |i, _| T::from_real(sqrt_l[i])).component_mul(&(&q * (&pinv * b)));
    let w = DVector::from_fn(sqrt_l.len(), |i, _| {
        if sqrt_l[i] > cut {
            v[i].clone() * T::from_real(1.0 / sqrt_l[i])
        } else {
            T::zero()
        }
    });
    Ok(q.adjoint() * w)
}

pub fn least_squares_type1(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    least_squares(a, b)
}
