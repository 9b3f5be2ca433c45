//! Mixed 2×2 systems over a matrix algebra,
//!
//! ```text
//! a₀₀ x₀ b₀₀ + a₀₁ x₁ b₁₀ = c₀
//! a₁₀ x₀ b₀₁ + a₁₁ x₁ b₁₁ = c₁
//! ```
//!
//! solved through the free quantity f = a₁₀a₀₀⁻¹(c₀ − a₀₁x₁b₁₀)b₀₀⁻¹b₀₁,
//! which satisfies f = F(f) for an affine map F iterated from f₀ = 0.

use nalgebra::DMatrix;

use crate::error::{Result, SolveError};

#[derive(Clone, Debug)]
pub struct MixedSystem {
    /// a[i][j] multiplies unknown j on the left in equation i.
    pub a: [[DMatrix<f64>; 2]; 2],
    /// b[j][i] multiplies unknown j on the right in equation i.
    pub b: [[DMatrix<f64>; 2]; 2],
    pub c: [DMatrix<f64>; 2],
}

#[derive(Clone, Debug)]
pub struct MixedSolution {
    pub x: [DMatrix<f64>; 2],
    pub f: DMatrix<f64>,
    pub iterations: usize,
    pub residual: f64,
}

fn inv(m: &DMatrix<f64>, name: &str) -> Result<DMatrix<f64>> {
    m.clone().try_inverse().ok_or_else(|| SolveError::Singular(format!("{name} is not invertible")))
}

impl MixedSystem {
    /// Largest Frobenius norm of the two equation defects.
    pub fn residual(&self, x: &[DMatrix<f64>; 2]) -> f64 {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let r0 = &a[0][0] * &x[0] * &b[0][0] + &a[0][1] * &x[1] * &b[1][0] - &c[0];
        let r1 = &a[1][0] * &x[0] * &b[0][1] + &a[1][1] * &x[1] * &b[1][1] - &c[1];
        r0.norm().max(r1.norm())
    }

    /// Back substitution from f: x₁ = a₁₁⁻¹(c₁ − f)b₁₁⁻¹, x₀ = a₀₀⁻¹(c₀ − a₀₁x₁b₁₀)b₀₀⁻¹.
    pub fn back_substitute(&self, f: &DMatrix<f64>) -> Result<[DMatrix<f64>; 2]> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let x1 = inv(&a[1][1], "a11")? * (&c[1] - f) * inv(&b[1][1], "b11")?;
        let x0 = inv(&a[0][0], "a00")? * (&c[0] - &a[0][1] * &x1 * &b[1][0]) * inv(&b[0][0], "b00")?;
        Ok([x0, x1])
    }
}

/// Iterates f_{k+1} = P c₀ Q − P a₀₁ a₁₁⁻¹ (c₁ − f_k) b₁₁⁻¹ b₁₀ Q with
/// P = a₁₀a₀₀⁻¹ and Q = b₀₀⁻¹b₀₁, starting from f₀ = 0.
pub fn mixed_fixed_point(sys: &MixedSystem, t_max: usize, tol: f64) -> Result<MixedSolution> {
    let (a, b, c) = (&sys.a, &sys.b, &sys.c);
    let p = &a[1][0] * inv(&a[0][0], "a00")?;
    let q = inv(&b[0][0], "b00")? * &b[0][1];
    let left = &p * &a[0][1] * inv(&a[1][1], "a11")?;
    let right = inv(&b[1][1], "b11")? * &b[1][0] * &q;
    let constant = &p * &c[0] * &q;

    let mut f = DMatrix::zeros(c[1].nrows(), c[1].ncols());
    let (mut prev_step, mut step) = (f64::INFINITY, f64::INFINITY);
    for t in 1..=t_max {
        let next = &constant - &left * (&c[1] - &f) * &right;
        prev_step = step;
        step = (&next - &f).norm();
        f = next;
        if !step.is_finite() || step > 1e12 * (1.0 + constant.norm()) {
            return Err(SolveError::Divergence { iterations: t, last_step: step, growth: step / prev_step });
        }
        if step < tol {
            let x = sys.back_substitute(&f)?;
            let residual = sys.residual(&x);
            return Ok(MixedSolution { x, f, iterations: t, residual });
        }
    }
    Err(SolveError::Divergence { iterations: t_max, last_step: step, growth: step / prev_step })
}
