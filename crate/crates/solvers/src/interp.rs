//! Interpolation: Lagrange over ℚ, its multiplicative variant, the two-point
//! vector construction, and the finite-field reduction to one variable.

use num::complex::Complex64;
use num::{BigRational, One, Zero};

use construct_core::funcexpr::{principal_ln, principal_pow};

use crate::error::{Result, SolveError};

/// Coefficients c₀, c₁, … (constant first) with trailing zeros removed.
pub type Coeffs = Vec<BigRational>;

pub fn poly_eval(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, ci| acc * x + ci)
}

fn trim(mut c: Coeffs) -> Coeffs {
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

fn check_distinct<T: PartialEq + std::fmt::Display>(nodes: impl Iterator<Item = T> + Clone) -> Result<()> {
    let v: Vec<T> = nodes.collect();
    for (i, a) in v.iter().enumerate() {
        if v[..i].contains(a) {
            return Err(SolveError::DuplicateNode(a.to_string()));
        }
    }
    Ok(())
}

/// The interpolant of minimal degree through (aᵢ, bᵢ).
pub fn lagrange(points: &[(BigRational, BigRational)]) -> Result<Coeffs> {
    if points.is_empty() {
        return Err(SolveError::Shape("no interpolation points".into()));
    }
    check_distinct(points.iter().map(|p| &p.0))?;
    let mut out = vec![BigRational::zero(); points.len()];
    for (i, (ai, bi)) in points.iter().enumerate() {
        // Πⱼ≠ᵢ (x − aⱼ)/(aᵢ − aⱼ), built up one linear factor at a time
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (aj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * aj;
            }
            basis = next;
            denom *= ai - aj;
        }
        let scale = bi / denom;
        for (o, c) in out.iter_mut().zip(&basis) {
            *o += c * &scale;
        }
    }
    Ok(trim(out))
}

/// f(x) = Πᵢ bᵢ^{Lᵢ(x)} with Lᵢ the Lagrange basis and principal powers.
pub fn lagrange_multiplicative(points: &[(Complex64, Complex64)], x: Complex64) -> Result<Complex64> {
    if points.is_empty() {
        return Err(SolveError::Shape("no interpolation points".into()));
    }
    check_distinct(points.iter().map(|p| p.0))?;
    let mut f = Complex64::one();
    for (i, (ai, bi)) in points.iter().enumerate() {
        if bi.norm() == 0.0 {
            return Err(SolveError::Domain(format!("value b{i} = 0 has no powers")));
        }
        let li: Complex64 = points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (aj, _))| (x - aj) / (ai - aj))
            .product();
        f *= principal_pow(*bi, li)?;
    }
    Ok(f)
}

/// The two-point construction
///
/// ```text
/// F(x) = b₁·(x − A[0,:])·w(γ) + b₀·(x − A[1,:])·(−w(γ)),
/// w(γ) = ((½+γ)/(a₁₀−a₀₀), (½−γ)/(a₁₁−a₀₁)),
/// ```
///
/// with γ fixed by F(0) = 0. F(A[i,:]) = bᵢ for every γ.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    pub gamma: BigRational,
    /// f(x) = c₀x₀ + c₁x₁.
    pub coeffs: [BigRational; 2],
}

type Weights<T> = ([T; 2], [T; 2]);

/// w(γ) = u + γ·v.
fn weights<T>(a: &[[T; 2]; 2]) -> Result<Weights<T>>
where
    T: Clone + Zero + One + PartialEq + std::ops::Sub<Output = T> + std::ops::Div<Output = T> + std::ops::Neg<Output = T>,
{
    let d0 = a[1][0].clone() - a[0][0].clone();
    let d1 = a[1][1].clone() - a[0][1].clone();
    if d0.is_zero() || d1.is_zero() {
        return Err(SolveError::Singular("nodes share a coordinate (a10 = a00 or a11 = a01)".into()));
    }
    let half = T::one() / (T::one() + T::one());
    let u = [half.clone() / d0.clone(), half / d1.clone()];
    let v = [T::one() / d0, -(T::one() / d1)];
    Ok((u, v))
}

pub fn linear_functional_2x2(a: [[BigRational; 2]; 2], b: [BigRational; 2]) -> Result<LinearFunctional> {
    let (u, v) = weights(&a)?;
    // F(0) = Σₜ (uₜ + γvₜ)(b₀a₁ₜ − b₁a₀ₜ)
    let g: Vec<BigRational> = (0..2).map(|t| &b[0] * &a[1][t] - &b[1] * &a[0][t]).collect();
    let p: BigRational = (0..2).map(|t| &u[t] * &g[t]).sum();
    let q: BigRational = (0..2).map(|t| &v[t] * &g[t]).sum();
    let gamma = if q.is_zero() {
        if !p.is_zero() {
            return Err(SolveError::Singular("F(0) does not depend on gamma (b0 = b1)".into()));
        }
        BigRational::zero()
    } else {
        -p / q
    };
    let db = &b[1] - &b[0];
    let coeffs = [(&u[0] + &gamma * &v[0]) * &db, (&u[1] + &gamma * &v[1]) * &db];
    Ok(LinearFunctional { gamma, coeffs })
}

impl LinearFunctional {
    pub fn eval(&self, x: [&BigRational; 2]) -> BigRational {
        &self.coeffs[0] * x[0] + &self.coeffs[1] * x[1]
    }
}

/// −((a₁₁b₀ − a₀₁b₁)x₀ − (a₁₀b₀ − a₀₀b₁)x₁)/(a₀₁a₁₀ − a₀₀a₁₁), as a coefficient pair.
pub fn expected_functional(a: &[[BigRational; 2]; 2], b: &[BigRational; 2]) -> [BigRational; 2] {
    let den = &a[0][1] * &a[1][0] - &a[0][0] * &a[1][1];
    let c0 = -(&a[1][1] * &b[0] - &a[0][1] * &b[1]) / &den;
    let c1 = (&a[1][0] * &b[0] - &a[0][0] * &b[1]) / &den;
    [c0, c1]
}

/// f(x) = b₁^{(x − A[0,:])·w(γ)}·b₀^{−(x − A[1,:])·w(γ)} with γ fixed by f(0) = 1
/// on the principal branch of each Log bᵢ.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativeFunctional {
    pub gamma: Complex64,
    a: [[f64; 2]; 2],
    b: [Complex64; 2],
    u: [f64; 2],
    v: [f64; 2],
    /// maxᵢ |f(A[i,:]) − bᵢ|.
    pub node_residual: f64,
}

impl MultiplicativeFunctional {
    pub fn eval(&self, x: [Complex64; 2]) -> Result<Complex64> {
        let w = |t: usize| self.u[t] + self.gamma * self.v[t];
        let e1: Complex64 = (0..2).map(|t| (x[t] - self.a[0][t]) * w(t)).sum();
        let e0: Complex64 = (0..2).map(|t| -(x[t] - self.a[1][t]) * w(t)).sum();
        // one exponential of the summed logs: the two powers separately overflow when γ is large
        Ok((e1 * principal_ln(self.b[1])? + e0 * principal_ln(self.b[0])?).exp())
    }
}

pub fn multiplicative_functional_2x2(a: [[f64; 2]; 2], b: [Complex64; 2]) -> Result<MultiplicativeFunctional> {
    if b.iter().any(|v| v.norm() == 0.0) {
        return Err(SolveError::Domain("values must be nonzero".into()));
    }
    let (u, v) = weights(&a)?;
    let (l0, l1) = (principal_ln(b[0])?, principal_ln(b[1])?);
    // Log f(0) = Σₜ (uₜ + γvₜ)(a₁ₜ Log b₀ − a₀ₜ Log b₁)
    let g: Vec<Complex64> = (0..2).map(|t| a[1][t] * l0 - a[0][t] * l1).collect();
    let p: Complex64 = (0..2).map(|t| u[t] * g[t]).sum();
    let q: Complex64 = (0..2).map(|t| v[t] * g[t]).sum();
    let gamma = if q.norm() <= 1e-300 {
        if p.norm() > 1e-12 {
            return Err(SolveError::Singular("no gamma makes f(0) = 1 (Log f(0) is independent of gamma)".into()));
        }
        Complex64::zero()
    } else {
        -p / q
    };
    let mut f = MultiplicativeFunctional { gamma, a, b, u, v, node_residual: 0.0 };
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        let node = [Complex64::new(a[i][0], 0.0), Complex64::new(a[i][1], 0.0)];
        worst = worst.max((f.eval(node)? - b[i]).norm());
    }
    f.node_residual = worst;
    Ok(f)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(SolveError::NotPrime(p))
    }
}

/// Σᵢ vᵢ·pⁱ.
pub fn gf_lex(v: &[u64], p: u64) -> Result<u64> {
    require_prime(p)?;
    let mut acc: u64 = 0;
    for &vi in v.iter().rev() {
        if vi >= p {
            return Err(SolveError::Domain(format!("{vi} is not a residue mod {p}")));
        }
        acc = acc.checked_mul(p).and_then(|a| a.checked_add(vi)).ok_or_else(|| SolveError::Domain("lex overflow".into()))?;
    }
    Ok(acc)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of [A | b] reduced mod p, and whether the system is consistent.
fn rank_mod_p(a: &[Vec<u64>], b: &[u64], p: u64) -> (usize, bool) {
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<u64>> = a.iter().zip(b).map(|(r, bi)| r.iter().chain([bi]).map(|v| v % p).collect()).collect();
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..=n {
                    rows[i][k] = (rows[i][k] + p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[n] == 0);
    (rank, consistent)
}

/// Number of x ∈ F_pⁿ with Ax = b: p^{dim null A} when consistent, else 0.
pub fn gf_solution_count(a: &[Vec<u64>], b: &[u64], p: u64) -> Result<u64> {
    require_prime(p)?;
    let n = a.first().map_or(0, Vec::len);
    if a.is_empty() || n == 0 || a.iter().any(|r| r.len() != n) || b.len() != a.len() {
        return Err(SolveError::Shape("matrix and right side do not match".into()));
    }
    let (rank, consistent) = rank_mod_p(a, b, p);
    if !consistent {
        return Ok(0);
    }
    p.checked_pow((n - rank) as u32).ok_or_else(|| SolveError::Domain("solution count overflows u64".into()))
}

/// A polynomial over F_q, constant coefficient first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfPoly {
    pub q: u64,
    pub coeffs: Vec<u64>,
}

impl GfPoly {
    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, c| (acc * (x % self.q) + c) % self.q)
    }
}

/// The smallest prime strictly greater than n.
pub fn next_prime(n: u64) -> u64 {
    (n + 1..).find(|&k| is_prime(k)).expect("primes are unbounded")
}

/// Interpolates g with g(lex v) = table[lex v] over F_q, q the smallest prime above pⁿ.
pub fn gf_univariate_reduction(table: &[u64], p: u64, n: u32) -> Result<GfPoly> {
    require_prime(p)?;
    let size = p.checked_pow(n).ok_or_else(|| SolveError::Domain("table too large".into()))?;
    if table.len() as u64 != size {
        return Err(SolveError::Shape(format!("table has {} entries, expected {size}", table.len())));
    }
    if let Some(bad) = table.iter().find(|&&v| v >= p) {
        return Err(SolveError::Domain(format!("{bad} is not a residue mod {p}")));
    }
    let q = next_prime(size);
    let mut out = vec![0u64; table.len()];
    for (i, &bi) in table.iter().enumerate() {
        if bi == 0 {
            continue;
        }
        let mut basis = vec![1u64];
        let mut denom = 1u64;
        for j in 0..size {
            if j == i as u64 {
                continue;
            }
            let mut next = vec![0u64; basis.len() + 1];
            for (k, &c) in basis.iter().enumerate() {
                next[k + 1] = (next[k + 1] + c) % q;
                next[k] = (next[k] + q - c * j % q) % q;
            }
            basis = next;
            denom = denom * ((i as u64 + q - j) % q) % q;
        }
        let scale = bi * inv_mod(denom, q) % q;
        for (o, c) in out.iter_mut().zip(&basis) {
            *o = (*o + c * scale) % q;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    Ok(GfPoly { q, coeffs: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn two_points_give_a_line() {
        assert_eq!(lagrange(&[(q(0), q(1)), (q(1), q(2))]).unwrap(), vec![q(1), q(1)]);
        assert_eq!(lagrange(&[(q(5), q(-3))]).unwrap(), vec![q(-3)]);
        assert!(matches!(lagrange(&[(q(1), q(1)), (q(1), q(2))]), Err(SolveError::DuplicateNode(_))));
    }

    #[test]
    fn multiplicative_reproduces_nodes() {
        let pts = [(Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0)), (Complex64::new(1.0, 0.0), Complex64::new(3.0, 0.0))];
        for (a, b) in pts {
            assert!((lagrange_multiplicative(&pts, a).unwrap() - b).norm() < 1e-14);
        }
        let zero = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))];
        assert!(lagrange_multiplicative(&zero, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn identity_nodes_give_b_as_coefficients() {
        let f = linear_functional_2x2([[q(1), q(0)], [q(0), q(1)]], [q(3), q(-5)]).unwrap();
        assert_eq!(f.coeffs, [q(3), q(-5)]);
    }

    #[test]
    fn equal_values_have_no_gamma() {
        assert!(linear_functional_2x2([[q(1), q(2)], [q(3), q(5)]], [q(4), q(4)]).is_err());
    }

    #[test]
    fn unit_values_give_the_unit_function() {
        let f = multiplicative_functional_2x2([[1.0, 2.0], [3.0, 5.0]], [Complex64::one(), Complex64::one()]).unwrap();
        assert!((f.eval([Complex64::new(0.3, 0.1), Complex64::new(-2.0, 0.0)]).unwrap() - 1.0).norm() < 1e-14);
    }

    #[test]
    fn lex_and_counts() {
        assert_eq!(gf_lex(&[1, 0, 1], 2).unwrap(), 5);
        assert_eq!(gf_solution_count(&[vec![0, 0], vec![0, 0]], &[0, 0], 2).unwrap(), 4);
        assert_eq!(gf_solution_count(&[vec![0, 0], vec![0, 0]], &[1, 0], 2).unwrap(), 0);
        assert!(matches!(gf_lex(&[1], 4), Err(SolveError::NotPrime(4))));
    }

    #[test]
    fn univariate_reduction_of_a_constant() {
        let g = gf_univariate_reduction(&[1, 1, 1, 1], 2, 2).unwrap();
        assert_eq!(g, GfPoly { q: 5, coeffs: vec![1] });
    }
}
