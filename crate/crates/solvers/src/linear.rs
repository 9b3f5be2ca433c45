//! Systems of the first kind: Σⱼ aᵢⱼ·xⱼ = bᵢ, by Gauss–Jordan elimination.
//!
//! Over a skew field the side on which coefficients multiply the unknowns
//! matters, so the row operations follow it: a left system combines rows as
//! α·Rᵢ + Rⱼ, a right system as Rᵢ·β + Rⱼ. Pivot scaling is the change of
//! variable yᵢ = pivot·xᵢ (resp. xᵢ·pivot).

use std::fmt;

use crate::error::{Result, SolveError};
use crate::ring::DivisionRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulSide {
    /// Coefficients multiply the unknowns on the left: aᵢⱼ·xⱼ.
    Left,
    /// Coefficients multiply the unknowns on the right: xⱼ·aᵢⱼ.
    Right,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Type1System<T> {
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
}

impl<T: DivisionRing> Type1System<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>) -> Result<Self> {
        let n = a.first().map_or(0, Vec::len);
        if a.is_empty() || n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(SolveError::Shape("coefficient matrix must be a nonempty rectangle".into()));
        }
        if b.len() != a.len() {
            return Err(SolveError::Shape(format!("{} rows but {} right-hand sides", a.len(), b.len())));
        }
        Ok(Type1System { a, b })
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a[0].len()
    }

    fn scale(&self) -> f64 {
        self.a.iter().flatten().chain(&self.b).map(DivisionRing::magnitude).fold(1.0, f64::max)
    }

    /// Largest |Σⱼ aᵢⱼxⱼ − bᵢ| over the rows.
    pub fn residual(&self, x: &[T], side: MulSide) -> f64 {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(row, bi)| {
                let lhs = row.iter().zip(x).fold(T::zero(), |acc, (a, x)| acc.add(&side_mul(side, a, x)));
                lhs.sub(bi).magnitude()
            })
            .fold(0.0, f64::max)
    }
}

/// a applied to x on the given side.
pub fn side_mul<T: DivisionRing>(side: MulSide, a: &T, x: &T) -> T {
    match side {
        MulSide::Left => a.mul(x),
        MulSide::Right => x.mul(a),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RowOp {
    Swap(usize, usize),
    /// Pivot normalization, realized as a change of variable.
    Scale { row: usize, factor: String, side: MulSide },
    /// Rᵈˢᵗ ← −factor·Rˢʳᶜ + Rᵈˢᵗ (factor on the right for right systems).
    Combine { src: usize, dst: usize, factor: String, side: MulSide },
}

impl fmt::Display for RowOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowOp::Swap(i, j) => write!(f, "R{i} <-> R{j}"),
            RowOp::Scale { row, factor, side: MulSide::Left } => write!(f, "({factor})^-1 R{row} -> R{row}"),
            RowOp::Scale { row, factor, side: MulSide::Right } => write!(f, "R{row} ({factor})^-1 -> R{row}"),
            RowOp::Combine { src, dst, factor, side: MulSide::Left } => write!(f, "-({factor}) R{src} + R{dst} -> R{dst}"),
            RowOp::Combine { src, dst, factor, side: MulSide::Right } => write!(f, "-R{src} ({factor}) + R{dst} -> R{dst}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    /// x = particular + Σ basis[k]·t_k for free parameters t_k.
    Parametric { particular: Vec<T>, basis: Vec<Vec<T>>, free: Vec<usize> },
}

impl<T: DivisionRing> Solution<T> {
    pub fn particular(&self) -> &[T] {
        match self {
            Solution::Unique(x) => x,
            Solution::Parametric { particular, .. } => particular,
        }
    }

    /// particular + Σ basis[k]·t[k]; the parameter sits on the far side of the coefficients.
    pub fn specialize(&self, t: &[T], side: MulSide) -> Vec<T> {
        match self {
            Solution::Unique(x) => x.clone(),
            Solution::Parametric { particular, basis, .. } => {
                let mut x = particular.clone();
                for (v, tk) in basis.iter().zip(t) {
                    for (xi, vi) in x.iter_mut().zip(v) {
                        // a·x with x = v·t keeps a·v·t, so t multiplies from the far side
                        let term = match side {
                            MulSide::Left => vi.mul(tk),
                            MulSide::Right => tk.mul(vi),
                        };
                        *xi = xi.add(&term);
                    }
                }
                x
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Elimination<T> {
    /// Reduced coefficient rows in elimination order.
    pub rref: Vec<Vec<T>>,
    pub rhs: Vec<T>,
    pub pivots: Vec<usize>,
    pub trace: Vec<RowOp>,
    pub solution: Solution<T>,
    pub residual: f64,
}

impl<T: DivisionRing> Elimination<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Solves a commutative system.
pub fn solve_type1<T: DivisionRing>(sys: &Type1System<T>) -> Result<Elimination<T>> {
    eliminate(sys, MulSide::Left)
}

/// Solves a left or right system over a division ring.
pub fn solve_type1_skew<T: DivisionRing>(sys: &Type1System<T>, side: MulSide) -> Result<Elimination<T>> {
    eliminate(sys, side)
}

fn eliminate<T: DivisionRing>(sys: &Type1System<T>, side: MulSide) -> Result<Elimination<T>> {
    let (m, n) = (sys.rows(), sys.cols());
    let scale = sys.scale();
    let mut rows: Vec<Vec<T>> = sys.a.iter().zip(&sys.b).map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect()).collect();
    let mut origin: Vec<usize> = (0..m).collect();
    let mut pivots = Vec::new();
    let mut trace = Vec::new();

    // forward phase: REF with unit pivots
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let best = (r..m)
            .filter(|&i| !rows[i][c].negligible(scale))
            .max_by(|&i, &j| rows[i][c].magnitude().total_cmp(&rows[j][c].magnitude()));
        let Some(p) = (if T::EXACT { (r..m).find(|&i| !rows[i][c].is_zero()) } else { best }) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            origin.swap(p, r);
            trace.push(RowOp::Swap(p, r));
        }
        let piv = rows[r][c].clone();
        let inv = piv.inv().ok_or_else(|| SolveError::Singular(format!("pivot {} has no inverse", piv.render())))?;
        trace.push(RowOp::Scale { row: r, factor: piv.render(), side });
        for e in rows[r].iter_mut() {
            *e = side_mul(side, &inv, e);
        }
        rows[r][c] = T::one();
        for i in r + 1..m {
            combine(&mut rows, r, i, c, side, &mut trace);
        }
        pivots.push(c);
        r += 1;
    }

    for (i, row) in rows.iter().enumerate().skip(pivots.len()) {
        if !row[n].negligible(scale) {
            return Err(SolveError::Inconsistent { row: origin[i], residue: row[n].render() });
        }
    }

    // backward phase: RREF
    for (k, &c) in pivots.iter().enumerate().rev() {
        for i in 0..k {
            combine(&mut rows, k, i, c, side, &mut trace);
        }
    }

    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut particular = vec![T::zero(); n];
    for (k, &c) in pivots.iter().enumerate() {
        particular[c] = rows[k][n].clone();
    }
    let solution = if free.is_empty() {
        Solution::Unique(particular)
    } else {
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); n];
                v[f] = T::one();
                for (k, &c) in pivots.iter().enumerate() {
                    v[c] = rows[k][f].neg();
                }
                v
            })
            .collect();
        Solution::Parametric { particular, basis, free }
    };

    let residual = sys.residual(solution.particular(), side);
    let tol = if T::EXACT { 0.0 } else { 1e-9 * scale };
    if residual > tol {
        return Err(SolveError::Residual { residual, tol });
    }
    let (rref, rhs) = rows
        .into_iter()
        .map(|mut r| {
            let b = r.pop().expect("augmented");
            (r, b)
        })
        .unzip();
    Ok(Elimination { rref, rhs, pivots, trace, solution, residual })
}

/// Clears column c of row dst using the unit pivot in row src.
fn combine<T: DivisionRing>(rows: &mut [Vec<T>], src: usize, dst: usize, c: usize, side: MulSide, trace: &mut Vec<RowOp>) {
    let f = rows[dst][c].clone();
    if f.is_zero() {
        return;
    }
    let pivot_row = rows[src].clone();
    for (e, p) in rows[dst].iter_mut().zip(&pivot_row) {
        *e = e.sub(&side_mul(side, &f, p));
    }
    rows[dst][c] = T::zero();
    trace.push(RowOp::Combine { src, dst, factor: f.render(), side });
}

/// The right-system 2×2 elimination written out:
/// x₀b₀₀ + x₁b₁₀ = c₀, x₀b₀₁ + x₁b₁₁ = c₁.
///
/// Returns (d, x) where d are the values of the scaled unknowns
/// y₀ = x₀b₀₀ and y₁ = x₁s with s = −b₁₀b₀₀⁻¹b₀₁ + b₁₁.
pub fn right_system_2x2<T: DivisionRing>(b: [[T; 2]; 2], c: [T; 2]) -> Result<([T; 2], [T; 2])> {
    let [[b00, b01], [b10, b11]] = b;
    let sing = |what: &str| SolveError::Singular(format!("{what} is not invertible"));
    let b00i = b00.inv().ok_or_else(|| sing("b00"))?;
    let s = b11.sub(&b10.mul(&b00i).mul(&b01));
    let si = s.inv().ok_or_else(|| sing("-b10 b00^-1 b01 + b11"))?;
    let d1 = c[1].sub(&c[0].mul(&b00i).mul(&b01));
    let d0 = c[0].sub(&d1.mul(&si.mul(&b10)));
    let x = [d0.mul(&b00i), d1.mul(&si)];
    Ok(([d0, d1], x))
}

/// The left-system 2×2 elimination: a₀₀x₀ + a₀₁x₁ = c₀, a₁₀x₀ + a₁₁x₁ = c₁.
pub fn left_system_2x2<T: DivisionRing>(a: [[T; 2]; 2], c: [T; 2]) -> Result<[T; 2]> {
    let [[a00, a01], [a10, a11]] = a;
    let sing = |what: &str| SolveError::Singular(format!("{what} is not invertible"));
    let a00i = a00.inv().ok_or_else(|| sing("a00"))?;
    let s = a11.sub(&a10.mul(&a00i).mul(&a01));
    let si = s.inv().ok_or_else(|| sing("-a10 a00^-1 a01 + a11"))?;
    let x1 = si.mul(&c[1].sub(&a10.mul(&a00i).mul(&c[0])));
    let x0 = a00i.mul(&c[0].sub(&a01.mul(&x1)));
    Ok([x0, x1])
}
