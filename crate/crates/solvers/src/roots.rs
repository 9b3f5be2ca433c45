//! Power sums and the fixed-point iteration that expands polynomial roots
//! around a center vector a.
//!
//! With σ(x)ⱼ = Σᵢ xᵢʲ and z = x − a, the binomial expansion gives
//! σ(x) − σ(a) = Σ_{k=1..n} A_k·z^{∘k} where A_k[j−1][i] = C(j,k)·aᵢ^{j−k}.
//! Solving for the k = 1 term yields the map iterated by [`iterate_roots`].

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;

use crate::error::{Result, SolveError};
use crate::ring::DivisionRing;

/// Centers closer than this (relative to their size) make A₁ nearly singular.
pub const CENTER_GAP_WARN: f64 = 1e-6;

fn pow<T: DivisionRing>(x: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc.mul(x))
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// σⱼ = Σᵢ rᵢʲ for j = 1..n.
pub fn power_sums<T: DivisionRing>(r: &[T]) -> Vec<T> {
    (1..=r.len()).map(|j| r.iter().fold(T::zero(), |acc, x| acc.add(&pow(x, j)))).collect()
}

/// Power sums of the roots of c₀ + c₁x + … + cₙxⁿ via Newton's identities.
pub fn coeffs_to_power_sums<T: DivisionRing>(poly: &[T]) -> Result<Vec<T>> {
    let n = poly.len().checked_sub(1).filter(|&n| n > 0).ok_or_else(|| SolveError::Shape("polynomial must have degree ≥ 1".into()))?;
    let lead = poly[n].inv().ok_or_else(|| SolveError::Singular("zero leading coefficient".into()))?;
    // elementary symmetric eₖ = (−1)ᵏ c_{n−k}/cₙ
    let e: Vec<T> = (0..=n)
        .map(|k| {
            let v = poly[n - k].mul(&lead);
            if k % 2 == 1 {
                v.neg()
            } else {
                v
            }
        })
        .collect();
    let mut p: Vec<T> = Vec::with_capacity(n);
    for k in 1..=n {
        // pₖ = Σ_{i=1}^{k−1} (−1)^{i−1} eᵢ p_{k−i} + (−1)^{k−1} k eₖ
        let mut acc = T::from_i64(k as i64).mul(&e[k]);
        if k % 2 == 0 {
            acc = acc.neg();
        }
        for i in 1..k {
            let t = e[i].mul(&p[k - i - 1]);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        p.push(acc);
    }
    Ok(p)
}

/// A_k: n×n, entry [j−1][i] = C(j,k)·aᵢ^{j−k}, zero when k > j.
pub fn build_coeff_matrix<T: DivisionRing>(a: &[T], k: usize) -> Vec<Vec<T>> {
    let n = a.len();
    (1..=n)
        .map(|j| {
            a.iter()
                .map(|ai| if k > j { T::zero() } else { T::from_i64(binom(j, k)).mul(&pow(ai, j - k)) })
                .collect()
        })
        .collect()
}

/// Determinant and rank by elimination with largest-magnitude pivots.
pub fn det_and_rank<T: DivisionRing>(m: &[Vec<T>]) -> (T, usize) {
    let mut m: Vec<Vec<T>> = m.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let scale = m.iter().flatten().map(DivisionRing::magnitude).fold(0.0, f64::max);
    let mut det = T::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let piv = (rank..rows).max_by(|&x, &y| m[x][c].magnitude().total_cmp(&m[y][c].magnitude())).expect("nonempty range");
        if m[piv][c].negligible(scale) {
            det = T::zero();
            continue;
        }
        if piv != rank {
            m.swap(piv, rank);
            det = det.neg();
        }
        det = det.mul(&m[rank][c]);
        let inv = m[rank][c].inv().expect("pivot is nonzero");
        for i in rank + 1..rows {
            let f = m[i][c].mul(&inv);
            for k in c..cols {
                let d = f.mul(&m[rank][k]);
                m[i][k] = m[i][k].sub(&d);
            }
        }
        rank += 1;
    }
    if rank < rows.min(cols) || rows != cols {
        det = T::zero();
    }
    (det, rank)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetRankReport<T> {
    /// det A₁.
    pub det: T,
    /// n!·Π_{i<j}(aⱼ − aᵢ).
    pub formula: T,
    /// rank A_k for k = 0..n (A₀ is the power matrix aᵢʲ).
    pub ranks: Vec<usize>,
}

impl<T: DivisionRing> DetRankReport<T> {
    /// rank A_k = n − k + 1 for k ≥ 1.
    pub fn ranks_generic(&self) -> bool {
        let n = self.ranks.len() - 1;
        (1..=n).all(|k| self.ranks[k] == n - k + 1)
    }
}

pub fn vandermonde_formula<T: DivisionRing>(a: &[T]) -> T {
    let n = a.len();
    let fact = (1..=n as i64).fold(T::one(), |acc, i| acc.mul(&T::from_i64(i)));
    let mut prod = fact;
    for i in 0..n {
        for j in i + 1..n {
            prod = prod.mul(&a[j].sub(&a[i]));
        }
    }
    prod
}

pub fn check_det_rank<T: DivisionRing>(a: &[T]) -> DetRankReport<T> {
    let n = a.len();
    let det = det_and_rank(&build_coeff_matrix(a, 1)).0;
    let ranks = (0..=n).map(|k| det_and_rank(&build_coeff_matrix(a, k)).1).collect();
    DetRankReport { det, formula: vandermonde_formula(a), ranks }
}

/// Σ_{k=1..n} A_k·(x − a)^{∘k}; equals σ(x) − σ(a).
pub fn taylor_expansion<T: DivisionRing>(x: &[T], a: &[T]) -> Vec<T> {
    let n = a.len();
    let z: Vec<T> = x.iter().zip(a).map(|(xi, ai)| xi.sub(ai)).collect();
    let mut out = vec![T::zero(); n];
    for k in 1..=n {
        let ak = build_coeff_matrix(a, k);
        for (o, row) in out.iter_mut().zip(&ak) {
            for (c, zi) in row.iter().zip(&z) {
                *o = o.add(&c.mul(&pow(zi, k)));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct RootIteration {
    pub x: Vec<Complex64>,
    pub iterations: usize,
    /// max |σ(x)ⱼ − targetⱼ|.
    pub residual: f64,
    /// ‖z_t‖ for t = 1, 2, …
    pub norms: Vec<f64>,
    /// a + z_t for t = 1, 2, …
    pub iterates: Vec<Vec<Complex64>>,
    pub ill_conditioned: bool,
}

fn to_dmatrix(m: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.len(), m[0].len(), |i, j| m[i][j])
}

/// Relative minimum gap between centers.
pub fn center_gap(a: &[Complex64]) -> f64 {
    let size = a.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let mut gap = f64::INFINITY;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            gap = gap.min((a[i] - a[j]).norm());
        }
    }
    gap / size
}

/// z_{t+1} = A₁⁻¹(σ_target − σ(a) − Σ_{k=2..n} A_k·z_t^{∘k}) from z₀ = 0; x = a + z.
pub fn iterate_roots(target: &[Complex64], a: &[Complex64], t_max: usize, tol: f64) -> Result<RootIteration> {
    let n = a.len();
    if n == 0 || target.len() != n {
        return Err(SolveError::Shape(format!("{} power sums for {n} centers", target.len())));
    }
    let ill_conditioned = center_gap(a) < CENTER_GAP_WARN;
    if ill_conditioned {
        log::warn!("centers nearly coincide (relative gap {:.3e}); A1 is close to singular", center_gap(a));
    }
    let lu = to_dmatrix(&build_coeff_matrix(a, 1)).lu();
    if !lu.is_invertible() {
        return Err(SolveError::Singular("A1 is singular: centers are not distinct".into()));
    }
    let higher: Vec<DMatrix<Complex64>> = (2..=n).map(|k| to_dmatrix(&build_coeff_matrix(a, k))).collect();
    let shift = DVector::from_iterator(n, target.iter().zip(power_sums(a)).map(|(t, s)| t - s));

    let mut z = DVector::<Complex64>::zeros(n);
    let mut norms = Vec::new();
    let mut iterates = Vec::new();
    let mut prev_step = f64::INFINITY;
    for t in 1..=t_max {
        let mut rhs = shift.clone();
        for (k, ak) in higher.iter().enumerate() {
            let zk = z.map(|v| v.powu(k as u32 + 2));
            rhs -= ak * zk;
        }
        let next = lu.solve(&rhs).ok_or_else(|| SolveError::Singular("A1 solve failed".into()))?;
        let step = (&next - &z).norm();
        z = next;
        norms.push(z.norm());
        iterates.push(a.iter().zip(z.iter()).map(|(ai, zi)| ai + zi).collect::<Vec<_>>());
        if !step.is_finite() || z.norm() > 1e8 * (1.0 + DVector::from_column_slice(a).norm()) {
            return Err(SolveError::Divergence { iterations: t, last_step: step, growth: step / prev_step });
        }
        if step < tol {
            let x = iterates.last().cloned().expect("one iterate per step");
            let residual = power_sums(&x).iter().zip(target).map(|(s, t)| (s - t).norm()).fold(0.0, f64::max);
            return Ok(RootIteration { x, iterations: t, residual, norms, iterates, ill_conditioned });
        }
        prev_step = step;
    }
    let growth = norms.last().copied().unwrap_or(0.0) / norms.first().copied().unwrap_or(1.0);
    Err(SolveError::Divergence { iterations: t_max, last_step: prev_step, growth })
}

/// Roots of c₀ + c₁x + … + cₙxⁿ by simultaneous (Durand–Kerner) iteration.
pub fn poly_roots(poly: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = poly.len().checked_sub(1).filter(|&n| n > 0).ok_or_else(|| SolveError::Shape("polynomial must have degree ≥ 1".into()))?;
    if poly[n].norm() == 0.0 {
        return Err(SolveError::Singular("zero leading coefficient".into()));
    }
    let monic: Vec<Complex64> = poly.iter().map(|c| c / poly[n]).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut r: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..10_000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let denom: Complex64 = (0..n).filter(|&j| j != i).map(|j| r[i] - r[j]).product();
            let step = eval(r[i]) / denom;
            r[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiProbe {
    pub roots: Vec<Complex64>,
    pub x: Vec<Complex64>,
    /// Nearest root to each converged coordinate.
    pub converged_to: Vec<usize>,
    /// Nearest root to each center; `None` on a tie.
    pub center_cells: Vec<Option<usize>>,
    pub inconclusive: bool,
}

impl VoronoiProbe {
    /// Whether every coordinate converged to the root whose cell holds its center.
    pub fn matches_cells(&self) -> bool {
        !self.inconclusive && self.converged_to.iter().zip(&self.center_cells).all(|(c, cell)| Some(*c) == *cell)
    }
}

const TIE_TOL: f64 = 1e-12;

fn nearest(roots: &[Complex64], p: Complex64) -> Option<usize> {
    let mut d: Vec<(f64, usize)> = roots.iter().enumerate().map(|(i, r)| ((p - r).norm(), i)).collect();
    d.sort_by(|x, y| x.0.total_cmp(&y.0));
    match d.as_slice() {
        [(d0, _), (d1, _), ..] if d1 - d0 <= TIE_TOL * (1.0 + d0) => None,
        [(_, i), ..] => Some(*i),
        [] => None,
    }
}

/// Runs [`iterate_roots`] from center a and labels the result by Euclidean Voronoi cell.
pub fn voronoi_probe(poly: &[Complex64], a: &[Complex64], t_max: usize, tol: f64) -> Result<VoronoiProbe> {
    let roots = poly_roots(poly)?;
    let target = coeffs_to_power_sums(poly)?;
    let it = iterate_roots(&target, a, t_max, tol)?;
    let converged: Vec<Option<usize>> = it.x.iter().map(|x| nearest(&roots, *x)).collect();
    let center_cells: Vec<Option<usize>> = a.iter().map(|p| nearest(&roots, *p)).collect();
    let inconclusive = converged.iter().chain(&center_cells).any(Option::is_none);
    Ok(VoronoiProbe {
        roots,
        x: it.x,
        converged_to: converged.into_iter().map(|c| c.unwrap_or(usize::MAX)).collect(),
        center_cells,
        inconclusive,
    })
}
