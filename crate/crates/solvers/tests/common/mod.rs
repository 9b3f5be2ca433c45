#![allow(dead_code)]

use nalgebra::{DMatrix, Quaternion};
use num::complex::Complex64;
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Small rationals with numerators in [−9, 9] and denominators in [1, 4].
pub fn rational(r: &mut ChaCha8Rng) -> BigRational {
    q(r.gen_range(-9..=9), r.gen_range(1..=4))
}

pub fn quaternion(r: &mut ChaCha8Rng) -> Quaternion<f64> {
    Quaternion::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))
}

pub fn dmatrix(r: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |_, _| r.gen_range(lo..hi))
}

/// Exact determinant by Leibniz expansion.
pub fn leibniz_det(m: &[Vec<BigRational>]) -> BigRational {
    fn go(m: &[Vec<BigRational>], row: usize, used: &mut Vec<bool>, sign: i64) -> BigRational {
        let n = m.len();
        if row == n {
            return q(sign, 1);
        }
        let mut acc = q(0, 1);
        let mut s = sign;
        // column order fixes the sign: skipping an unused column flips it
        for col in 0..n {
            if used[col] {
                continue;
            }
            if m[row][col] != q(0, 1) {
                used[col] = true;
                acc += &m[row][col] * go(m, row + 1, used, s);
                used[col] = false;
            }
            s = -s;
        }
        acc
    }
    go(m, 0, &mut vec![false; m.len()], 1)
}

pub fn rel_close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}
