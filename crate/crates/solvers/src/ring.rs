//! Scalars for elimination: fields and skew fields with two-sided inverses.

use std::fmt::Debug;

use nalgebra::Quaternion;
use num::complex::Complex64;
use num::{BigRational, One, Signed, Zero};

use construct_core::json::rational_to_string;

/// Relative size below which an inexact pivot counts as zero.
pub const PIVOT_TOL: f64 = 1e-12;

pub trait DivisionRing: Clone + Debug {
    /// Exact arithmetic: zero tests are exact and residuals must vanish.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Two-sided inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn magnitude(&self) -> f64;
    fn render(&self) -> String;

    fn is_zero(&self) -> bool {
        self.magnitude() == 0.0
    }

    fn negligible(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= PIVOT_TOL * scale.max(1.0)
        }
    }

    fn from_i64(k: i64) -> Self {
        let mut acc = Self::zero();
        let one = if k < 0 { Self::one().neg() } else { Self::one() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&one);
        }
        acc
    }
}

impl DivisionRing for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn magnitude(&self) -> f64 {
        construct_core::json::rational_to_f64(&self.abs())
    }
    fn render(&self) -> String {
        rational_to_string(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(k.into())
    }
}

impl DivisionRing for Complex64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (self.norm() != 0.0).then(|| self.inv())
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn render(&self) -> String {
        format!("{self}")
    }
    fn from_i64(k: i64) -> Self {
        Complex64::new(k as f64, 0.0)
    }
}

impl DivisionRing for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn render(&self) -> String {
        format!("{self}")
    }
    fn from_i64(k: i64) -> Self {
        k as f64
    }
}

/// Hamilton quaternions, the reference skew field.
impl DivisionRing for Quaternion<f64> {
    const EXACT: bool = false;

    fn zero() -> Self {
        Quaternion::new(0.0, 0.0, 0.0, 0.0)
    }
    fn one() -> Self {
        Quaternion::new(1.0, 0.0, 0.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.try_inverse()
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn render(&self) -> String {
        format!("{} + {}i + {}j + {}k", self.w, self.i, self.j, self.k)
    }
    fn from_i64(k: i64) -> Self {
        Quaternion::new(k as f64, 0.0, 0.0, 0.0)
    }
}
