//! Values of variable-free formulas: exact Gaussian rationals when possible,
//! otherwise high-precision complex floats on principal branches.
//!
//! Every inexact result is passed through [`snap`], which recovers a Gaussian
//! rational with small denominators when the float agrees with one to nearly
//! full precision (so `(1+1)^((1+1)^-1) * (1+1)^((1+1)^-1)` comes back as exactly 2).

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num::complex::Complex64;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{FormulaError, Result};

/// Fractional bits carried by inexact values; `CONSTRUCT_PRECISION_BITS` may raise it.
pub fn precision_bits() -> u32 {
    static BITS: OnceLock<u32> = OnceLock::new();
    *BITS.get_or_init(|| {
        std::env::var("CONSTRUCT_PRECISION_BITS").ok().and_then(|s| s.parse().ok()).unwrap_or(256).max(256)
    })
}

fn work_prec() -> u32 {
    precision_bits() + 64
}

/// Relative tolerance for comparing inexact values.
pub const REL_TOL: f64 = 1e-30;

/// Largest exact power, in estimated result bits, before falling back to floats.
const EXACT_POW_BITS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gauss {
    pub re: Rational,
    pub im: Rational,
}

impl Gauss {
    pub fn new(re: Rational, im: Rational) -> Gauss {
        Gauss { re, im }
    }

    pub fn real(re: Rational) -> Gauss {
        Gauss { re, im: Rational::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn as_integer(&self) -> Option<Integer> {
        (self.im == 0 && *self.re.denom() == 1).then(|| self.re.numer().clone())
    }

    fn add(&self, o: &Gauss) -> Gauss {
        Gauss::new(Rational::from(&self.re + &o.re), Rational::from(&self.im + &o.im))
    }

    fn mul(&self, o: &Gauss) -> Gauss {
        let re = Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re);
        Gauss::new(re, im)
    }

    fn recip(&self) -> Gauss {
        let n = Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im);
        Gauss::new(Rational::from(&self.re / &n), -Rational::from(&self.im / &n))
    }

    fn bits(&self) -> u64 {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .iter()
            .map(|i| u64::from(i.significant_bits()))
            .max()
            .unwrap_or(1)
            .max(1)
    }

    fn pow_u(&self, mut k: u64) -> Gauss {
        let mut acc = Gauss::real(Rational::from(1));
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn to_hp(&self) -> Hp {
        let p = work_prec();
        Hp { re: Float::with_val(p, &self.re), im: Float::with_val(p, &self.im) }
    }
}

/// Complex number as a pair of MPFR floats.
#[derive(Clone, Debug)]
pub struct Hp {
    pub re: Float,
    pub im: Float,
}

impl Hp {
    fn add(&self, o: &Hp) -> Hp {
        let p = work_prec();
        Hp { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }

    fn sub(&self, o: &Hp) -> Hp {
        let p = work_prec();
        Hp { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }

    fn mul(&self, o: &Hp) -> Hp {
        let p = work_prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Hp { re, im }
    }

    fn div(&self, o: &Hp) -> Hp {
        let p = work_prec();
        let n = Float::with_val(p, &o.re * &o.re) + Float::with_val(p, &o.im * &o.im);
        let re = Float::with_val(p, &self.re * &o.re) + Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.im * &o.re) - Float::with_val(p, &self.re * &o.im);
        Hp { re: re / &n, im: im / &n }
    }

    pub fn norm(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal logarithm, argument in (−π, π].
    fn ln(&self) -> Hp {
        let mut im = self.im.clone();
        if im.is_zero() {
            // −0 would put negative reals on the wrong side of the cut
            im = Float::new(work_prec());
        }
        Hp { re: self.norm().ln(), im: im.atan2(&self.re) }
    }

    fn exp(&self) -> Hp {
        let m = self.re.clone().exp();
        let (s, c) = (self.im.clone().sin(), self.im.clone().cos());
        Hp { re: Float::with_val(work_prec(), &m * &c), im: m * &s }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[derive(Clone, Debug)]
pub enum CValue {
    Exact(Gauss),
    /// Computed through floats and not recognisably a Gaussian rational.
    Approx(Hp),
}

fn invalid(msg: impl Into<String>) -> FormulaError {
    FormulaError::Invalid(msg.into())
}

/// Best rational with denominator below 2⁴⁰ within `tol` of `x`, by continued fractions.
fn recover_rational(x: &Float, tol: &Float) -> Option<Rational> {
    let exact = x.to_rational()?;
    let (mut n, mut d) = (exact.numer().clone(), exact.denom().clone());
    let (mut h0, mut h1) = (Integer::from(0), Integer::from(1));
    let (mut k0, mut k1) = (Integer::from(1), Integer::from(0));
    let limit = Integer::from(1) << 40;
    for _ in 0..200 {
        if d == 0 {
            break;
        }
        let (a, r) = n.clone().div_rem_floor(d.clone());
        let h2 = Integer::from(&a * &h1) + &h0;
        let k2 = Integer::from(&a * &k1) + &k0;
        if k2 > limit {
            break;
        }
        let cand = Rational::from((h2.clone(), k2.clone()));
        let err = Float::with_val(work_prec(), x - &cand).abs();
        if err <= *tol {
            return Some(cand);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        n = d;
        d = r;
    }
    None
}

/// Turns a float result back into an exact value when it sits on a Gaussian rational.
pub fn snap(z: Hp) -> CValue {
    let p = work_prec();
    let scale = Float::with_val(p, z.norm().max(&Float::with_val(p, 1)));
    let tol = Float::with_val(p, Float::i_exp(1, -(precision_bits() as i32 - 16))) * scale;
    // past 2⁶⁴ every float is an integer, so recovery would be meaningless
    let small = |x: &Float| Float::with_val(p, x.abs_ref()) < Float::with_val(p, Float::i_exp(1, 64));
    let part = |x: &Float| {
        if Float::with_val(p, x.abs_ref()) <= tol {
            Some(Rational::new())
        } else if small(x) {
            recover_rational(x, &tol)
        } else {
            None
        }
    };
    match (part(&z.re), part(&z.im)) {
        (Some(re), Some(im)) => CValue::Exact(Gauss::new(re, im)),
        (re, im) => {
            // rounding residue on an axis becomes an exact zero
            let clean = |x: Float, r: Option<Rational>| if r.is_some_and(|r| r == 0) { Float::new(p) } else { x };
            CValue::Approx(Hp { re: clean(z.re, re), im: clean(z.im, im) })
        }
    }
}

impl CValue {
    pub fn int(v: i64) -> CValue {
        CValue::Exact(Gauss::real(Rational::from(v)))
    }

    pub fn rational(r: Rational) -> CValue {
        CValue::Exact(Gauss::real(r))
    }

    pub fn gauss(re: Rational, im: Rational) -> CValue {
        CValue::Exact(Gauss::new(re, im))
    }

    pub fn from_complex64(z: Complex64) -> CValue {
        let p = work_prec();
        snap(Hp { re: Float::with_val(p, z.re), im: Float::with_val(p, z.im) })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Gauss> {
        match self {
            CValue::Exact(g) => Some(g),
            CValue::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CValue::Exact(g) => g.is_zero(),
            CValue::Approx(h) => h.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, CValue::Exact(g) if g.re == 1 && g.im == 0)
    }

    pub fn to_hp(&self) -> Hp {
        match self {
            CValue::Exact(g) => g.to_hp(),
            CValue::Approx(h) => h.clone(),
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        self.to_hp().to_complex64()
    }

    pub fn add(&self, o: &CValue) -> CValue {
        match (self, o) {
            (CValue::Exact(a), CValue::Exact(b)) => CValue::Exact(a.add(b)),
            _ => snap(self.to_hp().add(&o.to_hp())),
        }
    }

    pub fn mul(&self, o: &CValue) -> CValue {
        match (self, o) {
            (CValue::Exact(a), CValue::Exact(b)) => CValue::Exact(a.mul(b)),
            _ => snap(self.to_hp().mul(&o.to_hp())),
        }
    }

    pub fn neg(&self) -> CValue {
        self.mul(&CValue::int(-1))
    }

    /// Principal power `self^e`.
    pub fn pow(&self, e: &CValue) -> Result<CValue> {
        if self.is_zero() {
            return match e.as_exact() {
                Some(g) if g.is_real() && g.re > 0 => Ok(CValue::int(0)),
                _ => Err(invalid(format!("0^{e}"))),
            };
        }
        if let (CValue::Exact(b), Some(g)) = (self, e.as_exact()) {
            if let Some(k) = g.as_integer() {
                if let Some(v) = exact_int_pow(b, &k) {
                    return Ok(CValue::Exact(v));
                }
            } else if g.is_real() && b.is_real() && b.re > 0 {
                if let Some(v) = exact_root_pow(&b.re, &g.re) {
                    return Ok(CValue::Exact(Gauss::real(v)));
                }
            }
        }
        let (b, e) = (self.to_hp(), e.to_hp());
        finite(e.mul(&b.ln()).exp()).map(snap)
    }

    /// ln(arg)/ln(base), principal branch.
    pub fn log(base: &CValue, arg: &CValue) -> Result<CValue> {
        if arg.is_zero() || base.is_zero() {
            return Err(invalid("logarithm involving 0"));
        }
        if base.is_one() {
            return Err(invalid("logarithm to base 1"));
        }
        if arg.is_one() {
            return Ok(CValue::int(0));
        }
        finite(arg.to_hp().ln().div(&base.to_hp().ln())).map(snap)
    }

    /// Integer remainder in [0, |h|).
    pub fn modulo(&self, h: &CValue) -> Result<CValue> {
        let ints = self.as_exact().and_then(Gauss::as_integer).zip(h.as_exact().and_then(Gauss::as_integer));
        let (f, h) = ints.ok_or_else(|| invalid("mod needs integer operands"))?;
        if h == 0 {
            return Err(invalid("mod by 0"));
        }
        let (_, r) = f.div_rem_euc(h.abs());
        Ok(CValue::rational(Rational::from(r)))
    }

    /// Equality: exact on exact pairs, relative 1e−30 otherwise.
    pub fn same(&self, o: &CValue) -> bool {
        match (self, o) {
            (CValue::Exact(a), CValue::Exact(b)) => a == b,
            _ => {
                let (a, b) = (self.to_hp(), o.to_hp());
                let d = a.sub(&b).norm();
                let scale = a.norm().max(&b.norm());
                d <= Float::with_val(work_prec(), REL_TOL) * scale
            }
        }
    }

    /// Agreement with a double-precision value to an absolute-or-relative `tol`.
    pub fn close_to(&self, z: Complex64, tol: f64) -> bool {
        let w = self.to_complex64();
        (w - z).norm() <= tol * w.norm().max(1.0)
    }

    /// Canonical total order used to make outputs deterministic.
    pub fn canonical_cmp(&self, o: &CValue) -> Ordering {
        let (a, b) = (self.to_hp(), o.to_hp());
        a.re.total_cmp(&b.re).then_with(|| a.im.total_cmp(&b.im)).then_with(|| match (self, o) {
            (CValue::Exact(x), CValue::Exact(y)) => x.cmp(y),
            (CValue::Exact(_), CValue::Approx(_)) => Ordering::Less,
            (CValue::Approx(_), CValue::Exact(_)) => Ordering::Greater,
            (CValue::Approx(_), CValue::Approx(_)) => Ordering::Equal,
        })
    }
}

fn finite(z: Hp) -> Result<Hp> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(FormulaError::Budget("value outside the floating-point exponent range".into()))
    }
}

fn exact_int_pow(b: &Gauss, k: &Integer) -> Option<Gauss> {
    let mag = k.clone().abs().to_u64()?;
    if mag.saturating_mul(b.bits()) > EXACT_POW_BITS {
        return None;
    }
    let v = b.pow_u(mag);
    Some(if *k < 0 { v.recip() } else { v })
}

/// b^(p/q) for positive rational b when the q-th roots are exact.
fn exact_root_pow(b: &Rational, e: &Rational) -> Option<Rational> {
    let q = e.denom().to_u32()?;
    let root = |i: &Integer| {
        let (r, rem) = i.clone().root_rem(Integer::new(), q);
        (rem == 0).then_some(r)
    };
    let base = Rational::from((root(b.numer())?, root(b.denom())?));
    let v = exact_int_pow(&Gauss::real(base), e.numer())?;
    Some(v.re)
}

fn fmt_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_float(x: &Float) -> String {
    let digits = (precision_bits() as f64 * std::f64::consts::LOG10_2) as usize - 8;
    x.to_string_radix(10, Some(digits.max(10)))
}

impl fmt::Display for CValue {
    /// Exact values print as `p/q`, `I`, `-1/2*I`, `3 - I`; inexact ones as `re + im*I` decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CValue::Exact(g) => {
                let im = match &g.im {
                    x if *x == 0 => None,
                    x if *x == 1 => Some("I".to_string()),
                    x if *x == -1 => Some("-I".to_string()),
                    x => Some(format!("{}*I", fmt_rational(x))),
                };
                match im {
                    None => write!(f, "{}", fmt_rational(&g.re)),
                    Some(i) if g.re == 0 => write!(f, "{i}"),
                    Some(i) => match i.strip_prefix('-') {
                        Some(rest) => write!(f, "{} - {rest}", fmt_rational(&g.re)),
                        None => write!(f, "{} + {i}", fmt_rational(&g.re)),
                    },
                }
            }
            CValue::Approx(h) if h.im.is_zero() => write!(f, "{}", fmt_float(&h.re)),
            CValue::Approx(h) if h.re.is_zero() => write!(f, "{}*I", fmt_float(&h.im)),
            CValue::Approx(h) => {
                if h.im.is_sign_negative() {
                    write!(f, "{} - {}*I", fmt_float(&h.re), fmt_float(&Float::with_val(work_prec(), -&h.im)))
                } else {
                    write!(f, "{} + {}*I", fmt_float(&h.re), fmt_float(&h.im))
                }
            }
        }
    }
}

impl PartialEq for CValue {
    fn eq(&self, o: &CValue) -> bool {
        self.same(o)
    }
}

/// Parses `p/q`, integers, decimals, and `a + b*I` style Gaussian rationals.
pub fn parse_cvalue(s: &str) -> Option<CValue> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let rat = |x: &str| -> Option<Rational> {
        if x.is_empty() {
            return None;
        }
        if let Some((i, frac)) = x.split_once('.') {
            let neg = i.starts_with('-');
            let digits = format!("{}{}", i.trim_start_matches(['-', '+']), frac);
            let n: Integer = digits.parse().ok()?;
            let r = Rational::from((n, Integer::from(10).pow(frac.len() as u32)));
            return Some(if neg { -r } else { r });
        }
        x.parse::<Rational>().ok()
    };
    let imag = |x: &str| -> Option<Rational> {
        let body = x.strip_suffix('I')?;
        match body.trim_end_matches('*') {
            "" | "+" => Some(Rational::from(1)),
            "-" => Some(Rational::from(-1)),
            b => rat(b),
        }
    };
    if !t.ends_with('I') {
        return rat(&t).map(CValue::rational);
    }
    // split at the last sign that is not the leading one
    let cut = t.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    match cut {
        Some(i) if !t[..i].ends_with('/') => Some(CValue::gauss(rat(&t[..i])?, imag(&t[i..])?)),
        _ => Some(CValue::gauss(Rational::new(), imag(&t)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> CValue {
        CValue::rational(Rational::from((n, d)))
    }

    #[test]
    fn exact_arithmetic() {
        assert_eq!(q(1, 2).add(&q(1, 3)).to_string(), "5/6");
        assert_eq!(CValue::int(-2).pow(&CValue::int(9)).unwrap().to_string(), "-512");
        assert_eq!(CValue::int(2).pow(&CValue::int(-1)).unwrap().to_string(), "1/2");
        assert_eq!(CValue::int(4).pow(&q(1, 2)).unwrap().to_string(), "2");
    }

    #[test]
    fn principal_roots_snap_to_gaussian_rationals() {
        let i = CValue::int(-1).pow(&q(1, 2)).unwrap();
        assert!(i.is_exact());
        assert_eq!(i.to_string(), "I");
        let r2 = CValue::int(2).pow(&q(1, 2)).unwrap();
        assert!(!r2.is_exact());
        assert_eq!(r2.mul(&r2).to_string(), "2");
        let cube = CValue::int(-1).pow(&q(1, 3)).unwrap();
        assert!(cube.close_to(Complex64::new(0.5, 3f64.sqrt() / 2.0), 1e-15));
    }

    #[test]
    fn forbidden_classes() {
        assert!(CValue::int(0).pow(&CValue::int(-1)).is_err());
        assert!(CValue::int(0).pow(&CValue::int(0)).is_err());
        assert!(CValue::log(&CValue::int(0), &CValue::int(2)).is_err());
        assert!(CValue::log(&CValue::int(2), &CValue::int(0)).is_err());
        assert!(CValue::int(3).modulo(&CValue::int(0)).is_err());
    }

    #[test]
    fn log_and_mod() {
        assert_eq!(CValue::log(&CValue::int(2), &CValue::int(4)).unwrap().to_string(), "2");
        assert_eq!(CValue::int(-7).modulo(&CValue::int(3)).unwrap().to_string(), "2");
        assert_eq!(CValue::int(7).modulo(&CValue::int(-3)).unwrap().to_string(), "1");
    }

    #[test]
    fn tolerance_equality() {
        let a = CValue::int(2).pow(&q(1, 3)).unwrap();
        let b = CValue::int(16).pow(&q(1, 3)).unwrap().mul(&q(1, 2));
        assert!(a.same(&b));
        assert!(!a.same(&CValue::int(2).pow(&q(1, 5)).unwrap()));
    }

    #[test]
    fn display_and_parse() {
        for s in ["3", "-1/2", "I", "-I", "1 + I", "-1 - I", "3/2 - 1/2*I", "1/2*I"] {
            let v = parse_cvalue(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!(parse_cvalue("-0.25").unwrap().to_string(), "-1/4");
        assert!(parse_cvalue("abc").is_none());
    }
}
