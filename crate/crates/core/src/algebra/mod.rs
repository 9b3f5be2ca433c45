//! Preset combinator/composer pairs and their identity constructs.

mod block;
mod duality;
mod set;
mod tropical;

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num::complex::Complex64;
use num::{BigRational, One, Zero};

pub use block::{trace_collapse, BlockValue};
pub use duality::{check_duality, DualityReport};
pub use set::{SetValue, Universe};
pub use tropical::Ext;

use crate::error::{CoreError, Result};
use crate::hypermatrix::Hypermatrix;
use crate::poly::Poly;
use crate::product::AlgebraSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    SumProd,
    ProdExp,
    ProdBaseExp,
    MaxPlus,
    MinPlus,
    UnionIntersect,
    IntersectUnion,
    OrAnd,
    AndOr,
    DirsumTensor,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 10] = [
        InstanceKind::SumProd,
        InstanceKind::ProdExp,
        InstanceKind::ProdBaseExp,
        InstanceKind::MaxPlus,
        InstanceKind::MinPlus,
        InstanceKind::UnionIntersect,
        InstanceKind::IntersectUnion,
        InstanceKind::OrAnd,
        InstanceKind::AndOr,
        InstanceKind::DirsumTensor,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            InstanceKind::SumProd => "sum-prod",
            InstanceKind::ProdExp => "prod-exp",
            InstanceKind::ProdBaseExp => "prod-baseexp",
            InstanceKind::MaxPlus => "max-plus",
            InstanceKind::MinPlus => "min-plus",
            InstanceKind::UnionIntersect => "union-intersect",
            InstanceKind::IntersectUnion => "intersect-union",
            InstanceKind::OrAnd => "or-and",
            InstanceKind::AndOr => "and-or",
            InstanceKind::DirsumTensor => "dirsum-tensor",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for InstanceKind {
    type Err = CoreError;
    fn from_str(s: &str) -> Result<Self> {
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| CoreError::Domain(format!("unknown instance tag {s:?}")))
    }
}

/// A value domain together with the instances defined over it.
pub trait InstanceDomain: Clone + Send + Sync + 'static {
    const DOMAIN: &'static str;

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>>;

    fn identity(kind: InstanceKind, n: usize, universe: Option<&Universe>) -> Result<Hypermatrix<Self>>;
}

pub fn make_algebra<V: InstanceDomain>(kind: InstanceKind) -> Result<AlgebraSpec<V>> {
    V::algebra(kind)
}

/// Two-sided identity for the product of `kind` on n×n constructs.
pub fn identity_construct<V: InstanceDomain>(kind: InstanceKind, n: usize, universe: Option<&Universe>) -> Result<Hypermatrix<V>> {
    V::identity(kind, n, universe)
}

fn unsupported<V: InstanceDomain, T>(kind: InstanceKind) -> Result<T> {
    Err(CoreError::UnsupportedKind { kind: kind.tag().into(), domain: V::DOMAIN })
}

fn diag<V: Clone>(n: usize, on: V, off: V) -> Result<Hypermatrix<V>> {
    Hypermatrix::from_fn(&[n, n], |ix| if ix[0] == ix[1] { on.clone() } else { off.clone() })
}

/// (Σ, ×) over any ring-like value type.
pub fn sum_prod<V>() -> AlgebraSpec<V>
where
    V: Clone + Zero + One + Add<Output = V> + Mul<Output = V> + 'static,
{
    AlgebraSpec::new(
        "sum-prod",
        None,
        |terms: Vec<V>| terms.into_iter().reduce(|a, b| a + b).expect("nonempty"),
        |args: &[&V]| args.iter().fold(V::one(), |acc, &x| acc * x.clone()),
    )
}

/// Principal a^b with the zero guard 0^b = 0.
pub fn guarded_pow(a: Complex64, b: Complex64) -> Complex64 {
    if a == Complex64::zero() {
        Complex64::zero()
    } else {
        a.powc(b)
    }
}

fn product_reduce(terms: Vec<Complex64>) -> Complex64 {
    terms.into_iter().fold(Complex64::one(), |a, b| a * b)
}

impl InstanceDomain for BigRational {
    const DOMAIN: &'static str = "rational";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::SumProd => Ok(sum_prod()),
            _ => unsupported::<Self, _>(kind),
        }
    }

    fn identity(kind: InstanceKind, n: usize, _: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        match kind {
            InstanceKind::SumProd => diag(n, BigRational::one(), BigRational::zero()),
            _ => unsupported::<Self, _>(kind),
        }
    }
}

impl InstanceDomain for Poly {
    const DOMAIN: &'static str = "polynomial";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::SumProd => Ok(sum_prod()),
            _ => unsupported::<Self, _>(kind),
        }
    }

    fn identity(kind: InstanceKind, n: usize, _: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        match kind {
            InstanceKind::SumProd => diag(n, Poly::one(), Poly::zero()),
            _ => unsupported::<Self, _>(kind),
        }
    }
}

impl InstanceDomain for Complex64 {
    const DOMAIN: &'static str = "complex";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::SumProd => Ok(sum_prod()),
            InstanceKind::ProdExp => {
                Ok(AlgebraSpec::new("prod-exp", Some(2), product_reduce, |a: &[&Complex64]| guarded_pow(*a[0], *a[1])))
            }
            InstanceKind::ProdBaseExp => Ok(AlgebraSpec::new("prod-baseexp", Some(2), product_reduce, |a: &[&Complex64]| {
                guarded_pow(*a[1], *a[0])
            })),
            _ => unsupported::<Self, _>(kind),
        }
    }

    // prod-exp and prod-baseexp only admit one-sided identities
    fn identity(kind: InstanceKind, n: usize, _: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        match kind {
            InstanceKind::SumProd => diag(n, Complex64::one(), Complex64::zero()),
            _ => unsupported::<Self, _>(kind),
        }
    }
}

impl InstanceDomain for Ext {
    const DOMAIN: &'static str = "tropical";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::MinPlus => Ok(AlgebraSpec::new(
                "min-plus",
                None,
                |t: Vec<Ext>| t.into_iter().min().expect("nonempty"),
                |a: &[&Ext]| a.iter().fold(Ext::int(0), |acc, x| acc.add_min(x)),
            )),
            InstanceKind::MaxPlus => Ok(AlgebraSpec::new(
                "max-plus",
                None,
                |t: Vec<Ext>| t.into_iter().max().expect("nonempty"),
                |a: &[&Ext]| a.iter().fold(Ext::int(0), |acc, x| acc.add_max(x)),
            )),
            _ => unsupported::<Self, _>(kind),
        }
    }

    fn identity(kind: InstanceKind, n: usize, _: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        match kind {
            InstanceKind::MinPlus => diag(n, Ext::int(0), Ext::PosInf),
            InstanceKind::MaxPlus => diag(n, Ext::int(0), Ext::NegInf),
            _ => unsupported::<Self, _>(kind),
        }
    }
}

impl InstanceDomain for SetValue {
    const DOMAIN: &'static str = "set";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::UnionIntersect => Ok(AlgebraSpec::new(
                "union-intersect",
                None,
                |t: Vec<SetValue>| t.into_iter().reduce(|a, b| a.union(&b)).expect("nonempty"),
                |a: &[&SetValue]| a[1..].iter().fold(a[0].clone(), |acc, x| acc.intersection(x)),
            )),
            InstanceKind::IntersectUnion => Ok(AlgebraSpec::new(
                "intersect-union",
                None,
                |t: Vec<SetValue>| t.into_iter().reduce(|a, b| a.intersection(&b)).expect("nonempty"),
                |a: &[&SetValue]| a[1..].iter().fold(a[0].clone(), |acc, x| acc.union(x)),
            )),
            _ => unsupported::<Self, _>(kind),
        }
    }

    fn identity(kind: InstanceKind, n: usize, universe: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        let need = || CoreError::Domain(format!("{kind} identity needs a declared universe"));
        match kind {
            InstanceKind::UnionIntersect => diag(n, universe.ok_or_else(need)?.all().clone(), SetValue::empty()),
            InstanceKind::IntersectUnion => diag(n, SetValue::empty(), universe.ok_or_else(need)?.all().clone()),
            _ => unsupported::<Self, _>(kind),
        }
    }
}

impl InstanceDomain for bool {
    const DOMAIN: &'static str = "bool";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::OrAnd => Ok(AlgebraSpec::new(
                "or-and",
                None,
                |t: Vec<bool>| t.into_iter().any(|x| x),
                |a: &[&bool]| a.iter().all(|&&x| x),
            )),
            InstanceKind::AndOr => Ok(AlgebraSpec::new(
                "and-or",
                None,
                |t: Vec<bool>| t.into_iter().all(|x| x),
                |a: &[&bool]| a.iter().any(|&&x| x),
            )),
            _ => unsupported::<Self, _>(kind),
        }
    }

    fn identity(kind: InstanceKind, n: usize, _: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        match kind {
            InstanceKind::OrAnd => diag(n, true, false),
            InstanceKind::AndOr => diag(n, false, true),
            _ => unsupported::<Self, _>(kind),
        }
    }
}

impl<T> InstanceDomain for BlockValue<T>
where
    T: Clone + Zero + Mul<Output = T> + Send + Sync + 'static,
{
    const DOMAIN: &'static str = "block";

    fn algebra(kind: InstanceKind) -> Result<AlgebraSpec<Self>> {
        match kind {
            InstanceKind::DirsumTensor => Ok(AlgebraSpec::new(
                "dirsum-tensor",
                None,
                |t: Vec<BlockValue<T>>| BlockValue::direct_sum(&t),
                |a: &[&BlockValue<T>]| a[1..].iter().fold(a[0].clone(), |acc, x| acc.kron(x)),
            )),
            _ => unsupported::<Self, _>(kind),
        }
    }

    // block sizes grow under the direct sum, so no identity exists
    fn identity(kind: InstanceKind, _: usize, _: Option<&Universe>) -> Result<Hypermatrix<Self>> {
        unsupported::<Self, _>(kind)
    }
}

/// (A^{∘z})[i,j] = A[i,j]^z where A[i,j] ≠ 0, else 0.
pub fn elementwise_exp(a: &Hypermatrix<Complex64>, z: Complex64) -> Hypermatrix<Complex64> {
    a.map(|&x| guarded_pow(x, z))
}

/// (z^{∘A})[i,j] = z^{A[i,j]}, principal branch.
pub fn elementwise_baseexp(z: Complex64, a: &Hypermatrix<Complex64>) -> Result<Hypermatrix<Complex64>> {
    if z == Complex64::zero() {
        return Err(CoreError::Domain("z^{∘A} is undefined for z = 0".into()));
    }
    Ok(a.map(|&x| z.powc(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::cprod2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn tags_round_trip() {
        for k in InstanceKind::ALL {
            assert_eq!(k.tag().parse::<InstanceKind>().unwrap(), k);
        }
        assert!("max-times".parse::<InstanceKind>().is_err());
    }

    #[test]
    fn boolean_identities() {
        let i = identity_construct::<bool>(InstanceKind::OrAnd, 2, None).unwrap();
        assert_eq!(i, Hypermatrix::from_rows(vec![vec![true, false], vec![false, true]]).unwrap());
        let j = identity_construct::<bool>(InstanceKind::AndOr, 2, None).unwrap();
        assert_eq!(j, Hypermatrix::from_rows(vec![vec![false, true], vec![true, false]]).unwrap());
    }

    #[test]
    fn set_identity_needs_universe() {
        assert!(identity_construct::<SetValue>(InstanceKind::UnionIntersect, 2, None).is_err());
        let s = Universe::range(1, 3);
        let i = identity_construct::<SetValue>(InstanceKind::UnionIntersect, 2, Some(&s)).unwrap();
        assert_eq!(i.to_string(), "[[{1, 2, 3}, {}], [{}, {1, 2, 3}]]");
    }

    #[test]
    fn unsupported_pairs_error() {
        assert!(make_algebra::<bool>(InstanceKind::SumProd).is_err());
        assert!(identity_construct::<Complex64>(InstanceKind::ProdExp, 2, None).is_err());
    }

    #[test]
    fn tropical_identity_on_integer_matrix() {
        let alg = make_algebra::<Ext>(InstanceKind::MinPlus).unwrap();
        let id = identity_construct::<Ext>(InstanceKind::MinPlus, 2, None).unwrap();
        let m = Hypermatrix::from_rows(vec![vec![Ext::int(3), Ext::PosInf], vec![Ext::int(-2), Ext::int(7)]]).unwrap();
        assert_eq!(cprod2(&id, &m, &alg).unwrap(), m);
        assert_eq!(cprod2(&m, &id, &alg).unwrap(), m);
    }

    #[test]
    fn exponent_maps() {
        let a = Hypermatrix::from_rows(vec![vec![c(2.0), c(0.0)], vec![c(1.0), c(4.0)]]).unwrap();
        let h = elementwise_exp(&a, c(0.5));
        assert!((h.get(&[0, 0]) - c(2f64.sqrt())).norm() < 1e-15);
        assert_eq!(*h.get(&[0, 1]), c(0.0));
        assert!((h.get(&[1, 1]) - c(2.0)).norm() < 1e-15);
        let z0 = elementwise_exp(&a, c(0.0));
        assert_eq!(z0.entries(), &[c(1.0), c(0.0), c(1.0), c(1.0)]);
        assert_eq!(elementwise_exp(&a, c(1.0)), a);

        let e = Hypermatrix::from_rows(vec![vec![c(1.0), c(2.0)], vec![c(3.0), c(0.0)]]).unwrap();
        let b = elementwise_baseexp(c(2.0), &e).unwrap();
        for (got, want) in b.entries().iter().zip([2.0, 4.0, 8.0, 1.0]) {
            assert!((got - c(want)).norm() < 1e-14);
        }
        assert!(elementwise_baseexp(c(0.0), &e).is_err());
        let ones = elementwise_baseexp(c(std::f64::consts::E), &Hypermatrix::filled(&[2, 2], c(0.0)).unwrap()).unwrap();
        assert!(ones.entries().iter().all(|&x| x == c(1.0)));
    }
}
