//! The construct product (written CProd or GProd, same operation).

use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::hypermatrix::{Hypermatrix, Shape};

type Combinator<V> = Arc<dyn Fn(Vec<V>) -> V + Send + Sync>;
type Composer<V> = Arc<dyn Fn(&[&V]) -> V + Send + Sync>;

/// A combinator (reduction over the contraction index) paired with a composer
/// (the map applied to one entry from each operand).
///
/// The combinator always receives its terms in index order t = 0..ℓ, so
/// order-sensitive reductions such as the direct sum are well defined.
#[derive(Clone)]
pub struct AlgebraSpec<V> {
    name: String,
    arity: Option<usize>,
    combinator: Combinator<V>,
    composer: Composer<V>,
}

impl<V> AlgebraSpec<V> {
    /// `arity` of `None` means the composer accepts any operand count.
    pub fn new(
        name: impl Into<String>,
        arity: Option<usize>,
        combinator: impl Fn(Vec<V>) -> V + Send + Sync + 'static,
        composer: impl Fn(&[&V]) -> V + Send + Sync + 'static,
    ) -> Self {
        AlgebraSpec { name: name.into(), arity, combinator: Arc::new(combinator), composer: Arc::new(composer) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> Option<usize> {
        self.arity
    }

    pub fn combine(&self, terms: Vec<V>) -> V {
        assert!(!terms.is_empty(), "combinator needs at least one term");
        (self.combinator)(terms)
    }

    pub fn compose(&self, args: &[&V]) -> V {
        (self.composer)(args)
    }

    fn check_arity(&self, operands: usize) -> Result<()> {
        match self.arity {
            Some(a) if a != operands => Err(CoreError::Arity { arity: a, operands }),
            _ => Ok(()),
        }
    }
}

impl<V> fmt::Debug for AlgebraSpec<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec").field("name", &self.name).field("arity", &self.arity).finish()
    }
}

/// C[i,j] = Op_t F(A[i,t], B[t,j]).
pub fn cprod2<V: Clone>(a: &Hypermatrix<V>, b: &Hypermatrix<V>, alg: &AlgebraSpec<V>) -> Result<Hypermatrix<V>> {
    alg.check_arity(2)?;
    if a.shape().order() != 2 || b.shape().order() != 2 || a.dims()[1] != b.dims()[0] {
        return Err(CoreError::Conformability(format!(
            "cannot multiply {} by {}: inner extents must agree",
            a.shape(),
            b.shape()
        )));
    }
    let (m, l, n) = (a.dims()[0], a.dims()[1], b.dims()[1]);
    Hypermatrix::from_fn(&[m, n], |ix| {
        let (i, j) = (ix[0], ix[1]);
        let terms = (0..l).map(|t| alg.compose(&[a.get(&[i, t]), b.get(&[t, j])])).collect();
        alg.combine(terms)
    })
}

/// D[i,j,k] = Op_t F(A[i,t,k], B[i,j,t], C[t,j,k]) for A: m×ℓ×p, B: m×n×ℓ, C: ℓ×n×p.
pub fn cprod3<V: Clone>(
    a: &Hypermatrix<V>,
    b: &Hypermatrix<V>,
    c: &Hypermatrix<V>,
    alg: &AlgebraSpec<V>,
) -> Result<Hypermatrix<V>> {
    alg.check_arity(3)?;
    for (name, h) in [("A", a), ("B", b), ("C", c)] {
        if h.shape().order() != 3 {
            return Err(CoreError::Conformability(format!("{name} has order {}, expected 3", h.shape().order())));
        }
    }
    let (m, l, p) = (a.dims()[0], a.dims()[1], a.dims()[2]);
    let n = b.dims()[1];
    let checks = [
        ("B axis 0 (m)", b.dims()[0], m),
        ("B axis 2 (ℓ)", b.dims()[2], l),
        ("C axis 0 (ℓ)", c.dims()[0], l),
        ("C axis 1 (n)", c.dims()[1], n),
        ("C axis 2 (p)", c.dims()[2], p),
    ];
    for (axis, got, want) in checks {
        if got != want {
            return Err(CoreError::Conformability(format!(
                "{axis} has extent {got}, expected {want} (shapes {}, {}, {})",
                a.shape(),
                b.shape(),
                c.shape()
            )));
        }
    }
    Hypermatrix::from_fn(&[m, n, p], |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let terms = (0..l)
            .map(|t| alg.compose(&[a.get(&[i, t, k]), b.get(&[i, j, t]), c.get(&[t, j, k])]))
            .collect();
        alg.combine(terms)
    })
}

/// Shared contraction extent of an order-m product, where operand t carries the
/// contraction index on axis (t+1) mod m and matches the output on every other axis.
pub fn validate_conformable(shapes: &[Shape]) -> Result<usize> {
    let m = shapes.len();
    if m < 2 {
        return Err(CoreError::Conformability(format!("need at least 2 operands, got {m}")));
    }
    for (t, s) in shapes.iter().enumerate() {
        if s.order() != m {
            return Err(CoreError::Conformability(format!(
                "operand {t} has order {} but {m} operands need order {m}",
                s.order()
            )));
        }
    }
    let l = shapes[0].dims()[1 % m];
    // output extent on axis a comes from operand a, whose contraction axis is a+1
    let out: Vec<usize> = (0..m).map(|a| shapes[a].dims()[a]).collect();
    for (t, s) in shapes.iter().enumerate() {
        let caxis = (t + 1) % m;
        for (a, &d) in s.dims().iter().enumerate() {
            let want = if a == caxis { l } else { out[a] };
            if d != want {
                let role = if a == caxis { "contraction extent" } else { "output extent" };
                return Err(CoreError::Conformability(format!(
                    "operand {t} axis {a} has extent {d}, expected {role} {want}; shapes {}",
                    shapes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
                )));
            }
        }
    }
    Ok(l)
}

/// Order-m product generalizing the Bhattacharya–Mesner hypermatrix product.
pub fn cprod_general<V: Clone>(operands: &[Hypermatrix<V>], alg: &AlgebraSpec<V>) -> Result<Hypermatrix<V>> {
    let shapes: Vec<Shape> = operands.iter().map(|h| h.shape().clone()).collect();
    let l = validate_conformable(&shapes)?;
    alg.check_arity(operands.len())?;
    let m = operands.len();
    let out: Vec<usize> = (0..m).map(|a| shapes[a].dims()[a]).collect();
    let mut slot = vec![0usize; m];
    Hypermatrix::from_fn(&out, |ix| {
        let terms = (0..l)
            .map(|j| {
                let args: Vec<&V> = operands
                    .iter()
                    .enumerate()
                    .map(|(t, op)| {
                        slot.copy_from_slice(ix);
                        slot[(t + 1) % m] = j;
                        op.get(&slot)
                    })
                    .collect();
                alg.compose(&args)
            })
            .collect();
        alg.combine(terms)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_prod() -> AlgebraSpec<i64> {
        AlgebraSpec::new("sum-prod", None, |v: Vec<i64>| v.into_iter().sum(), |a: &[&i64]| a.iter().copied().product())
    }

    #[test]
    fn integer_matmul() {
        let a = Hypermatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let b = Hypermatrix::from_rows(vec![vec![5, 6], vec![7, 8]]).unwrap();
        let c = cprod2(&a, &b, &sum_prod()).unwrap();
        assert_eq!(c, Hypermatrix::from_rows(vec![vec![19, 22], vec![43, 50]]).unwrap());
    }

    #[test]
    fn mismatch_names_both_shapes() {
        let a = Hypermatrix::filled(&[2, 3], 1i64).unwrap();
        let b = Hypermatrix::filled(&[4, 2], 1i64).unwrap();
        let err = cprod2(&a, &b, &sum_prod()).unwrap_err().to_string();
        assert!(err.contains("2×3") && err.contains("4×2"), "{err}");
    }

    #[test]
    fn conformability_examples() {
        let s = |d: &[usize]| Shape::new(d.to_vec()).unwrap();
        assert_eq!(validate_conformable(&[s(&[2, 3]), s(&[3, 4])]).unwrap(), 3);
        assert_eq!(validate_conformable(&[s(&[2, 3, 2]), s(&[2, 2, 3]), s(&[3, 2, 2])]).unwrap(), 3);
        assert!(validate_conformable(&[s(&[2, 3]), s(&[4, 2])]).is_err());
        let err = validate_conformable(&[s(&[2, 3, 2]), s(&[2, 2, 4]), s(&[3, 2, 2])]).unwrap_err();
        assert!(err.to_string().contains("operand 1 axis 2"), "{err}");
    }

    #[test]
    fn all_ones_products() {
        let ones3 = Hypermatrix::filled(&[2, 2, 2], 1i64).unwrap();
        let d = cprod3(&ones3, &ones3, &ones3, &sum_prod()).unwrap();
        assert!(d.entries().iter().all(|&x| x == 2));
        let ones4 = Hypermatrix::filled(&[2, 2, 2, 2], 1i64).unwrap();
        let ops = vec![ones4.clone(), ones4.clone(), ones4.clone(), ones4];
        let e = cprod_general(&ops, &sum_prod()).unwrap();
        assert_eq!(e.dims(), &[2, 2, 2, 2]);
        assert!(e.entries().iter().all(|&x| x == 2));
    }

    #[test]
    fn single_slice_contraction() {
        // ℓ = 1: the reduction sees exactly one composed term
        let a = Hypermatrix::from_fn(&[2, 1, 2], |ix| (ix[0] * 2 + ix[2] + 1) as i64).unwrap();
        let b = Hypermatrix::from_fn(&[2, 3, 1], |ix| (ix[0] + ix[1] + 2) as i64).unwrap();
        let c = Hypermatrix::from_fn(&[1, 3, 2], |ix| (ix[1] * ix[2] + 1) as i64).unwrap();
        let d = cprod3(&a, &b, &c, &sum_prod()).unwrap();
        for ix in d.shape().indices() {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            assert_eq!(*d.get(&ix), a.get(&[i, 0, k]) * b.get(&[i, j, 0]) * c.get(&[0, j, k]));
        }
    }

    #[test]
    fn arity_enforced() {
        let pow = AlgebraSpec::new("pow", Some(2), |v: Vec<i64>| v[0], |a: &[&i64]| a[0].pow(*a[1] as u32));
        let x = Hypermatrix::filled(&[2, 2, 2], 1i64).unwrap();
        assert!(matches!(cprod3(&x, &x, &x, &pow), Err(CoreError::Arity { .. })));
    }
}
