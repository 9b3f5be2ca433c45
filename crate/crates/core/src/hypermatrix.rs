use std::fmt;

use crate::error::{CoreError, Result};

/// Extents of a dense hypermatrix. The order is the number of extents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    dims: Vec<usize>,
}

impl Shape {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() || dims.contains(&0) {
            return Err(CoreError::BadShape { dims });
        }
        Ok(Shape { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major strides: the last index varies fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for a in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * self.dims[a + 1];
        }
        strides
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut flat = 0;
        for (i, (&x, &d)) in idx.iter().zip(&self.dims).enumerate() {
            assert!(x < d, "index {x} out of range {d} on axis {i}");
            flat = flat * d + x;
        }
        flat
    }

    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for a in (0..self.dims.len()).rev() {
            idx[a] = flat % self.dims[a];
            flat /= self.dims[a];
        }
        idx
    }

    /// All multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(move |f| self.unravel(f))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("×"))
    }
}

/// Dense order-m array, entries stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypermatrix<V> {
    shape: Shape,
    entries: Vec<V>,
}

impl<V> Hypermatrix<V> {
    pub fn new(shape: Shape, entries: Vec<V>) -> Result<Self> {
        if entries.len() != shape.len() {
            return Err(CoreError::EntryCount {
                dims: shape.dims.clone(),
                expected: shape.len(),
                got: entries.len(),
            });
        }
        Ok(Hypermatrix { shape, entries })
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> V) -> Result<Self> {
        let shape = Shape::new(dims.to_vec())?;
        let entries = shape.indices().map(|idx| f(&idx)).collect();
        Ok(Hypermatrix { shape, entries })
    }

    /// Builds a matrix from its rows.
    pub fn from_rows(rows: Vec<Vec<V>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(CoreError::Conformability("ragged rows".into()));
        }
        let shape = Shape::new(vec![m, n])?;
        Hypermatrix::new(shape, rows.into_iter().flatten().collect())
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn entries(&self) -> &[V] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<V> {
        self.entries
    }

    pub fn get(&self, idx: &[usize]) -> &V {
        &self.entries[self.shape.flat_index(idx)]
    }

    pub fn get_mut(&mut self, idx: &[usize]) -> &mut V {
        let flat = self.shape.flat_index(idx);
        &mut self.entries[flat]
    }

    pub fn set(&mut self, idx: &[usize], v: V) {
        *self.get_mut(idx) = v;
    }

    pub fn map<W>(&self, f: impl FnMut(&V) -> W) -> Hypermatrix<W> {
        Hypermatrix { shape: self.shape.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<W, E>(&self, f: impl FnMut(&V) -> std::result::Result<W, E>) -> std::result::Result<Hypermatrix<W>, E> {
        let entries = self.entries.iter().map(f).collect::<std::result::Result<Vec<_>, E>>()?;
        Ok(Hypermatrix { shape: self.shape.clone(), entries })
    }

    /// Rows of an order-2 hypermatrix.
    pub fn rows(&self) -> Vec<&[V]> {
        assert_eq!(self.shape.order(), 2, "rows() needs a matrix");
        self.entries.chunks(self.shape.dims[1]).collect()
    }
}

impl<V: Clone> Hypermatrix<V> {
    pub fn filled(dims: &[usize], v: V) -> Result<Self> {
        let shape = Shape::new(dims.to_vec())?;
        let entries = vec![v; shape.len()];
        Ok(Hypermatrix { shape, entries })
    }

    pub fn transpose(&self) -> Hypermatrix<V> {
        assert_eq!(self.shape.order(), 2, "transpose needs a matrix");
        let (m, n) = (self.shape.dims[0], self.shape.dims[1]);
        Hypermatrix::from_fn(&[n, m], |ix| self.get(&[ix[1], ix[0]]).clone()).expect("nonempty")
    }

    /// Column `j` of a matrix as an n×1 hypermatrix.
    pub fn column(&self, j: usize) -> Hypermatrix<V> {
        assert_eq!(self.shape.order(), 2, "column needs a matrix");
        Hypermatrix::from_fn(&[self.shape.dims[0], 1], |ix| self.get(&[ix[0], j]).clone()).expect("nonempty")
    }
}

impl<V: fmt::Display> fmt::Display for Hypermatrix<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // nested brackets, one level per axis
        fn rec<V: fmt::Display>(h: &Hypermatrix<V>, axis: usize, base: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let dims = h.dims();
            let stride: usize = dims[axis + 1..].iter().product();
            write!(f, "[")?;
            for i in 0..dims[axis] {
                if i > 0 {
                    write!(f, ", ")?;
                }
                let off = base + i * stride;
                if axis + 1 == dims.len() {
                    write!(f, "{}", h.entries[off])?;
                } else {
                    rec(h, axis + 1, off, f)?;
                }
            }
            write!(f, "]")
        }
        rec(self, 0, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_layout() {
        let s = Shape::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.strides(), vec![12, 4, 1]);
        assert_eq!(s.flat_index(&[1, 2, 3]), 23);
        assert_eq!(s.unravel(23), vec![1, 2, 3]);
        for f in 0..s.len() {
            assert_eq!(s.flat_index(&s.unravel(f)), f);
        }
    }

    #[test]
    fn zero_extent_rejected() {
        assert!(Shape::new(vec![2, 0]).is_err());
        assert!(Shape::new(Vec::<usize>::new()).is_err());
    }

    #[test]
    fn from_rows_and_display() {
        let h = Hypermatrix::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(*h.get(&[1, 0]), 3);
        assert_eq!(h.to_string(), "[[1, 2], [3, 4]]");
        assert_eq!(h.transpose().to_string(), "[[1, 3], [2, 4]]");
        assert!(Hypermatrix::from_rows(vec![vec![1], vec![2, 3]]).is_err());
    }

    #[test]
    fn entry_count_checked() {
        let s = Shape::new(vec![2, 2]).unwrap();
        assert!(matches!(Hypermatrix::new(s, vec![1, 2, 3]), Err(CoreError::EntryCount { .. })));
    }
}
