use std::fmt;
use std::ops::{Add, Mul};

use num::Zero;

use crate::error::{CoreError, Result};
use crate::hypermatrix::Hypermatrix;

/// A rectangular matrix used as a single construct entry.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockValue<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> BlockValue<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(CoreError::Domain(format!("block {rows}×{cols} with {} entries", data.len())));
        }
        Ok(BlockValue { rows, cols, data })
    }

    pub fn scalar(x: T) -> Self {
        BlockValue { rows: 1, cols: 1, data: vec![x] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoreError::Domain("ragged block".into()));
        }
        BlockValue::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols).map(<[T]>::to_vec).collect()
    }

    /// Block-diagonal direct sum, blocks placed in list order.
    pub fn direct_sum(blocks: &[BlockValue<T>]) -> Self {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = vec![T::zero(); rows * cols];
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    data[(r0 + i) * cols + c0 + j] = b.get(i, j).clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        BlockValue { rows, cols, data }
    }
}

impl<T: Clone + Zero + Mul<Output = T>> BlockValue<T> {
    /// Kronecker product.
    pub fn kron(&self, o: &BlockValue<T>) -> Self {
        let rows = self.rows * o.rows;
        let cols = self.cols * o.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let a = self.get(i / o.rows, j / o.cols).clone();
                let b = o.get(i % o.rows, j % o.cols).clone();
                data.push(a * b);
            }
        }
        BlockValue { rows, cols, data }
    }
}

impl<T: Clone + Zero + Add<Output = T>> BlockValue<T> {
    pub fn trace(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(CoreError::Domain(format!("trace of a non-square {}×{} block", self.rows, self.cols)));
        }
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc + self.get(i, i).clone()))
    }
}

/// Replaces every block entry by its trace.
pub fn trace_collapse<T: Clone + Zero + Add<Output = T>>(c: &Hypermatrix<BlockValue<T>>) -> Result<Hypermatrix<T>> {
    c.try_map(BlockValue::trace)
}

impl<T: fmt::Display> fmt::Display for BlockValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.data[i * self.cols + j].to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
