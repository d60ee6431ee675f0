//! Dense matrices over a roster ring. A matrix with r rows and c columns
//! represents a map R^c -> R^r acting on column vectors from the left.

use super::{Elem, Ring};
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Clone)]
pub struct Matrix {
    pub ring: Arc<Ring>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {} [", self.rows, self.cols, self.ring.name)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.format(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Matrix {
    pub fn new(ring: Arc<Ring>, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { ring, rows, cols, data }
    }

    pub fn zero(ring: Arc<Ring>, rows: usize, cols: usize) -> Matrix {
        let z = ring.zero();
        Matrix::new(ring, rows, cols, vec![z; rows * cols])
    }

    pub fn identity(ring: Arc<Ring>, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn from_fn(
        ring: Arc<Ring>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(ring, rows, cols, data)
    }

    pub fn from_i64(ring: Arc<Ring>, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&n| ring.from_i64(n)).collect();
        Matrix::new(ring, rows, cols, data)
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let one = self.ring.one();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.at(i, j);
                if i == j {
                    if *e != one {
                        return false;
                    }
                } else if !self.ring.is_zero(e) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| {
            self.at(j, i).clone()
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::new(
            self.ring.clone(),
            self.rows,
            self.cols,
            self.data.iter().map(|e| self.ring.neg(e)).collect(),
        )
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        Matrix::new(
            self.ring.clone(),
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| self.ring.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        Matrix::new(
            self.ring.clone(),
            self.rows,
            self.cols,
            self.data.iter().map(|e| self.ring.mul(c, e)).collect(),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let ring = &self.ring;
        Matrix::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                let b = other.at(k, j);
                if ring.is_zero(b) {
                    continue;
                }
                acc = ring.add(&acc, &ring.mul(a, b));
            }
            acc
        })
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, 1, |i, _| self.at(i, j).clone())
    }

    pub fn columns(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.cols).map(|j| self.column(j))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows, idx.len(), |i, j| {
            self.at(i, idx[j]).clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring.clone(), idx.len(), self.cols, |i, j| {
            self.at(idx[i], j).clone()
        })
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hcat shape");
        Matrix::from_fn(self.ring.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vcat shape");
        Matrix::from_fn(self.ring.clone(), self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let z = Matrix::zero(self.ring.clone(), self.rows, other.cols);
        let z2 = Matrix::zero(self.ring.clone(), other.rows, self.cols);
        self.hcat(&z).vcat(&z2.hcat(other))
    }

    /// Assemble a block matrix from a grid of optional blocks; None means zero.
    /// Row heights and column widths are given explicitly.
    pub fn from_blocks(
        ring: Arc<Ring>,
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<&Matrix>>],
    ) -> Matrix {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Matrix::zero(ring, rows, cols);
        let mut roff = 0;
        for (bi, &rh) in row_sizes.iter().enumerate() {
            let mut coff = 0;
            for (bj, &cw) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!((b.rows, b.cols), (rh, cw), "block {bi},{bj} shape");
                    for i in 0..rh {
                        for j in 0..cw {
                            out.set(roff + i, coff + j, b.at(i, j).clone());
                        }
                    }
                }
                coff += cw;
            }
            roff += rh;
        }
        out
    }

    /// Extract a sub-block.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.ring.clone(), rows, cols, |i, j| {
            self.at(r0 + i, c0 + j).clone()
        })
    }

    /// Kronecker product, with vec(A X B) = (B^T (x) A) vec(X) for column-major
    /// vec. Used to linearize matrix equations.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let ring = &self.ring;
        Matrix::from_fn(
            self.ring.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (ia, ib) = (i / other.rows, i % other.rows);
                let (ja, jb) = (j / other.cols, j % other.cols);
                ring.mul(self.at(ia, ja), other.at(ib, jb))
            },
        )
    }

    /// Column-major vectorization as a column vector.
    pub fn vec(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.rows * self.cols, 1, |i, _| {
            let col = i / self.rows;
            let row = i % self.rows;
            self.at(row, col).clone()
        })
    }

    /// Inverse of column-major vectorization.
    pub fn unvec(ring: Arc<Ring>, v: &Matrix, rows: usize, cols: usize) -> Matrix {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        Matrix::from_fn(ring, rows, cols, |i, j| v.at(j * rows + i, 0).clone())
    }

    pub fn map_ring(&self, target: Arc<Ring>, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix::new(
            target,
            self.rows,
            self.cols,
            self.data.iter().map(f).collect(),
        )
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn check_dims(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::arg(format!(
                "expected {}x{} matrix, got {}x{}",
                rows, cols, self.rows, self.cols
            )));
        }
        Ok(())
    }
}
