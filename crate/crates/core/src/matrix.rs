//! Dense matrices over a [`Ring`], row-major, with exact entries.

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.fmt_elem(self.at(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            ring.expect(e)?;
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Matrix {
        let entries = vec![ring.zero(); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn scalar(ring: Ring, n: usize, a: &Elem) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, a.clone());
        }
        m
    }

    pub fn from_rows_i64(ring: Ring, rows: &[Vec<i64>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&n| ring.from_i64(n)))
            .collect();
        Matrix::new(ring, r, c, entries)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(|e| self.ring.neg(e)).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Matrix::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = self.ring.mul(a, other.at(k, j));
                    let acc = self.ring.add(out.at(i, j), &prod);
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    pub fn scale(&self, a: &Elem) -> Matrix {
        let entries = self.entries.iter().map(|e| self.ring.mul(a, e)).collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.rows, other.rows, "row mismatch in hcat");
        let mut out = Matrix::zero(self.ring.clone(), self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        assert_eq!(self.cols, other.cols, "col mismatch in vcat");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn column(&self, j: usize) -> Matrix {
        let mut out = Matrix::zero(self.ring.clone(), self.rows, 1);
        for i in 0..self.rows {
            out.set(i, 0, self.at(i, j).clone());
        }
        out
    }

    pub fn take_columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(self.ring.clone(), self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                out.set(i, jj, self.at(i, j).clone());
            }
        }
        out
    }

    pub fn take_rows(&self, range: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zero(self.ring.clone(), range.len(), self.cols);
        for (ii, i) in range.clone().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.at(i, j).clone());
            }
        }
        out
    }

    /// Drops columns that are entirely zero.
    pub fn drop_zero_columns(&self) -> Matrix {
        let keep: Vec<usize> = (0..self.cols)
            .filter(|&j| (0..self.rows).any(|i| !self.ring.is_zero(self.at(i, j))))
            .collect();
        let mut out = Matrix::zero(self.ring.clone(), self.rows, keep.len());
        for i in 0..self.rows {
            for (jj, &j) in keep.iter().enumerate() {
                out.set(i, jj, self.at(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product, blocks indexed row-major by `self`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut out = Matrix::zero(
            self.ring.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if self.ring.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let v = self.ring.mul(a, other.at(k, l));
                        out.set(i * other.rows + k, j * other.cols + l, v);
                    }
                }
            }
        }
        out
    }

    /// Column-major vectorization as a single-column matrix.
    pub fn vec_col_major(&self) -> Matrix {
        let mut out = Matrix::zero(self.ring.clone(), self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.set(j * self.rows + i, 0, self.at(i, j).clone());
            }
        }
        out
    }

    /// Inverse of [`Matrix::vec_col_major`].
    pub fn unvec_col_major(ring: Ring, rows: usize, cols: usize, v: &Matrix) -> Matrix {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, rows * cols);
        let mut out = Matrix::zero(ring, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                out.set(i, j, v.at(j * rows + i, 0).clone());
            }
        }
        out
    }

    pub fn map_entries(&self, ring: Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`
    pub fn row_axpy(&mut self, target: usize, source: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.at(source, j));
            let v = self.ring.add(self.at(target, j), &v);
            self.set(target, j, v);
        }
    }

    /// `col[target] += c * col[source]`
    pub fn col_axpy(&mut self, target: usize, source: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = self.ring.mul(c, self.at(i, source));
            let v = self.ring.add(self.at(i, target), &v);
            self.set(i, target, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.at(i, j));
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = self.ring.mul(c, self.at(i, j));
            self.set(i, j, v);
        }
    }
}

/// Assembles a matrix from a grid of optional blocks with prescribed
/// row/column block sizes; missing blocks are zero.
pub struct BlockMatrix {
    ring: Ring,
    row_sizes: Vec<usize>,
    col_sizes: Vec<usize>,
    blocks: Vec<Option<Matrix>>,
}

impl BlockMatrix {
    pub fn new(ring: Ring, row_sizes: Vec<usize>, col_sizes: Vec<usize>) -> BlockMatrix {
        let blocks = vec![None; row_sizes.len() * col_sizes.len()];
        BlockMatrix {
            ring,
            row_sizes,
            col_sizes,
            blocks,
        }
    }

    pub fn set(&mut self, bi: usize, bj: usize, m: Matrix) {
        assert_eq!(m.rows(), self.row_sizes[bi], "block row size");
        assert_eq!(m.cols(), self.col_sizes[bj], "block col size");
        self.blocks[bi * self.col_sizes.len() + bj] = Some(m);
    }

    pub fn build(self) -> Matrix {
        let rows: usize = self.row_sizes.iter().sum();
        let cols: usize = self.col_sizes.iter().sum();
        let mut out = Matrix::zero(self.ring, rows, cols);
        let row_off: Vec<usize> = self
            .row_sizes
            .iter()
            .scan(0, |acc, &s| {
                let v = *acc;
                *acc += s;
                Some(v)
            })
            .collect();
        let col_off: Vec<usize> = self
            .col_sizes
            .iter()
            .scan(0, |acc, &s| {
                let v = *acc;
                *acc += s;
                Some(v)
            })
            .collect();
        for bi in 0..self.row_sizes.len() {
            for bj in 0..self.col_sizes.len() {
                if let Some(b) = &self.blocks[bi * self.col_sizes.len() + bj] {
                    for i in 0..b.rows() {
                        for j in 0..b.cols() {
                            out.set(row_off[bi] + i, col_off[bj] + j, b.at(i, j).clone());
                        }
                    }
                }
            }
        }
        out
    }
}
