//! Dense linear algebra modulo a small prime, on machine words. Backs the
//! finite-algebra side of Matlis duality, where exhaustive enumerations need
//! to stay cheap.

use crate::error::{Error, Result};

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid; a != 0 mod p, p prime
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i128) as u64
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GfMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl GfMatrix {
    pub fn new(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<GfMatrix> {
        if !(2..=(1 << 20)).contains(&p) {
            return Err(Error::InvalidRing(format!("unsupported prime {p}")));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch("entry count".into()));
        }
        Ok(GfMatrix {
            p,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        })
    }

    pub fn zero(p: u64, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> GfMatrix {
        let mut m = GfMatrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = GfMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.at(i, j) + a * other.at(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        GfMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        GfMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: u64) -> GfMatrix {
        let c = c % self.p;
        let data = self.data.iter().map(|a| a * c % self.p).collect();
        GfMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut out = GfMatrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn hcat(&self, other: &GfMatrix) -> GfMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = GfMatrix::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j));
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> GfMatrix {
        let mut out = GfMatrix::zero(self.p, self.rows, 1);
        for i in 0..self.rows {
            out.set(i, 0, self.at(i, j));
        }
        out
    }

    /// Row-reduces in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.at(row, j);
                let v = self.at(pr, j);
                self.set(row, j, v);
                self.set(pr, j, tmp);
            }
            let inv = inv_mod(self.at(row, col), self.p);
            for j in 0..self.cols {
                let v = self.at(row, j) * inv % self.p;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let f = self.at(r, col);
                    for j in 0..self.cols {
                        let v = (self.at(r, j) + (self.p - f) * self.at(row, j)) % self.p;
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the kernel `{x : Ax = 0}`, as columns.
    pub fn kernel_basis(&self) -> GfMatrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = GfMatrix::zero(self.p, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = m.at(r, fc);
                if v != 0 {
                    out.set(pc, k, self.p - v);
                }
            }
        }
        out
    }

    /// Solves `A x = b`, any single solution.
    pub fn solve(&self, b: &GfMatrix) -> Option<GfMatrix> {
        assert_eq!(self.rows, b.rows);
        assert_eq!(b.cols, 1);
        let mut aug = self.hcat(b);
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = GfMatrix::zero(self.p, self.cols, 1);
        for (r, &pc) in pivots.iter().enumerate() {
            x.set(pc, 0, aug.at(r, self.cols));
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<GfMatrix> {
        assert_eq!(self.rows, self.cols);
        let mut aug = self.hcat(&GfMatrix::identity(self.p, self.rows));
        let pivots = aug.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut out = GfMatrix::zero(self.p, self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out.set(i, j, aug.at(i, self.cols + j));
            }
        }
        Some(out)
    }

    pub fn kron(&self, other: &GfMatrix) -> GfMatrix {
        let mut out = GfMatrix::zero(self.p, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            a * other.at(k, l) % self.p,
                        );
                    }
                }
            }
        }
        out
    }

    pub fn vec_col_major(&self) -> GfMatrix {
        let mut out = GfMatrix::zero(self.p, self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.set(j * self.rows + i, 0, self.at(i, j));
            }
        }
        out
    }

    pub fn unvec_col_major(p: u64, rows: usize, cols: usize, v: &GfMatrix) -> GfMatrix {
        assert_eq!(v.rows, rows * cols);
        let mut out = GfMatrix::zero(p, rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                out.set(i, j, v.at(j * rows + i, 0));
            }
        }
        out
    }

    /// Basis of the column space, as columns (pivot columns of the input).
    pub fn column_space_basis(&self) -> GfMatrix {
        let mut t = self.transpose();
        // row space of transpose = column space
        let pivots = {
            let mut m = self.clone();
            m.rref()
        };
        let _ = &mut t;
        let mut out = GfMatrix::zero(self.p, self.rows, pivots.len());
        for (k, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, k, self.at(i, c));
            }
        }
        out
    }

    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.clone();
        for _ in 0..self.rows {
            if acc.is_zero() {
                return true;
            }
            acc = acc.mul(self);
        }
        acc.is_zero()
    }
}
