//! Smith normal form, exact linear solving and kernels.
//!
//! The Smith reduction runs over Euclidean-capable rings with deterministic
//! pivoting: the nonzero entry of smallest norm wins, ties broken by lowest
//! row then column index. Solving and kernels over `Z/m` and `k[x]/(f)` lift
//! to the Euclidean cover and append modulus relations, so one kernel serves
//! every supported ring.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Norm, Ring};

/// `u * m * v = d` with `u`, `v` invertible (inverses tracked) and `d`
/// diagonal with a divisibility chain, canonicalized per ring.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Elem> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).clone()).collect()
    }
}

struct Reduction {
    ring: Ring,
    d: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Reduction {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_axpy(&mut self, target: usize, source: usize, c: &Elem) {
        let neg = self.ring.neg(c);
        self.d.row_axpy(target, source, c);
        self.u.row_axpy(target, source, c);
        self.u_inv.col_axpy(source, target, &neg);
    }

    fn col_axpy(&mut self, target: usize, source: usize, c: &Elem) {
        let neg = self.ring.neg(c);
        self.d.col_axpy(target, source, c);
        self.v.col_axpy(target, source, c);
        self.v_inv.row_axpy(source, target, &neg);
    }

    fn scale_row(&mut self, i: usize, unit: &Elem) {
        let inv = self.ring.inv(unit).expect("scaling by a non-unit");
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    /// Deterministic pivot in the trailing submatrix.
    fn pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Norm, usize, usize)> = None;
        for i in k..self.d.rows() {
            for j in k..self.d.cols() {
                if let Some(n) = self.ring.norm(self.d.at(i, j)) {
                    let better = match &best {
                        None => true,
                        Some((bn, _, _)) => n < *bn,
                    };
                    if better {
                        best = Some((n, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

/// Smith normal form over a Euclidean-capable ring.
pub fn smith_normal_form(m: &Matrix) -> Result<Snf> {
    let ring = m.ring().clone();
    if !ring.is_euclidean() {
        return Err(Error::NotEuclidean(ring.to_string()));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut red = Reduction {
        ring: ring.clone(),
        d: m.clone(),
        u: Matrix::identity(ring.clone(), rows),
        u_inv: Matrix::identity(ring.clone(), rows),
        v: Matrix::identity(ring.clone(), cols),
        v_inv: Matrix::identity(ring.clone(), cols),
    };
    let steps = rows.min(cols);
    'outer: for k in 0..steps {
        loop {
            let Some((pi, pj)) = red.pivot(k) else {
                break 'outer;
            };
            red.swap_rows(k, pi);
            red.swap_cols(k, pj);
            let mut dirty = false;
            for i in k + 1..rows {
                if ring.is_zero(red.d.at(i, k)) {
                    continue;
                }
                let (q, r) = ring.divrem(red.d.at(i, k), red.d.at(k, k))?;
                if !ring.is_zero(&q) {
                    red.row_axpy(i, k, &ring.neg(&q));
                }
                if !ring.is_zero(&r) {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            for j in k + 1..cols {
                if ring.is_zero(red.d.at(k, j)) {
                    continue;
                }
                let (q, r) = ring.divrem(red.d.at(k, j), red.d.at(k, k))?;
                if !ring.is_zero(&q) {
                    red.col_axpy(j, k, &ring.neg(&q));
                }
                if !ring.is_zero(&r) {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Fold in any entry not divisible by the pivot so the
            // divisibility chain holds.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if ring.try_div(red.d.at(i, j), red.d.at(k, k)).is_none() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = ring.one();
                    red.row_axpy(k, i, &one);
                }
                None => break,
            }
        }
        let (canon, unit) = ring.canonize(red.d.at(k, k));
        if canon != *red.d.at(k, k) {
            red.scale_row(k, &unit);
        }
    }
    Ok(Snf {
        u: red.u,
        u_inv: red.u_inv,
        d: red.d,
        v: red.v,
        v_inv: red.v_inv,
    })
}

fn lift_matrix(m: &Matrix, cover: &Ring) -> Matrix {
    m.map_entries(cover.clone(), |e| e.clone())
}

fn reduce_matrix(m: &Matrix, target: &Ring) -> Matrix {
    m.map_entries(target.clone(), |e| target.reduce_from_cover(e.clone()))
}

/// Solves `A X = B` over a Euclidean ring via the Smith form.
fn solve_euclidean(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    let ring = a.ring().clone();
    let snf = smith_normal_form(a)?;
    let c = snf.u.mul(b);
    let diag = snf.diagonal();
    let mut y = Matrix::zero(ring.clone(), a.cols(), b.cols());
    for col in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = c.at(i, col);
            let d = diag.get(i);
            match d {
                Some(d) if !ring.is_zero(d) => match ring.try_div(rhs, d) {
                    Some(q) => {
                        if i < a.cols() {
                            y.set(i, col, q);
                        } else if !ring.is_zero(rhs) {
                            return Ok(None);
                        }
                    }
                    None => return Ok(None),
                },
                _ => {
                    if !ring.is_zero(rhs) {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(snf.v.mul(&y)))
}

/// Solves `A X = B` exactly; quotient rings lift to the Euclidean cover with
/// appended modulus relations. Returns `None` when no solution exists.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(
            a.ring().to_string(),
            b.ring().to_string(),
        ));
    }
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch(format!(
            "A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let ring = a.ring().clone();
    let (cover, modulus) = ring.cover();
    match modulus {
        None => solve_euclidean(a, b),
        Some(m) => {
            let lifted = lift_matrix(a, &cover);
            let block = Matrix::scalar(cover.clone(), a.rows(), &m);
            let aug = lifted.hcat(&block);
            let rhs = lift_matrix(b, &cover);
            match solve_euclidean(&aug, &rhs)? {
                None => Ok(None),
                Some(x) => {
                    let head = x.take_rows(0..a.cols());
                    Ok(Some(reduce_matrix(&head, &ring)))
                }
            }
        }
    }
}

/// Columns generating the kernel `{x : A x = 0}`. Over Euclidean domains the
/// columns form a basis; over quotient rings they are generators.
pub fn kernel_columns(a: &Matrix) -> Result<Matrix> {
    let ring = a.ring().clone();
    let (cover, modulus) = ring.cover();
    match modulus {
        None => {
            let snf = smith_normal_form(a)?;
            let diag = snf.diagonal();
            let keep: Vec<usize> = (0..a.cols())
                .filter(|&j| diag.get(j).is_none_or(|d| ring.is_zero(d)))
                .collect();
            let mut out = Matrix::zero(ring.clone(), a.cols(), keep.len());
            for (jj, &j) in keep.iter().enumerate() {
                for i in 0..a.cols() {
                    out.set(i, jj, snf.v.at(i, j).clone());
                }
            }
            Ok(out)
        }
        Some(m) => {
            let lifted = lift_matrix(a, &cover);
            let block = Matrix::scalar(cover.clone(), a.rows(), &m);
            let aug = lifted.hcat(&block);
            let full = kernel_columns(&aug)?;
            let head = full.take_rows(0..a.cols());
            Ok(reduce_matrix(&head, &ring).drop_zero_columns())
        }
    }
}

/// Does `target` lie in the column span of `gens`?
pub fn in_span(gens: &Matrix, target: &Matrix) -> Result<bool> {
    Ok(solve(gens, target)?.is_some())
}

/// Greedily drops generator columns lying in the span of the others,
/// scanning from the right for determinism.
pub fn prune_columns(gens: &Matrix) -> Result<Matrix> {
    let mut keep: Vec<usize> = (0..gens.cols()).collect();
    let mut j = gens.cols();
    while j > 0 {
        j -= 1;
        let pos = keep.iter().position(|&c| c == j).unwrap();
        let others: Vec<usize> = keep.iter().copied().filter(|&c| c != j).collect();
        let mut m = Matrix::zero(gens.ring().clone(), gens.rows(), others.len());
        for (jj, &c) in others.iter().enumerate() {
            for i in 0..gens.rows() {
                m.set(i, jj, gens.at(i, c).clone());
            }
        }
        if in_span(&m, &gens.take_columns(j..j + 1))? {
            keep.remove(pos);
        }
    }
    let mut out = Matrix::zero(gens.ring().clone(), gens.rows(), keep.len());
    for (jj, &c) in keep.iter().enumerate() {
        for i in 0..gens.rows() {
            out.set(i, jj, gens.at(i, c).clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::integers()
    }

    #[test]
    fn snf_diag_2_3() {
        let m = Matrix::from_rows_i64(z(), &[vec![2, 0], vec![0, 3]]).unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        assert_eq!(snf.diagonal(), vec![z().from_i64(1), z().from_i64(6)]);
        assert_eq!(snf.u.mul(&snf.u_inv), Matrix::identity(z(), 2));
        assert_eq!(snf.v.mul(&snf.v_inv), Matrix::identity(z(), 2));
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = Matrix::identity(z(), 3);
        let snf = smith_normal_form(&id).unwrap();
        assert_eq!(snf.d, id);
        let zero = Matrix::zero(z(), 2, 3);
        let snf = smith_normal_form(&zero).unwrap();
        assert!(snf.d.is_zero());
    }

    #[test]
    fn snf_known_4x4() {
        let m = Matrix::from_rows_i64(
            z(),
            &[
                vec![-6, 111, -36, 6],
                vec![5, -672, 210, 74],
                vec![0, -255, 81, 24],
                vec![-7, 255, -81, -10],
            ],
        )
        .unwrap();
        let snf = smith_normal_form(&m).unwrap();
        assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);
        let diag: Vec<_> = snf.diagonal();
        assert_eq!(
            diag,
            vec![
                z().from_i64(1),
                z().from_i64(3),
                z().from_i64(21),
                z().from_i64(0)
            ]
        );
    }

    #[test]
    fn solve_examples() {
        let a = Matrix::from_rows_i64(z(), &[vec![2]]).unwrap();
        let b4 = Matrix::from_rows_i64(z(), &[vec![4]]).unwrap();
        let b3 = Matrix::from_rows_i64(z(), &[vec![3]]).unwrap();
        assert_eq!(
            solve(&a, &b4).unwrap().unwrap(),
            Matrix::from_rows_i64(z(), &[vec![2]]).unwrap()
        );
        assert!(solve(&a, &b3).unwrap().is_none());

        let f5 = Ring::prime_field(num::BigUint::from(5u32)).unwrap();
        let a = Matrix::from_rows_i64(f5.clone(), &[vec![2]]).unwrap();
        let b = Matrix::from_rows_i64(f5.clone(), &[vec![3]]).unwrap();
        assert_eq!(
            solve(&a, &b).unwrap().unwrap(),
            Matrix::from_rows_i64(f5, &[vec![4]]).unwrap()
        );
    }

    #[test]
    fn solve_modular_lifts() {
        let m8 = Ring::modular(8u32).unwrap();
        let a = Matrix::from_rows_i64(m8.clone(), &[vec![2]]).unwrap();
        let b = Matrix::from_rows_i64(m8.clone(), &[vec![6]]).unwrap();
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul(&x), b);
        let b1 = Matrix::from_rows_i64(m8.clone(), &[vec![1]]).unwrap();
        assert!(solve(&a, &b1).unwrap().is_none());
    }

    #[test]
    fn kernel_examples() {
        // kernel of (2  4) over Z is spanned by (2, -1)
        let a = Matrix::from_rows_i64(z(), &[vec![2, 4]]).unwrap();
        let k = kernel_columns(&a).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());

        // kernel of multiplication by x on k[x]/(x^2) is (x)
        let f2 = Ring::prime_field(num::BigUint::from(2u32)).unwrap();
        let f2x = Ring::poly(f2, "x").unwrap();
        let modulus = f2x.poly_from_i64(&[0, 0, 1]).unwrap();
        let rq = Ring::poly_quot(f2x, modulus).unwrap();
        let x = rq.var_elem().unwrap();
        let a = Matrix::new(rq.clone(), 1, 1, vec![x.clone()]).unwrap();
        let k = kernel_columns(&a).unwrap();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        assert!(!k.is_zero());
    }

    #[test]
    fn prune_removes_redundant() {
        let g = Matrix::from_rows_i64(z(), &[vec![2, 4, 3]]).unwrap();
        let p = prune_columns(&g).unwrap();
        // 2 and 3 generate (gcd 1); 4 is redundant. Pruning keeps a spanning set.
        for j in 0..g.cols() {
            assert!(in_span(&p, &g.take_columns(j..j + 1)).unwrap());
        }
        assert!(p.cols() <= 2);
    }
}
