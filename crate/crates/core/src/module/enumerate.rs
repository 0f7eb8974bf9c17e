//! Element enumeration for finite modules; oracle fuel for brute-force
//! comparisons of Hom groups and subgroup lattices.

use super::PresentedModule;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Elem;
use std::collections::BTreeSet;

/// Key form of a coordinate vector, usable in ordered sets.
fn key(module: &PresentedModule, v: &Matrix) -> Vec<String> {
    (0..v.rows())
        .map(|i| module.ring().fmt_elem(v.at(i, 0)))
        .collect()
}

/// All elements of a finite module, each coset represented canonically (the
/// lexicographically least member).
pub struct ElementTable {
    module: PresentedModule,
    relation_span: Vec<Vec<Elem>>,
    reps: Vec<Matrix>,
}

impl ElementTable {
    pub(super) fn build(module: &PresentedModule) -> Result<ElementTable> {
        let ring = module.ring().clone();
        let scalars = ring.elements()?;
        let g = module.generators();
        if scalars
            .len()
            .checked_pow(g as u32)
            .is_none_or(|n| n > 1 << 18)
        {
            return Err(Error::SizeLimit("module too large to enumerate".into()));
        }
        // Additive closure of the scaled relation columns.
        let rel = module.relations();
        let zero_vec = vec![ring.zero(); g];
        let mut span: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut span_elems: Vec<Vec<Elem>> = Vec::new();
        let mut work = vec![zero_vec.clone()];
        span.insert(vec_key(&ring, &zero_vec));
        span_elems.push(zero_vec.clone());
        while let Some(v) = work.pop() {
            for j in 0..rel.cols() {
                for s in &scalars {
                    let mut w = v.clone();
                    for i in 0..g {
                        let t = ring.mul(s, rel.at(i, j));
                        w[i] = ring.add(&w[i], &t);
                    }
                    if span.insert(vec_key(&ring, &w)) {
                        span_elems.push(w.clone());
                        work.push(w);
                    }
                }
            }
        }
        // Walk all vectors; keep the least member of each unseen coset.
        let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut reps = Vec::new();
        let mut idx = vec![0usize; g];
        loop {
            let v: Vec<Elem> = idx.iter().map(|&i| scalars[i].clone()).collect();
            if !seen.contains(&vec_key(&ring, &v)) {
                // Mark the whole coset.
                let mut coset: Vec<Vec<String>> = Vec::with_capacity(span_elems.len());
                for s in &span_elems {
                    let w: Vec<Elem> = (0..g).map(|i| ring.add(&v[i], &s[i])).collect();
                    coset.push(vec_key(&ring, &w));
                }
                for k in coset {
                    seen.insert(k);
                }
                let mut col = Matrix::zero(ring.clone(), g, 1);
                for (i, e) in v.iter().enumerate() {
                    col.set(i, 0, e.clone());
                }
                reps.push(col);
            }
            let mut pos = 0;
            loop {
                if pos == g {
                    return Ok(ElementTable {
                        module: module.clone(),
                        relation_span: span_elems,
                        reps,
                    });
                }
                idx[pos] += 1;
                if idx[pos] < scalars.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Matrix] {
        &self.reps
    }

    /// Canonical representative of the coset of `v`.
    pub fn rep(&self, v: &Matrix) -> Vec<String> {
        let ring = self.module.ring();
        let mut best: Option<Vec<String>> = None;
        for s in &self.relation_span {
            let w: Vec<Elem> = (0..v.rows()).map(|i| ring.add(v.at(i, 0), &s[i])).collect();
            let k = vec_key(ring, &w);
            if best.as_ref().is_none_or(|b| k < *b) {
                best = Some(k);
            }
        }
        best.unwrap_or_else(|| key(&self.module, v))
    }
}

fn vec_key(ring: &crate::ring::Ring, v: &[Elem]) -> Vec<String> {
    v.iter().map(|e| ring.fmt_elem(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn z8_mod_2_has_two_cosets() {
        let m8 = Ring::modular(8u32).unwrap();
        let m = PresentedModule::cyclic(m8.clone(), m8.from_i64(2)).unwrap();
        let table = m.element_table().unwrap();
        assert_eq!(table.len(), 2);
    }

    #[test]
    fn free_rank_one_over_f4() {
        let f2 = Ring::prime_field(num::BigUint::from(2u32)).unwrap();
        let f2x = Ring::poly(f2, "x").unwrap();
        let modulus = f2x.parse("x^2 + x + 1").unwrap();
        let f4 = Ring::poly_quot(f2x, modulus).unwrap();
        let m = PresentedModule::free(f4, 1);
        assert_eq!(m.element_table().unwrap().len(), 4);
    }
}
