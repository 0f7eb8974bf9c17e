//! Deterministic generators shared by the integration suites.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use workbench_core::complex::{ChainMap, Complex};
use workbench_core::linalg;
use workbench_core::module::PresentedModule;
use workbench_core::{Elem, Matrix, Ring};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn f2() -> Ring {
    Ring::prime_field(num::BigUint::from(2u32)).unwrap()
}

pub fn f2x_mod_x2() -> Ring {
    let kx = Ring::poly(f2(), "x").unwrap();
    let modulus = kx.parse("x^2").unwrap();
    Ring::poly_quot(kx, modulus).unwrap()
}

pub fn f2x_mod_x3() -> Ring {
    let kx = Ring::poly(f2(), "x").unwrap();
    let modulus = kx.parse("x^3").unwrap();
    Ring::poly_quot(kx, modulus).unwrap()
}

pub fn random_elem(rng: &mut ChaCha8Rng, ring: &Ring, bound: i64) -> Elem {
    if let Ok(elems) = ring.elements() {
        let i = rng.gen_range(0..elems.len());
        return elems[i].clone();
    }
    match ring {
        Ring::Poly { .. } => {
            let deg = rng.gen_range(0..=2);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
            ring.poly_from_i64(&coeffs).unwrap()
        }
        _ => ring.from_i64(rng.gen_range(-bound..=bound)),
    }
}

pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Matrix {
    let mut m = Matrix::zero(ring.clone(), rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_elem(rng, ring, bound));
        }
    }
    m
}

/// A bounded complex of frees with `d∘d = 0`: the first differential is
/// random, later ones factor through kernels of transposes.
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    max_rank: usize,
    max_width: usize,
    bound: i64,
) -> Complex {
    let width = rng.gen_range(1..=max_width);
    let lo = -(rng.gen_range(0..=2) as i64);
    let ranks: Vec<usize> = (0..width).map(|_| rng.gen_range(0..=max_rank)).collect();
    if ranks.iter().all(|&r| r == 0) {
        return Complex::stalk(ring.clone(), 0, 1);
    }
    let mut diffs: Vec<Matrix> = Vec::new();
    for i in 0..width.saturating_sub(1) {
        let prev: Option<&Matrix> = diffs.last();
        let d = match prev {
            None => random_matrix(rng, ring, ranks[i + 1], ranks[i], bound),
            Some(p) => {
                // rows of the new differential must annihilate the columns
                // of the previous one
                let k = linalg::kernel_columns(&p.transpose()).unwrap();
                let coeff = random_matrix(rng, ring, ranks[i + 1], k.cols(), bound);
                coeff.mul(&k.transpose())
            }
        };
        diffs.push(d);
    }
    Complex::new(ring.clone(), lo, ranks, diffs).expect("constructed complex satisfies d∘d = 0")
}

/// A random chain map: a combination of homotopy-class representatives.
pub fn random_chain_map(rng: &mut ChaCha8Rng, x: &Complex, y: &Complex, bound: i64) -> ChainMap {
    let hom = x.homotopy_hom(y).unwrap();
    let n = hom.module().generators();
    if n == 0 {
        return ChainMap::zero(x, y);
    }
    let coords = random_matrix(rng, x.ring(), n, 1, bound);
    hom.to_chain_map(&coords).unwrap()
}

pub fn random_module(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    max_gens: usize,
    max_rels: usize,
    bound: i64,
) -> PresentedModule {
    let g = rng.gen_range(0..=max_gens);
    let r = rng.gen_range(0..=max_rels);
    PresentedModule::new(ring.clone(), g, random_matrix(rng, ring, g, r, bound)).unwrap()
}

/// Multisets of parts `1..=max_part` with sum at most `max_sum`; the
/// partition shapes of finite-length modules over a chain ring.
pub fn bounded_partitions(max_sum: u64, max_part: u64) -> Vec<Vec<u64>> {
    fn go(remaining: u64, max_part: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(acc.clone());
        for part in (1..=max_part.min(remaining)).rev() {
            if acc.last().is_some_and(|&l| part > l) {
                continue;
            }
            acc.push(part);
            go(remaining - part, max_part, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(max_sum, max_part, &mut Vec::new(), &mut out);
    out
}
