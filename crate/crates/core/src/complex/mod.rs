//! Bounded complexes of finitely generated free modules, cohomologically
//! indexed (differentials raise degree), with cones, shifts, tensor and Hom
//! complexes, homology, brutal truncations and morphism groups up to chain
//! homotopy.
//!
//! Sign conventions, fixed once: `Σ` shifts support down and negates odd
//! shifts; `cone(f)^n = X^{n+1} ⊕ Y^n` with differential
//! `[[-d_X, 0], [f, d_Y]]`; the tensor differential is
//! `d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy`; the Hom differential is
//! `d(φ) = d_Y∘φ - (-1)^n φ∘d_X`.

mod windowed;

pub use windowed::{ExtendRule, WindowedComplex};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{BlockMatrix, Matrix};
use crate::module::PresentedModule;
use crate::ring::{Elem, Ring};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d^{lo+i}`, of shape `ranks[i+1] x ranks[i]`.
    diffs: Vec<Matrix>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Complex over {} on [{}, {}] with ranks {:?}",
            self.ring,
            self.lo,
            self.hi(),
            self.ranks
        )
    }
}

impl Complex {
    pub fn new(ring: Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Complex> {
        if !ranks.is_empty() && diffs.len() + 1 != ranks.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ring() != &ring {
                return Err(Error::RingMismatch(ring.to_string(), d.ring().to_string()));
            }
            if d.rows() != ranks[i + 1] || d.cols() != ranks[i] {
                return Err(Error::ShapeMismatch(format!(
                    "differential at degree {} is {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !diffs[i + 1].mul(&diffs[i]).is_zero() {
                return Err(Error::InvalidMorphism(format!(
                    "d∘d is nonzero at degree {}",
                    lo + i as i64
                )));
            }
        }
        Ok(Complex {
            ring,
            lo,
            ranks,
            diffs,
        }
        .trimmed())
    }

    /// Shrinks the window to the nonzero ranks.
    fn trimmed(mut self) -> Complex {
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        if self.ranks.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn zero(ring: Ring) -> Complex {
        Complex {
            ring,
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// Free module of the given rank concentrated in one degree.
    pub fn stalk(ring: Ring, degree: i64, rank: usize) -> Complex {
        if rank == 0 {
            return Complex::zero(ring);
        }
        Complex {
            ring,
            lo: degree,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    /// Two-term complex `R^c -> R^r` with the matrix in degrees `[lo, lo+1]`.
    pub fn two_term(lo: i64, d: Matrix) -> Complex {
        let ring = d.ring().clone();
        if d.rows() == 0 && d.cols() == 0 {
            return Complex::zero(ring);
        }
        Complex {
            ring,
            lo,
            ranks: vec![d.cols(), d.rows()],
            diffs: vec![d],
        }
        .trimmed()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < self.lo || self.ranks.is_empty() || n > self.hi() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d^n`, materialized as a zero matrix outside the window.
    pub fn diff(&self, n: i64) -> Matrix {
        if n >= self.lo && !self.ranks.is_empty() && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zero(self.ring.clone(), self.rank(n + 1), self.rank(n))
        }
    }

    /// Support translated by `-k`; odd shifts negate the differentials.
    pub fn shift(&self, k: i64) -> Complex {
        let diffs = self
            .diffs
            .iter()
            .map(|d| {
                if k.rem_euclid(2) == 1 {
                    d.neg()
                } else {
                    d.clone()
                }
            })
            .collect();
        Complex {
            ring: self.ring.clone(),
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs,
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs: Vec<Matrix> = (lo..hi)
            .map(|n| {
                let mut b = BlockMatrix::new(
                    self.ring.clone(),
                    vec![self.rank(n + 1), other.rank(n + 1)],
                    vec![self.rank(n), other.rank(n)],
                );
                b.set(0, 0, self.diff(n));
                b.set(1, 1, other.diff(n));
                b.build()
            })
            .collect();
        Complex {
            ring: self.ring.clone(),
            lo,
            ranks,
            diffs,
        }
        .trimmed()
    }

    /// Brutal truncation keeping degrees `>= n`, with the canonical map into
    /// the original complex.
    pub fn truncate_ge(&self, n: i64) -> (Complex, ChainMap) {
        if n <= self.lo || self.is_empty() {
            let t = self.clone();
            let id = ChainMap::identity(self);
            return (t, id);
        }
        let trunc = if n > self.hi() {
            Complex::zero(self.ring.clone())
        } else {
            let start = (n - self.lo) as usize;
            Complex {
                ring: self.ring.clone(),
                lo: n,
                ranks: self.ranks[start..].to_vec(),
                diffs: self.diffs[start..].to_vec(),
            }
        };
        let comps = (trunc.lo..=trunc.hi().max(trunc.lo))
            .map(|d| {
                if trunc.rank(d) > 0 {
                    Matrix::identity(self.ring.clone(), trunc.rank(d))
                } else {
                    Matrix::zero(self.ring.clone(), self.rank(d), 0)
                }
            })
            .collect();
        let map = ChainMap {
            source: trunc.clone(),
            target: self.clone(),
            lo: trunc.lo,
            comps,
        };
        debug_assert!(map.verify().is_ok());
        (trunc, map)
    }

    /// `ker d^n / im d^{n-1}` as a presented module, with conversion data.
    pub fn homology(&self, n: i64) -> Result<Homology> {
        let cycles = linalg::prune_columns(&linalg::kernel_columns(&self.diff(n))?)?;
        let module = PresentedModule::span_quotient(&self.ring, &cycles, &self.diff(n - 1))?;
        Ok(Homology {
            ring: self.ring.clone(),
            degree: n,
            cycles,
            boundaries: self.diff(n - 1),
            module,
        })
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        for n in self.lo..=self.hi() {
            if !self.homology(n)?.module.is_zero_module()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Total tensor complex with Koszul signs.
    pub fn tensor(&self, other: &Complex) -> Result<Complex> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        if self.is_empty() || other.is_empty() {
            return Ok(Complex::zero(self.ring.clone()));
        }
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        let pieces = |n: i64| -> Vec<(i64, i64)> {
            (self.lo..=self.hi())
                .map(|p| (p, n - p))
                .filter(|&(p, q)| self.rank(p) > 0 && other.rank(q) > 0)
                .collect()
        };
        let sizes = |n: i64| -> Vec<usize> {
            pieces(n)
                .iter()
                .map(|&(p, q)| self.rank(p) * other.rank(q))
                .collect()
        };
        let ranks: Vec<usize> = (lo..=hi).map(|n| sizes(n).iter().sum()).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let src = pieces(n);
            let dst = pieces(n + 1);
            let mut block = BlockMatrix::new(self.ring.clone(), sizes(n + 1), sizes(n));
            for (j, &(p, q)) in src.iter().enumerate() {
                // dx ⊗ y
                if let Some(i) = dst.iter().position(|&(a, b)| (a, b) == (p + 1, q)) {
                    let m = self
                        .diff(p)
                        .kron(&Matrix::identity(self.ring.clone(), other.rank(q)));
                    if m.rows() > 0 && m.cols() > 0 {
                        block.set(i, j, m);
                    }
                }
                // (-1)^p x ⊗ dy
                if let Some(i) = dst.iter().position(|&(a, b)| (a, b) == (p, q + 1)) {
                    let mut m =
                        Matrix::identity(self.ring.clone(), self.rank(p)).kron(&other.diff(q));
                    if p.rem_euclid(2) == 1 {
                        m = m.neg();
                    }
                    if m.rows() > 0 && m.cols() > 0 {
                        block.set(i, j, m);
                    }
                }
            }
            diffs.push(block.build());
        }
        Complex::new(self.ring.clone(), lo, ranks, diffs)
    }

    /// Total Hom complex; `hom(X, R[0])` is the dual.
    pub fn hom_from(&self, target: &Complex) -> Result<Complex> {
        HomLayout::new(self, target).map(|l| l.complex)
    }

    /// Chain maps modulo chain homotopy, as `H^0` of the Hom complex.
    pub fn homotopy_hom(&self, target: &Complex) -> Result<HomotopyHom> {
        HomotopyHom::new(self, target)
    }
}

/// Tensor product of chain maps, `(f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y)`.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let ring = f.source.ring.clone();
    let source = f.source.tensor(&g.source)?;
    let target = f.target.tensor(&g.target)?;
    let pieces = |x: &Complex, y: &Complex, n: i64| -> Vec<(i64, i64)> {
        (x.lo()..=x.hi())
            .map(|p| (p, n - p))
            .filter(|&(p, q)| x.rank(p) > 0 && y.rank(q) > 0)
            .collect()
    };
    let lo = source.lo();
    let comps = (lo..=source.hi().max(lo))
        .map(|n| {
            let src = pieces(&f.source, &g.source, n);
            let dst = pieces(&f.target, &g.target, n);
            let src_sizes: Vec<usize> = src
                .iter()
                .map(|&(p, q)| f.source.rank(p) * g.source.rank(q))
                .collect();
            let dst_sizes: Vec<usize> = dst
                .iter()
                .map(|&(p, q)| f.target.rank(p) * g.target.rank(q))
                .collect();
            let mut block = BlockMatrix::new(ring.clone(), dst_sizes, src_sizes);
            for (j, &(p, q)) in src.iter().enumerate() {
                if let Some(i) = dst.iter().position(|&pq| pq == (p, q)) {
                    let m = f.comp(p).kron(&g.comp(q));
                    if m.rows() > 0 && m.cols() > 0 {
                        block.set(i, j, m);
                    }
                }
            }
            block.build()
        })
        .collect();
    ChainMap::new(source, target, lo, comps)
}

/// The map `hom(K, X) -> hom(K', X)` induced by precomposition with
/// `u: K' -> K`.
pub fn hom_map_precompose(u: &ChainMap, x: &Complex) -> Result<ChainMap> {
    let ring = x.ring.clone();
    let source = u.target.hom_from(x)?;
    let target = u.source.hom_from(x)?;
    let lo = source.lo();
    let comps = (lo..=source.hi().max(lo))
        .map(|n| {
            let src_sizes: Vec<usize> = (u.target.lo()..=u.target.hi())
                .map(|p| u.target.rank(p) * x.rank(p + n))
                .collect();
            let dst_sizes: Vec<usize> = (u.source.lo()..=u.source.hi())
                .map(|p| u.source.rank(p) * x.rank(p + n))
                .collect();
            let mut block = BlockMatrix::new(ring.clone(), dst_sizes.clone(), src_sizes.clone());
            for (j, p) in (u.target.lo()..=u.target.hi()).enumerate() {
                if u.target.rank(p) * x.rank(p + n) == 0 {
                    continue;
                }
                if let Some(i) = (u.source.lo()..=u.source.hi()).position(|q| q == p) {
                    if dst_sizes[i] == 0 {
                        continue;
                    }
                    // vec(Φ_p ∘ u^p) = (u^p)^T ⊗ I
                    let m = u
                        .comp(p)
                        .transpose()
                        .kron(&Matrix::identity(ring.clone(), x.rank(p + n)));
                    block.set(i, j, m);
                }
            }
            block.build()
        })
        .collect();
    ChainMap::new(source, target, lo, comps)
}

/// The morphism induced on degree-`n` homology by a chain map.
pub fn induced_on_homology(f: &ChainMap, n: i64) -> Result<crate::module::ModuleMorphism> {
    let hs = f.source.homology(n)?;
    let ht = f.target.homology(n)?;
    let mut cols = Matrix::zero(
        f.source.ring.clone(),
        ht.module.generators(),
        hs.module.generators(),
    );
    for j in 0..hs.module.generators() {
        let mut e = Matrix::zero(f.source.ring.clone(), hs.module.generators(), 1);
        e.set(j, 0, f.source.ring.one());
        let chain = hs.class_to_chain(&e);
        let mapped = f.comp(n).mul(&chain);
        let class = ht.chain_to_class(&mapped)?;
        for i in 0..cols.rows() {
            cols.set(i, j, class.at(i, 0).clone());
        }
    }
    crate::module::ModuleMorphism::new(hs.module, ht.module, cols)
}

/// Multiplication by a ring element as a chain self-map.
pub fn scalar_map(x: &Complex, a: &Elem) -> ChainMap {
    let comps = (x.lo..=x.hi().max(x.lo))
        .map(|n| Matrix::scalar(x.ring.clone(), x.rank(n), a))
        .collect();
    ChainMap {
        source: x.clone(),
        target: x.clone(),
        lo: x.lo,
        comps,
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i64,
    /// Components for degrees `lo..`, shape `target.rank(n) x source.rank(n)`.
    comps: Vec<Matrix>,
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ChainMap [{}..] {:?} -> {:?}",
            self.lo, self.source, self.target
        )
    }
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, lo: i64, comps: Vec<Matrix>) -> Result<ChainMap> {
        let map = ChainMap {
            source,
            target,
            lo,
            comps,
        };
        map.verify()?;
        Ok(map)
    }

    fn verify(&self) -> Result<()> {
        if self.source.ring != self.target.ring {
            return Err(Error::RingMismatch(
                self.source.ring.to_string(),
                self.target.ring.to_string(),
            ));
        }
        let lo = self.source.lo.min(self.target.lo) - 1;
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for n in lo..=hi {
            let c = self.comp(n);
            if c.rows() != self.target.rank(n) || c.cols() != self.source.rank(n) {
                return Err(Error::ShapeMismatch(format!(
                    "component at degree {n} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    self.target.rank(n),
                    self.source.rank(n)
                )));
            }
            let left = self.target.diff(n).mul(&c);
            let right = self.comp(n + 1).mul(&self.source.diff(n));
            if left != right {
                return Err(Error::InvalidMorphism(format!(
                    "chain map does not commute with differentials at degree {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Complex) -> ChainMap {
        let comps = (x.lo..=x.hi().max(x.lo))
            .map(|n| Matrix::identity(x.ring.clone(), x.rank(n)))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            lo: x.lo,
            comps,
        }
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap {
            lo: source.lo,
            comps: (source.lo..=source.hi().max(source.lo))
                .map(|n| Matrix::zero(source.ring.clone(), target.rank(n), source.rank(n)))
                .collect(),
            source: source.clone(),
            target: target.clone(),
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn comp(&self, n: i64) -> Matrix {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.comps.len() {
            let c = &self.comps[idx as usize];
            if c.rows() == self.target.rank(n) && c.cols() == self.source.rank(n) {
                return c.clone();
            }
        }
        Matrix::zero(
            self.source.ring.clone(),
            self.target.rank(n),
            self.source.rank(n),
        )
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("chain map endpoints differ".into()));
        }
        let lo = other.source.lo;
        let comps = (lo..=other.source.hi().max(lo))
            .map(|n| self.comp(n).mul(&other.comp(n)))
            .collect();
        Ok(ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            lo,
            comps,
        })
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let lo = self.source.lo;
        let comps = (lo..=self.source.hi().max(lo))
            .map(|n| self.comp(n).add(&other.comp(n)))
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            lo,
            comps,
        }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            lo: self.lo,
            comps: self.comps.iter().map(Matrix::neg).collect(),
        }
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    /// Shift a chain map together with its endpoints.
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            lo: self.lo - k,
            comps: self.comps.clone(),
        }
    }

    pub fn is_zero_on_the_nose(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Exact homotopy search; absence of a homotopy is a proof.
    pub fn is_null_homotopic(&self) -> Result<bool> {
        let hom = HomotopyHom::new(&self.source, &self.target)?;
        hom.is_null_homotopic(self)
    }

    pub fn homotopic_to(&self, other: &ChainMap) -> Result<bool> {
        self.sub(other).is_null_homotopic()
    }

    pub fn is_quasi_iso(&self) -> Result<bool> {
        cone(self)?.0.is_acyclic()
    }
}

/// Mapping cone with the two triangle maps `Y -> cone` and `cone -> ΣX`.
pub fn cone(f: &ChainMap) -> Result<(Complex, ChainMap, ChainMap)> {
    let x = &f.source;
    let y = &f.target;
    let ring = x.ring.clone();
    let lo = (x.lo - 1).min(y.lo);
    let hi = (x.hi() - 1).max(y.hi());
    if x.is_empty() && y.is_empty() {
        let z = Complex::zero(ring);
        let inc = ChainMap::identity(&z);
        let prj = ChainMap::identity(&z);
        return Ok((z, inc, prj));
    }
    let ranks: Vec<usize> = (lo..=hi).map(|n| x.rank(n + 1) + y.rank(n)).collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let mut b = BlockMatrix::new(
            ring.clone(),
            vec![x.rank(n + 2), y.rank(n + 1)],
            vec![x.rank(n + 1), y.rank(n)],
        );
        b.set(0, 0, x.diff(n + 1).neg());
        b.set(1, 0, f.comp(n + 1));
        b.set(1, 1, y.diff(n));
        diffs.push(b.build());
    }
    let c = Complex::new(ring.clone(), lo, ranks, diffs)?;
    // Y -> cone: include in the second block.
    let inc_comps = (y.lo..=y.hi().max(y.lo))
        .map(|n| {
            let mut b = BlockMatrix::new(
                ring.clone(),
                vec![x.rank(n + 1), y.rank(n)],
                vec![y.rank(n)],
            );
            b.set(1, 0, Matrix::identity(ring.clone(), y.rank(n)));
            b.build()
        })
        .collect();
    let inc = ChainMap::new(y.clone(), c.clone(), y.lo, inc_comps)?;
    // cone -> ΣX: project onto the first block.
    let sx = x.shift(1);
    let prj_comps = (c.lo..=c.hi().max(c.lo))
        .map(|n| {
            let mut b = BlockMatrix::new(
                ring.clone(),
                vec![x.rank(n + 1)],
                vec![x.rank(n + 1), y.rank(n)],
            );
            b.set(0, 0, Matrix::identity(ring.clone(), x.rank(n + 1)));
            b.build()
        })
        .collect();
    let prj = ChainMap::new(c.clone(), sx, c.lo, prj_comps)?;
    Ok((c, inc, prj))
}

/// Homology of one degree, with conversion between abstract classes and
/// representing chains.
#[derive(Clone)]
pub struct Homology {
    ring: Ring,
    pub degree: i64,
    /// Columns generate the cycles in `R^{rank(n)}`.
    cycles: Matrix,
    boundaries: Matrix,
    pub module: PresentedModule,
}

impl Homology {
    /// Chain representative of a class given in presentation coordinates.
    pub fn class_to_chain(&self, coords: &Matrix) -> Matrix {
        self.cycles.mul(coords)
    }

    /// Coordinates of a cycle's class; errors when the vector is no cycle.
    pub fn chain_to_class(&self, chain: &Matrix) -> Result<Matrix> {
        let aug = self.cycles.hcat(&self.boundaries);
        let sol = linalg::solve(&aug, chain)?
            .ok_or_else(|| Error::InvalidMorphism("vector is not a cycle".into()))?;
        Ok(sol.take_rows(0..self.cycles.cols()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
}

/// Layout of the total Hom complex: block `p` of `Hom^n` holds the
/// column-major vectorization of a component `X^p -> Y^{p+n}`.
#[derive(Clone)]
struct HomLayout {
    source: Complex,
    target: Complex,
    complex: Complex,
}

impl HomLayout {
    fn new(source: &Complex, target: &Complex) -> Result<HomLayout> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(
                source.ring.to_string(),
                target.ring.to_string(),
            ));
        }
        let ring = source.ring.clone();
        if source.is_empty() || target.is_empty() {
            return Ok(HomLayout {
                source: source.clone(),
                target: target.clone(),
                complex: Complex::zero(ring),
            });
        }
        let lo = target.lo - source.hi();
        let hi = target.hi() - source.lo();
        let sizes = |n: i64| -> Vec<usize> {
            (source.lo..=source.hi())
                .map(|p| source.rank(p) * target.rank(p + n))
                .collect()
        };
        let ranks: Vec<usize> = (lo..=hi).map(|n| sizes(n).iter().sum()).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let src = sizes(n);
            let dst = sizes(n + 1);
            let mut block = BlockMatrix::new(ring.clone(), dst, src);
            for (j, p) in (source.lo..=source.hi()).enumerate() {
                if source.rank(p) * target.rank(p + n) == 0 {
                    continue;
                }
                // post-composition d_Y ∘ φ stays in block p
                let post = Matrix::identity(ring.clone(), source.rank(p)).kron(&target.diff(p + n));
                if post.rows() > 0 {
                    block.set(j, j, post);
                }
                // pre-composition -(-1)^n φ∘d_X lands in block p-1
                if p > source.lo {
                    let mut pre = source
                        .diff(p - 1)
                        .transpose()
                        .kron(&Matrix::identity(ring.clone(), target.rank(p + n)));
                    if n.rem_euclid(2) == 0 {
                        pre = pre.neg();
                    }
                    if pre.rows() > 0 {
                        block.set(j - 1, j, pre);
                    }
                }
            }
            diffs.push(block.build());
        }
        Ok(HomLayout {
            source: source.clone(),
            target: target.clone(),
            complex: Complex::new(ring, lo, ranks, diffs)?,
        })
    }

    /// Degree-`n` Hom vector of a degreewise map (components at each degree).
    fn pack(&self, n: i64, comps: &dyn Fn(i64) -> Matrix) -> Matrix {
        let ring = self.source.ring.clone();
        let mut out = Matrix::zero(ring, self.complex.rank(n), 1);
        let mut off = 0;
        for p in self.source.lo..=self.source.hi() {
            let size = self.source.rank(p) * self.target.rank(p + n);
            if size == 0 {
                continue;
            }
            let c = comps(p);
            let v = c.vec_col_major();
            for i in 0..size {
                out.set(off + i, 0, v.at(i, 0).clone());
            }
            off += size;
        }
        out
    }

    /// Inverse of [`HomLayout::pack`] at degree `n`.
    fn unpack(&self, n: i64, v: &Matrix) -> Vec<(i64, Matrix)> {
        let ring = self.source.ring.clone();
        let mut out = Vec::new();
        let mut off = 0;
        for p in self.source.lo..=self.source.hi() {
            let (r, c) = (self.target.rank(p + n), self.source.rank(p));
            let size = r * c;
            if size == 0 {
                out.push((p, Matrix::zero(ring.clone(), r, c)));
                continue;
            }
            let slice = v.take_rows(off..off + size);
            out.push((p, Matrix::unvec_col_major(ring.clone(), r, c, &slice)));
            off += size;
        }
        out
    }
}

/// `Hom(X, Y)` in the homotopy category: `H^0` of the Hom complex, with
/// lossless conversion between classes and chain-map representatives.
#[derive(Clone)]
pub struct HomotopyHom {
    layout: HomLayout,
    h0: Homology,
}

impl HomotopyHom {
    pub fn new(source: &Complex, target: &Complex) -> Result<HomotopyHom> {
        let layout = HomLayout::new(source, target)?;
        let h0 = layout.complex.homology(0)?;
        Ok(HomotopyHom { layout, h0 })
    }

    pub fn module(&self) -> &PresentedModule {
        &self.h0.module
    }

    pub fn source(&self) -> &Complex {
        &self.layout.source
    }

    pub fn target(&self) -> &Complex {
        &self.layout.target
    }

    pub fn rank(&self) -> usize {
        self.h0.module.generators()
    }

    /// Chain-map representative of a class.
    pub fn to_chain_map(&self, coords: &Matrix) -> Result<ChainMap> {
        let v = self.h0.class_to_chain(coords);
        let comps = self.layout.unpack(0, &v);
        let lo = comps.first().map_or(0, |(p, _)| *p);
        let mats = comps.into_iter().map(|(_, m)| m).collect();
        ChainMap::new(
            self.layout.source.clone(),
            self.layout.target.clone(),
            lo,
            mats,
        )
    }

    /// Class of a chain map.
    pub fn from_chain_map(&self, f: &ChainMap) -> Result<Matrix> {
        let v = self.layout.pack(0, &|p| f.comp(p));
        self.h0.chain_to_class(&v)
    }

    pub fn basis(&self) -> Result<Vec<ChainMap>> {
        (0..self.rank())
            .map(|j| {
                let mut coords = Matrix::zero(self.layout.source.ring.clone(), self.rank(), 1);
                coords.set(j, 0, self.layout.source.ring.one());
                self.to_chain_map(&coords)
            })
            .collect()
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        let v = self.layout.pack(0, &|p| f.comp(p));
        let boundaries = self.layout.complex.diff(-1);
        linalg::solve(&boundaries, &v).map(|s| s.is_some())
    }
}

#[cfg(test)]
mod tests;
