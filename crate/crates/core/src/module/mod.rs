//! Finitely presented modules over a [`Ring`] and their morphisms.
//!
//! A module is the cokernel of its relations matrix (columns are relations
//! among `generators` generators). Every computation lifts quotient rings to
//! their Euclidean cover via [`crate::linalg`], so one Smith-normal-form
//! kernel serves all supported rings.

mod enumerate;
mod hom;
mod ops;

pub use enumerate::ElementTable;
pub use hom::{hom_module, HomModule};
pub use ops::{adic_stage, adic_transition, factors_through_projective, socle, socle_series};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::{factor_count, Elem, Ring};
use std::fmt;

/// An ideal given by a finite generator list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Elem>,
}

impl Ideal {
    pub fn new(ring: Ring, generators: Vec<Elem>) -> Result<Ideal> {
        if generators.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &generators {
            ring.expect(g)?;
        }
        let mut gens: Vec<Elem> = generators
            .into_iter()
            .filter(|g| !ring.is_zero(g))
            .collect();
        if gens.is_empty() {
            gens.push(ring.zero());
        }
        Ok(Ideal {
            ring,
            generators: gens,
        })
    }

    pub fn principal(ring: Ring, g: Elem) -> Result<Ideal> {
        Ideal::new(ring, vec![g])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Generators of the n-th power: all length-`n` products, guarded.
    pub fn power_generators(&self, n: usize) -> Result<Vec<Elem>> {
        let mut words = vec![self.ring.one()];
        for _ in 0..n {
            if words.len() * self.generators.len() > 4096 {
                return Err(Error::SizeLimit(format!(
                    "ideal power with {} generators to exponent {n}",
                    self.generators.len()
                )));
            }
            let mut next = Vec::with_capacity(words.len() * self.generators.len());
            for w in &words {
                for g in &self.generators {
                    next.push(self.ring.mul(w, g));
                }
            }
            next.dedup();
            words = next;
        }
        Ok(words)
    }
}

/// Finite or infinite composition length.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// Canonical elementary-divisor shape of a module: divisors live in the
/// Euclidean cover, ordered along the divisibility chain, units dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalShape {
    pub cover: Ring,
    pub divisors: Vec<Elem>,
    pub free_rank: usize,
}

impl CanonicalShape {
    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty() && self.free_rank == 0
    }

    pub fn describe(&self, ring: &Ring) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts: Vec<String> = self
            .divisors
            .iter()
            .map(|d| format!("{}/({})", self.cover, self.cover.fmt_elem(d)))
            .collect();
        if self.free_rank > 0 {
            parts.push(format!("{ring}^{}", self.free_rank));
        }
        parts.join(" + ")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PresentedModule {
    ring: Ring,
    generators: usize,
    relations: Matrix,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PresentedModule over {} with {} generators, relations {:?}",
            self.ring, self.generators, self.relations
        )
    }
}

impl PresentedModule {
    pub fn new(ring: Ring, generators: usize, relations: Matrix) -> Result<PresentedModule> {
        if relations.rows() != generators {
            return Err(Error::ShapeMismatch(format!(
                "relations have {} rows for {generators} generators",
                relations.rows()
            )));
        }
        if relations.ring() != &ring {
            return Err(Error::RingMismatch(
                ring.to_string(),
                relations.ring().to_string(),
            ));
        }
        Ok(PresentedModule {
            ring,
            generators,
            relations,
        })
    }

    pub fn zero(ring: Ring) -> PresentedModule {
        PresentedModule {
            relations: Matrix::zero(ring.clone(), 0, 0),
            ring,
            generators: 0,
        }
    }

    pub fn free(ring: Ring, rank: usize) -> PresentedModule {
        PresentedModule {
            relations: Matrix::zero(ring.clone(), rank, 0),
            ring,
            generators: rank,
        }
    }

    /// `R/(a)` as a one-generator module.
    pub fn cyclic(ring: Ring, a: Elem) -> Result<PresentedModule> {
        ring.expect(&a)?;
        let rel = Matrix::new(ring.clone(), 1, 1, vec![a])?;
        PresentedModule::new(ring, 1, rel)
    }

    /// Direct sum of cyclic quotients `R/(d_i)`.
    pub fn from_divisors(ring: Ring, divisors: &[Elem]) -> Result<PresentedModule> {
        let n = divisors.len();
        let mut rel = Matrix::zero(ring.clone(), n, n);
        for (i, d) in divisors.iter().enumerate() {
            ring.expect(d)?;
            rel.set(i, i, d.clone());
        }
        PresentedModule::new(ring, n, rel)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Relations lifted to the Euclidean cover with modulus relations
    /// appended, so cokernels agree.
    pub fn lifted_relations(&self) -> Matrix {
        let (cover, modulus) = self.ring.cover();
        let lifted = self.relations.map_entries(cover.clone(), |e| e.clone());
        match modulus {
            None => lifted,
            Some(m) => lifted.hcat(&Matrix::scalar(cover, self.generators, &m)),
        }
    }

    /// Canonical elementary-divisor shape, via the Smith form of the lifted
    /// relations.
    pub fn canonical_shape(&self) -> Result<CanonicalShape> {
        let (cover, _) = self.ring.cover();
        let lifted = self.lifted_relations();
        let snf = linalg::smith_normal_form(&lifted)?;
        let diag = snf.diagonal();
        let mut divisors = Vec::new();
        let mut free_rank = self.generators;
        for d in &diag {
            if cover.is_zero(d) {
                continue;
            }
            free_rank -= 1;
            if !cover.is_unit(d) {
                divisors.push(cover.canonize(d).0);
            }
        }
        Ok(CanonicalShape {
            cover,
            divisors,
            free_rank,
        })
    }

    /// Decomposition onto the canonical diagonal presentation, with explicit
    /// mutually inverse morphisms.
    pub fn decompose(&self) -> Result<Decomposition> {
        let (cover, _) = self.ring.cover();
        let lifted = self.lifted_relations();
        let snf = linalg::smith_normal_form(&lifted)?;
        let diag = snf.diagonal();
        // Keep generator slots whose divisor is non-unit (torsion) or zero
        // (free); unit slots present the zero summand.
        let mut kept: Vec<(usize, Elem)> = Vec::new();
        for i in 0..self.generators {
            let d = diag.get(i).cloned().unwrap_or_else(|| cover.zero());
            if !cover.is_unit(&d) {
                kept.push((i, cover.canonize(&d).0));
            }
        }
        let divisors: Vec<Elem> = kept
            .iter()
            .map(|(_, d)| self.ring.reduce_from_cover(d.clone()))
            .collect();
        let canonical = PresentedModule::from_divisors(self.ring.clone(), &divisors)?;
        // New coordinates are U * x; canonical keeps the `kept` rows.
        let reduce = |m: &Matrix| {
            m.map_entries(self.ring.clone(), |e| {
                self.ring.reduce_from_cover(e.clone())
            })
        };
        let u = reduce(&snf.u);
        let u_inv = reduce(&snf.u_inv);
        let mut to = Matrix::zero(self.ring.clone(), kept.len(), self.generators);
        for (row, (i, _)) in kept.iter().enumerate() {
            for j in 0..self.generators {
                to.set(row, j, u.at(*i, j).clone());
            }
        }
        let mut from = Matrix::zero(self.ring.clone(), self.generators, kept.len());
        for (col, (i, _)) in kept.iter().enumerate() {
            for j in 0..self.generators {
                from.set(j, col, u_inv.at(j, *i).clone());
            }
        }
        let to_canonical = ModuleMorphism::new(self.clone(), canonical.clone(), to)?;
        let from_canonical = ModuleMorphism::new(canonical.clone(), self.clone(), from)?;
        Ok(Decomposition {
            canonical,
            to_canonical,
            from_canonical,
        })
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        Ok(self.canonical_shape()?.is_trivial())
    }

    /// Composition length from the elementary divisors.
    pub fn length(&self) -> Result<Length> {
        let shape = self.canonical_shape()?;
        if shape.free_rank > 0 {
            if shape.cover.is_field() {
                let mut total = shape.free_rank as u64;
                for d in &shape.divisors {
                    total += factor_count(&shape.cover, d)?;
                }
                return Ok(Length::Finite(total));
            }
            return Ok(Length::Infinite);
        }
        let mut total = 0;
        for d in &shape.divisors {
            total += factor_count(&shape.cover, d)?;
        }
        Ok(Length::Finite(total))
    }

    pub fn finite_length(&self) -> Result<u64> {
        match self.length()? {
            Length::Finite(n) => Ok(n),
            Length::Infinite => Err(Error::InfiniteLength),
        }
    }

    /// Explicit isomorphism when the canonical shapes agree.
    pub fn isomorphism_to(&self, other: &PresentedModule) -> Result<Option<ModuleMorphism>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        let a = self.decompose()?;
        let b = other.decompose()?;
        if a.canonical.relations != b.canonical.relations {
            // Same shape means same diagonal after canonization; the chain
            // order makes this a plain equality test.
            return Ok(None);
        }
        let mid = ModuleMorphism::new(
            a.canonical.clone(),
            b.canonical.clone(),
            Matrix::identity(self.ring.clone(), a.canonical.generators),
        )?;
        Ok(Some(
            b.from_canonical.compose(&mid)?.compose(&a.to_canonical)?,
        ))
    }

    pub fn is_isomorphic_to(&self, other: &PresentedModule) -> Result<bool> {
        Ok(self.canonical_shape()? == other.canonical_shape()?)
    }

    /// Direct sum with injections and projections.
    pub fn direct_sum(parts: &[PresentedModule]) -> Result<DirectSum> {
        let Some(first) = parts.first() else {
            return Err(Error::ShapeMismatch("empty direct sum".into()));
        };
        let ring = first.ring.clone();
        for p in parts {
            if p.ring != ring {
                return Err(Error::RingMismatch(ring.to_string(), p.ring.to_string()));
            }
        }
        let gens: usize = parts.iter().map(|p| p.generators).sum();
        let rel_sizes: Vec<usize> = parts.iter().map(|p| p.relations.cols()).collect();
        let gen_sizes: Vec<usize> = parts.iter().map(|p| p.generators).collect();
        let mut block = crate::matrix::BlockMatrix::new(ring.clone(), gen_sizes.clone(), rel_sizes);
        for (i, p) in parts.iter().enumerate() {
            block.set(i, i, p.relations.clone());
        }
        let module = PresentedModule::new(ring.clone(), gens, block.build())?;
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0;
        for p in parts {
            let mut inj = Matrix::zero(ring.clone(), gens, p.generators);
            let mut proj = Matrix::zero(ring.clone(), p.generators, gens);
            for j in 0..p.generators {
                inj.set(offset + j, j, ring.one());
                proj.set(j, offset + j, ring.one());
            }
            injections.push(ModuleMorphism::new(p.clone(), module.clone(), inj)?);
            projections.push(ModuleMorphism::new(module.clone(), p.clone(), proj)?);
            offset += p.generators;
        }
        Ok(DirectSum {
            module,
            injections,
            projections,
        })
    }

    /// Presents `span(gens) / span(rels)` inside the ambient free module,
    /// using the columns of `gens` as generators.
    pub(crate) fn span_quotient(
        ring: &Ring,
        gens: &Matrix,
        rels: &Matrix,
    ) -> Result<PresentedModule> {
        let combined = gens.hcat(rels);
        let ker = linalg::kernel_columns(&combined)?;
        let head = ker.take_rows(0..gens.cols()).drop_zero_columns();
        PresentedModule::new(ring.clone(), gens.cols(), head)
    }

    /// Element enumeration table for finite modules (oracle machinery).
    pub fn element_table(&self) -> Result<ElementTable> {
        ElementTable::build(self)
    }
}

pub struct DirectSum {
    pub module: PresentedModule,
    pub injections: Vec<ModuleMorphism>,
    pub projections: Vec<ModuleMorphism>,
}

pub struct Decomposition {
    pub canonical: PresentedModule,
    pub to_canonical: ModuleMorphism,
    pub from_canonical: ModuleMorphism,
}

/// A morphism of presented modules, stored as a generator matrix
/// (`target.generators x source.generators`), well-definedness checked at
/// construction.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: PresentedModule,
    target: PresentedModule,
    matrix: Matrix,
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMorphism {:?}", self.matrix)
    }
}

impl ModuleMorphism {
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        matrix: Matrix,
    ) -> Result<ModuleMorphism> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch(
                source.ring.to_string(),
                target.ring.to_string(),
            ));
        }
        if matrix.rows() != target.generators || matrix.cols() != source.generators {
            return Err(Error::ShapeMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators,
                source.generators
            )));
        }
        let mapped = matrix.mul(&source.relations);
        if linalg::solve(&target.relations, &mapped)?.is_none() {
            return Err(Error::InvalidMorphism(
                "matrix does not map relations into relations".into(),
            ));
        }
        Ok(ModuleMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: PresentedModule, target: PresentedModule) -> Result<ModuleMorphism> {
        let m = Matrix::zero(source.ring.clone(), target.generators, source.generators);
        ModuleMorphism::new(source, target, m)
    }

    pub fn identity(module: &PresentedModule) -> ModuleMorphism {
        ModuleMorphism {
            source: module.clone(),
            target: module.clone(),
            matrix: Matrix::identity(module.ring.clone(), module.generators),
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> &Ring {
        &self.source.ring
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if other.target.relations != self.source.relations
            || other.target.generators != self.source.generators
        {
            return Err(Error::ShapeMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        Ok(ModuleMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&other.matrix),
        })
    }

    pub fn add(&self, other: &ModuleMorphism) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn neg(&self) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn sub(&self, other: &ModuleMorphism) -> ModuleMorphism {
        self.add(&other.neg())
    }

    pub fn scale(&self, a: &Elem) -> ModuleMorphism {
        ModuleMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(a),
        }
    }

    /// Zero as a morphism: the matrix maps into the relation span.
    pub fn is_zero(&self) -> Result<bool> {
        linalg::solve(&self.target.relations, &self.matrix).map(|s| s.is_some())
    }

    pub fn equals(&self, other: &ModuleMorphism) -> Result<bool> {
        self.sub(other).is_zero()
    }

    /// Kernel with its inclusion.
    pub fn kernel(&self) -> Result<(PresentedModule, ModuleMorphism)> {
        let combined = self.matrix.hcat(&self.target.relations);
        let ker = linalg::kernel_columns(&combined)?;
        let gens = linalg::prune_columns(&ker.take_rows(0..self.source.generators))?;
        let module =
            PresentedModule::span_quotient(&self.source.ring, &gens, &self.source.relations)?;
        let incl = ModuleMorphism::new(module.clone(), self.source.clone(), gens)?;
        Ok((module, incl))
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> Result<(PresentedModule, ModuleMorphism)> {
        let rel = self.target.relations.hcat(&self.matrix);
        let module = PresentedModule::new(self.source.ring.clone(), self.target.generators, rel)?;
        let proj = ModuleMorphism::new(
            self.target.clone(),
            module.clone(),
            Matrix::identity(self.source.ring.clone(), self.target.generators),
        )?;
        Ok((module, proj))
    }

    /// Image with inclusion into the target and surjection from the source.
    pub fn image(&self) -> Result<(PresentedModule, ModuleMorphism, ModuleMorphism)> {
        let module = PresentedModule::span_quotient(
            &self.source.ring,
            &self.matrix,
            &self.target.relations,
        )?;
        let incl = ModuleMorphism::new(module.clone(), self.target.clone(), self.matrix.clone())?;
        let surj = ModuleMorphism::new(
            self.source.clone(),
            module.clone(),
            Matrix::identity(self.source.ring.clone(), self.source.generators),
        )?;
        Ok((module, incl, surj))
    }

    pub fn is_isomorphism(&self) -> Result<bool> {
        let (ker, _) = self.kernel()?;
        if !ker.is_zero_module()? {
            return Ok(false);
        }
        let (coker, _) = self.cokernel()?;
        coker.is_zero_module()
    }

    /// Inverse of an isomorphism: solves for a two-sided inverse matrix.
    pub fn inverse(&self) -> Result<Option<ModuleMorphism>> {
        // Find X with self.matrix * X = id modulo target relations:
        // [M | rel_target] * [X; Y] = I, column by column.
        let ring = self.ring().clone();
        let aug = self.matrix.hcat(&self.target.relations);
        let id = Matrix::identity(ring, self.target.generators);
        match linalg::solve(&aug, &id)? {
            None => Ok(None),
            Some(sol) => {
                let x = sol.take_rows(0..self.source.generators);
                let candidate = ModuleMorphism::new(self.target.clone(), self.source.clone(), x)?;
                // Right inverse of a surjection; verify it is two-sided.
                let left = candidate.compose(self)?;
                if left.equals(&ModuleMorphism::identity(&self.source))? {
                    Ok(Some(candidate))
                } else {
                    Ok(None)
                }
            }
        }
    }
}
