//! Hom modules: `Hom(M, N)` presented as a module over the base ring, with a
//! generating set realized as honest morphisms and lossless conversion
//! between abstract elements and morphisms.

use super::{ModuleMorphism, PresentedModule};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Presentation of `Hom(M, N)` together with conversion data.
///
/// A candidate morphism is a `g_N x g_M` matrix `F` with `F * rel_M` inside
/// the column span of `rel_N`; it is zero when `F = rel_N * W`. Both
/// conditions are kernel computations on column-major vectorizations.
#[derive(Clone, Debug)]
pub struct HomModule {
    source: PresentedModule,
    target: PresentedModule,
    module: PresentedModule,
    /// Columns: vectorized generator morphisms (`g_N * g_M` rows).
    gens: Matrix,
    /// Columns: vectorized null morphisms `rel_N * W`.
    nulls: Matrix,
}

pub fn hom_module(m: &PresentedModule, n: &PresentedModule) -> Result<HomModule> {
    if m.ring() != n.ring() {
        return Err(Error::RingMismatch(
            m.ring().to_string(),
            n.ring().to_string(),
        ));
    }
    let ring = m.ring().clone();
    let (gm, gn) = (m.generators(), n.generators());
    let rel_m = m.relations();
    let rel_n = n.relations();
    // vec(F * rel_M) = (rel_M^T ⊗ I_gn) vec F must lie in the image of
    // vec(rel_N * Y) = (I_rm ⊗ rel_N) vec Y.
    let a = rel_m.transpose().kron(&Matrix::identity(ring.clone(), gn));
    let b = Matrix::identity(ring.clone(), rel_m.cols()).kron(rel_n);
    let ker = linalg::kernel_columns(&a.hcat(&b))?;
    let candidates = linalg::prune_columns(&ker.take_rows(0..gn * gm))?;
    // Null morphisms: vec(rel_N * W) for elementary W.
    let nulls = Matrix::identity(ring.clone(), gm).kron(rel_n);
    let module = PresentedModule::span_quotient(&ring, &candidates, &nulls)?;
    Ok(HomModule {
        source: m.clone(),
        target: n.clone(),
        module,
        gens: candidates,
        nulls,
    })
}

impl HomModule {
    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn rank(&self) -> usize {
        self.module.generators()
    }

    /// The generating morphisms underlying the presentation.
    pub fn basis(&self) -> Result<Vec<ModuleMorphism>> {
        (0..self.gens.cols())
            .map(|j| self.to_morphism(&unit_column(self.module.ring(), self.gens.cols(), j)))
            .collect()
    }

    /// Realizes an abstract element (coordinates in the presentation
    /// generators) as a morphism.
    pub fn to_morphism(&self, coords: &Matrix) -> Result<ModuleMorphism> {
        if coords.rows() != self.module.generators() || coords.cols() != 1 {
            return Err(Error::ShapeMismatch("bad Hom element coordinates".into()));
        }
        let vecf = self.gens.mul(coords);
        let f = Matrix::unvec_col_major(
            self.module.ring().clone(),
            self.target.generators(),
            self.source.generators(),
            &vecf,
        );
        ModuleMorphism::new(self.source.clone(), self.target.clone(), f)
    }

    /// Coordinates of a morphism in the presentation generators.
    pub fn from_morphism(&self, f: &ModuleMorphism) -> Result<Matrix> {
        if f.source().relations() != self.source.relations()
            || f.target().relations() != self.target.relations()
        {
            return Err(Error::ShapeMismatch("morphism endpoints differ".into()));
        }
        let vecf = f.matrix().vec_col_major();
        let aug = self.gens.hcat(&self.nulls);
        let sol = linalg::solve(&aug, &vecf)?
            .ok_or_else(|| Error::InvalidMorphism("morphism outside Hom presentation".into()))?;
        Ok(sol.take_rows(0..self.gens.cols()))
    }

    /// The morphism `Hom(M, N) -> Hom(M', N)` induced by precomposition.
    pub fn precompose(&self, other: &HomModule, u: &ModuleMorphism) -> Result<ModuleMorphism> {
        let mut cols = Matrix::zero(
            self.module.ring().clone(),
            other.module.generators(),
            self.module.generators(),
        );
        for (j, b) in self.basis()?.into_iter().enumerate() {
            let composed = b.compose(u)?;
            let coords = other.from_morphism(&composed)?;
            for i in 0..cols.rows() {
                cols.set(i, j, coords.at(i, 0).clone());
            }
        }
        ModuleMorphism::new(self.module.clone(), other.module.clone(), cols)
    }

    /// The morphism `Hom(M, N) -> Hom(M, N')` induced by postcomposition.
    pub fn postcompose(&self, other: &HomModule, u: &ModuleMorphism) -> Result<ModuleMorphism> {
        let mut cols = Matrix::zero(
            self.module.ring().clone(),
            other.module.generators(),
            self.module.generators(),
        );
        for (j, b) in self.basis()?.into_iter().enumerate() {
            let composed = u.compose(&b)?;
            let coords = other.from_morphism(&composed)?;
            for i in 0..cols.rows() {
                cols.set(i, j, coords.at(i, 0).clone());
            }
        }
        ModuleMorphism::new(self.module.clone(), other.module.clone(), cols)
    }
}

fn unit_column(ring: &Ring, n: usize, j: usize) -> Matrix {
    let mut m = Matrix::zero(ring.clone(), n, 1);
    m.set(j, 0, ring.one());
    m
}
