//! Socles, socle series, adic stages and projective factorization.

use super::{Ideal, ModuleMorphism, PresentedModule};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;

/// The submodule of `m` annihilated by `ideal`, with its inclusion. For the
/// radical ideal of a (semi-)local ring this is the socle.
pub fn socle(m: &PresentedModule, ideal: &Ideal) -> Result<(PresentedModule, ModuleMorphism)> {
    if m.ring() != ideal.ring() {
        return Err(Error::RingMismatch(
            m.ring().to_string(),
            ideal.ring().to_string(),
        ));
    }
    let ring = m.ring().clone();
    let g = m.generators();
    // Stack multiplication-by-generator maps M -> M^k and take the kernel.
    let copies: Vec<PresentedModule> = ideal.generators().iter().map(|_| m.clone()).collect();
    let sum = PresentedModule::direct_sum(&copies)?;
    let mut stacked = Matrix::zero(ring.clone(), 0, g);
    for a in ideal.generators() {
        stacked = stacked.vcat(&Matrix::scalar(ring.clone(), g, a));
    }
    let f = ModuleMorphism::new(m.clone(), sum.module, stacked)?;
    f.kernel()
}

/// The chain `soc^0 = 0 ⊆ soc^1 ⊆ ... ⊆ soc^n` with inclusions into `m`.
pub fn socle_series(
    m: &PresentedModule,
    ideal: &Ideal,
    n: usize,
) -> Result<Vec<(PresentedModule, ModuleMorphism)>> {
    let zero = PresentedModule::zero(m.ring().clone());
    let mut out = vec![(zero.clone(), ModuleMorphism::zero(zero, m.clone())?)];
    for _ in 0..n {
        let (_, incl) = out.last().unwrap();
        // Quotient by the current stage, take its socle, pull back.
        let (_, proj) = incl.cokernel()?;
        let (soc_q, soc_incl) = socle(proj.target(), ideal)?;
        let (_, collapse) = soc_incl.cokernel()?;
        let composite = collapse.compose(&proj)?;
        let (next, next_incl) = composite.kernel()?;
        let _ = soc_q;
        out.push((next, next_incl));
    }
    Ok(out)
}

/// The adic stage `M / M·I^n` with the canonical projection. Stage zero is
/// the zero quotient (`I^0 = (1)`).
pub fn adic_stage(
    m: &PresentedModule,
    ideal: &Ideal,
    n: usize,
) -> Result<(PresentedModule, ModuleMorphism)> {
    if m.ring() != ideal.ring() {
        return Err(Error::RingMismatch(
            m.ring().to_string(),
            ideal.ring().to_string(),
        ));
    }
    let ring = m.ring().clone();
    let g = m.generators();
    let words = ideal.power_generators(n)?;
    let mut rel = m.relations().clone();
    for w in &words {
        rel = rel.hcat(&Matrix::scalar(ring.clone(), g, w));
    }
    let stage = PresentedModule::new(ring.clone(), g, rel)?;
    let proj = ModuleMorphism::new(m.clone(), stage.clone(), Matrix::identity(ring, g))?;
    Ok((stage, proj))
}

/// The surjective tower map `M/M·I^{n+1} -> M/M·I^n`.
pub fn adic_transition(m: &PresentedModule, ideal: &Ideal, n: usize) -> Result<ModuleMorphism> {
    let (upper, _) = adic_stage(m, ideal, n + 1)?;
    let (lower, _) = adic_stage(m, ideal, n)?;
    let id = Matrix::identity(m.ring().clone(), m.generators());
    ModuleMorphism::new(upper, lower, id)
}

/// Decides whether `f` factors through a finitely generated projective by
/// lifting along the canonical free cover of the target; returns the explicit
/// factorization `source -> free -> target` when one exists.
pub fn factors_through_projective(
    f: &ModuleMorphism,
) -> Result<Option<(ModuleMorphism, ModuleMorphism)>> {
    let ring = f.ring().clone();
    let source = f.source();
    let target = f.target();
    let rel_c = source.relations();
    let rel_x = target.relations();
    // Want H = F + rel_X * W with H * rel_C = 0, i.e.
    // rel_X * W * rel_C = -F * rel_C.
    let coeff = rel_c.transpose().kron(rel_x);
    let rhs = f.matrix().mul(rel_c).neg().vec_col_major();
    let Some(w) = linalg::solve(&coeff, &rhs)? else {
        return Ok(None);
    };
    let w = Matrix::unvec_col_major(ring.clone(), rel_x.cols(), source.generators(), &w);
    let h = f.matrix().add(&rel_x.mul(&w));
    let free = PresentedModule::free(ring.clone(), target.generators());
    let lift = ModuleMorphism::new(source.clone(), free.clone(), h)?;
    let cover = ModuleMorphism::new(
        free,
        target.clone(),
        Matrix::identity(ring, target.generators()),
    )?;
    Ok(Some((lift, cover)))
}
