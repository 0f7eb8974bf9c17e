//! Finite homotopy colimits (telescopes), phantom diagnostics, truncation
//! towers and the restricted-Yoneda full-faithfulness check.

use super::tower::{lim_lim1, MlVerdict, ModuleTower};
use super::{HomGroup, Map, Obj, ObjectSequence, TestSet};
use crate::complex::{cone, ChainMap, Complex, WindowedComplex};
use crate::error::{Error, Result};
use crate::matrix::{BlockMatrix, Matrix};
use crate::module::PresentedModule;

fn complexes_of(x: &ObjectSequence, n: usize) -> Result<Vec<Complex>> {
    (0..=n)
        .map(|i| match x.item(i)? {
            Obj::Complex(c) => Ok(c.clone()),
            Obj::Module(_) => Err(Error::Unsupported(
                "homotopy colimits need a sequence of complexes".into(),
            )),
        })
        .collect()
}

fn chain_maps_of(x: &ObjectSequence, n: usize) -> Result<Vec<ChainMap>> {
    (0..n)
        .map(|i| match x.map(i)? {
            Map::Chain(f) => Ok(f.clone()),
            Map::Module(_) => Err(Error::Unsupported(
                "homotopy colimits need chain transitions".into(),
            )),
        })
        .collect()
}

fn sum_complexes(items: &[Complex]) -> Complex {
    let mut acc = items[0].clone();
    for c in &items[1..] {
        acc = acc.direct_sum(c);
    }
    acc
}

/// The telescope: the cone of `(a_k) -> (a_k - φ_k a_k)` from the coproduct
/// over `k < n` into the coproduct over `k <= n`, together with the
/// inclusion of the last stage, which realizes the colimit comparison.
pub fn hocolim_finite(x: &ObjectSequence, n: usize) -> Result<(Complex, ChainMap)> {
    let items = complexes_of(x, n)?;
    let maps = chain_maps_of(x, n)?;
    let ring = items[0].ring().clone();
    let total = sum_complexes(&items);
    if n == 0 {
        let id = ChainMap::identity(&items[0]);
        return Ok((items[0].clone(), id));
    }
    let partial = sum_complexes(&items[..n]);
    let lo = partial.lo().min(total.lo());
    let hi = partial.hi().max(total.hi());
    let mut comps = Vec::new();
    for deg in lo..=hi {
        let dst_sizes: Vec<usize> = items.iter().map(|c| c.rank(deg)).collect();
        let src_sizes: Vec<usize> = items[..n].iter().map(|c| c.rank(deg)).collect();
        let mut block = BlockMatrix::new(ring.clone(), dst_sizes, src_sizes);
        for k in 0..n {
            if items[k].rank(deg) > 0 {
                block.set(k, k, Matrix::identity(ring.clone(), items[k].rank(deg)));
                let m = maps[k].comp(deg).neg();
                if m.rows() > 0 {
                    block.set(k + 1, k, m);
                }
            }
        }
        comps.push(block.build());
    }
    let psi = ChainMap::new(partial, total.clone(), lo, comps)?;
    let (telescope, inc, _) = cone(&psi)?;
    // inclusion of the last stage into the coproduct, then into the cone
    let last = &items[n];
    let mut last_comps = Vec::new();
    for deg in last.lo()..=last.hi().max(last.lo()) {
        let dst_sizes: Vec<usize> = items.iter().map(|c| c.rank(deg)).collect();
        let mut block = BlockMatrix::new(ring.clone(), dst_sizes, vec![last.rank(deg)]);
        if last.rank(deg) > 0 {
            block.set(n, 0, Matrix::identity(ring.clone(), last.rank(deg)));
        }
        last_comps.push(block.build());
    }
    let into_total = ChainMap::new(last.clone(), total, last.lo(), last_comps)?;
    let into_telescope = inc.compose(&into_total)?;
    Ok((telescope, into_telescope))
}

/// Phantom relative to a test set: every composite from a test object
/// vanishes up to homotopy.
pub fn phantom_check(f: &ChainMap, tests: &TestSet) -> Result<bool> {
    for (_, c) in tests.items() {
        let Obj::Complex(c) = c else {
            return Err(Error::Unsupported("phantom tests must be complexes".into()));
        };
        let hom = c.homotopy_hom(f.source())?;
        for g in hom.basis()? {
            if !f.compose(&g)?.is_null_homotopic()? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A formal morphism of complex sequences is phantom relative to a test set
/// when every stage representative is.
pub fn phantom_check_formal(f: &super::FormalMorphism, tests: &TestSet) -> Result<bool> {
    for (_, rep) in f.reps() {
        let Map::Chain(rep) = rep else {
            return Err(Error::Unsupported(
                "phantom checks run over complex sequences".into(),
            ));
        };
        if !phantom_check(rep, tests)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The truncation tower `σ≥0 X -> σ≥-1 X -> ...` of a windowed complex,
/// materialized to the horizon.
pub fn truncation_tower(w: &WindowedComplex, horizon: usize) -> Result<ObjectSequence> {
    let ext = w.extend_to(-(horizon as i64))?;
    let ring = ext.ring().clone();
    let items: Vec<Obj> = (0..=horizon)
        .map(|n| Obj::Complex(ext.truncate_ge(-(n as i64)).0))
        .collect();
    let maps: Vec<Map> = (0..horizon)
        .map(|n| {
            let (src, _) = ext.truncate_ge(-(n as i64));
            let (dst, _) = ext.truncate_ge(-(n as i64 + 1));
            let lo = src.lo().min(dst.lo());
            let comps = (lo..=src.hi().max(lo))
                .map(|d| {
                    if src.rank(d) > 0 {
                        Matrix::identity(ring.clone(), src.rank(d))
                    } else {
                        Matrix::zero(ring.clone(), dst.rank(d), 0)
                    }
                })
                .collect();
            Ok(Map::Chain(ChainMap::new(src, dst, lo, comps)?))
        })
        .collect::<Result<_>>()?;
    ObjectSequence::from_parts(items, maps)
}

pub struct YonedaReport {
    /// Least stage from which restriction maps are bijective through the
    /// horizon.
    pub stabilized_at: usize,
    pub mittag_leffler: bool,
    /// `lim_n Hom(X_n, Y)` at the horizon.
    pub limit: PresentedModule,
    /// Vanishing of the phantom group at this horizon (the Mittag-Leffler
    /// certificate for `Ph(X, ΣY) = lim^1`).
    pub phantom_vanishes: bool,
    /// When the source is within-window perfect: does the limit agree with
    /// the direct homotopy Hom group?
    pub lim_equals_direct_hom: Option<bool>,
    pub tower: ModuleTower,
}

/// The finite-horizon restricted-Yoneda diagnostic along truncation towers:
/// verifies that restriction maps stabilize, certifies the Mittag-Leffler
/// condition, and reports the limit Hom approximation.
pub fn restricted_yoneda_check(
    xw: &WindowedComplex,
    yw: &WindowedComplex,
    horizon: usize,
) -> Result<YonedaReport> {
    if horizon == 0 {
        return Err(Error::HorizonInsufficient(
            "horizon must be positive".into(),
        ));
    }
    let xs = truncation_tower(xw, horizon)?;
    // Hom groups out of truncations only see y down to degree -(horizon+1)
    let y = yw.extend_to(-(horizon as i64) - 1)?;
    let yo = Obj::Complex(y.clone());
    let groups: Vec<HomGroup> = (0..=horizon)
        .map(|n| HomGroup::new(xs.item(n)?, &yo))
        .collect::<Result<_>>()?;
    let mut items = Vec::with_capacity(horizon + 1);
    let mut maps = Vec::with_capacity(horizon);
    let mut iso_flags = Vec::with_capacity(horizon);
    for n in 0..=horizon {
        items.push(groups[n].module().clone());
        if n < horizon {
            let restriction = groups[n + 1].induced_pre(&groups[n], xs.map(n)?)?;
            iso_flags.push(restriction.is_isomorphism()?);
            maps.push(restriction);
        }
    }
    let stabilized_at = match super::window_verdict(&iso_flags) {
        super::WindowVerdict::StabilizedAt(n) => n,
        super::WindowVerdict::NotByHorizon => {
            return Err(Error::HorizonInsufficient(format!(
                "restriction maps do not stabilize by horizon {horizon}; increase the horizon"
            )))
        }
    };
    let tower = ModuleTower::from_parts(items, maps)?;
    let outcome = lim_lim1(&tower)?;
    let ml = outcome.verdict == MlVerdict::MittagLeffler;
    let lim_equals_direct_hom = if xw.is_perfect() {
        let direct = xw.window().homotopy_hom(&y)?;
        Some(outcome.limit.is_isomorphic_to(direct.module())?)
    } else {
        None
    };
    Ok(YonedaReport {
        stabilized_at,
        mittag_leffler: ml,
        limit: outcome.limit,
        phantom_vanishes: ml,
        lim_equals_direct_hom,
        tower,
    })
}
