//! Koszul complexes, their power towers, and finite-stage derived torsion
//! and completion.
//!
//! Stage `t` is the Koszul complex on `x_1^t, ..., x_n^t`. The completion
//! stage of `X` is `X ⊗ K(x^t)` and the torsion stage is `hom(K(x^t), X)`;
//! restriction maps `K(x^{t+1}) -> K(x^t)` (identity in degree 0,
//! multiplication by `x` in degree -1, iterated through cones) make the
//! degree-zero homology tower of the completion stages of `A[0]` the adic
//! tower `A/I^t`.

use crate::complex::{
    cone, hom_map_precompose, induced_on_homology, scalar_map, tensor_map, ChainMap, Complex,
};
use crate::error::{Error, Result};
use crate::matrix::{BlockMatrix, Matrix};
use crate::module::{adic_stage, adic_transition, Ideal, ModuleMorphism, PresentedModule};
use crate::ring::{Elem, Ring};

/// The iterated-cone Koszul complex; the empty list yields the ring in
/// degree 0.
pub fn koszul(ring: &Ring, elements: &[Elem]) -> Result<Complex> {
    for e in elements {
        ring.expect(e)?;
    }
    let mut k = Complex::stalk(ring.clone(), 0, 1);
    for x in elements {
        let (next, _, _) = cone(&scalar_map(&k, x))?;
        k = next;
    }
    Ok(k)
}

/// `K^∨ = hom(K, A)`.
pub fn koszul_dual(k: &Complex) -> Result<Complex> {
    k.hom_from(&Complex::stalk(k.ring().clone(), 0, 1))
}

/// Koszul stages `K(x_1^t, ..., x_n^t)` for `t = 1..=horizon` together with
/// the restriction chain maps between consecutive stages.
#[derive(Clone, Debug)]
pub struct KoszulTower {
    ring: Ring,
    ideal: Ideal,
    stages: Vec<Complex>,
    /// `restrictions[i]: stages[i+1] -> stages[i]`.
    restrictions: Vec<ChainMap>,
}

impl KoszulTower {
    pub fn new(ideal: &Ideal, horizon: usize) -> Result<KoszulTower> {
        if horizon == 0 {
            return Err(Error::ZeroStage);
        }
        let ring = ideal.ring().clone();
        let mut stages = Vec::with_capacity(horizon);
        for t in 1..=horizon {
            let pows: Vec<Elem> = ideal
                .generators()
                .iter()
                .map(|x| ring.pow(x, t as u32))
                .collect();
            stages.push(koszul(&ring, &pows)?);
        }
        let mut restrictions = Vec::with_capacity(horizon.saturating_sub(1));
        for t in 1..horizon {
            restrictions.push(restriction_map(&ring, ideal.generators(), t)?);
        }
        Ok(KoszulTower {
            ring,
            ideal: ideal.clone(),
            stages,
            restrictions,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Stage `t >= 1`.
    pub fn stage(&self, t: usize) -> Result<&Complex> {
        self.stages
            .get(t.checked_sub(1).ok_or(Error::ZeroStage)?)
            .ok_or_else(|| Error::HorizonInsufficient(format!("stage {t} beyond tower horizon")))
    }

    /// Restriction `K(x^{t+1}) -> K(x^t)`.
    pub fn restriction(&self, t: usize) -> Result<&ChainMap> {
        self.restrictions
            .get(t.checked_sub(1).ok_or(Error::ZeroStage)?)
            .ok_or_else(|| Error::HorizonInsufficient(format!("restriction {t} beyond horizon")))
    }
}

/// Builds `K(x^{t+1}) -> K(x^t)` through the iterated cone: degree-0
/// component identity, degree -1 component multiplication by `x`, extended by
/// `diag(x_r * rho, rho)` through each cone.
fn restriction_map(ring: &Ring, generators: &[Elem], t: usize) -> Result<ChainMap> {
    let mut upper = Complex::stalk(ring.clone(), 0, 1);
    let mut lower = Complex::stalk(ring.clone(), 0, 1);
    let mut rho = ChainMap::identity(&upper);
    for x in generators {
        let xt = ring.pow(x, t as u32);
        let xt1 = ring.pow(x, t as u32 + 1);
        let (next_upper, _, _) = cone(&scalar_map(&upper, &xt1))?;
        let (next_lower, _, _) = cone(&scalar_map(&lower, &xt))?;
        let lo = next_upper.lo().min(next_lower.lo());
        let hi = next_upper.hi().max(next_lower.hi());
        let comps = (lo..=hi)
            .map(|n| {
                let mut b = BlockMatrix::new(
                    ring.clone(),
                    vec![lower.rank(n + 1), lower.rank(n)],
                    vec![upper.rank(n + 1), upper.rank(n)],
                );
                let scaled = rho.comp(n + 1).scale(x);
                if scaled.rows() > 0 && scaled.cols() > 0 {
                    b.set(0, 0, scaled);
                }
                let plain = rho.comp(n);
                if plain.rows() > 0 && plain.cols() > 0 {
                    b.set(1, 1, plain);
                }
                b.build()
            })
            .collect();
        rho = ChainMap::new(next_upper.clone(), next_lower.clone(), lo, comps)?;
        upper = next_upper;
        lower = next_lower;
    }
    Ok(rho)
}

/// Completion stage `X ⊗ K(x^t)`.
pub fn lambda_stage(x: &Complex, ideal: &Ideal, t: usize) -> Result<Complex> {
    if t == 0 {
        return Err(Error::ZeroStage);
    }
    let ring = ideal.ring().clone();
    let pows: Vec<Elem> = ideal
        .generators()
        .iter()
        .map(|g| ring.pow(g, t as u32))
        .collect();
    x.tensor(&koszul(&ring, &pows)?)
}

/// Torsion stage `hom(K(x^t), X)`.
pub fn gamma_stage(x: &Complex, ideal: &Ideal, t: usize) -> Result<Complex> {
    if t == 0 {
        return Err(Error::ZeroStage);
    }
    let ring = ideal.ring().clone();
    let pows: Vec<Elem> = ideal
        .generators()
        .iter()
        .map(|g| ring.pow(g, t as u32))
        .collect();
    koszul(&ring, &pows)?.hom_from(x)
}

/// Tower transition `Λ_{t+1} X -> Λ_t X`.
pub fn lambda_transition(x: &Complex, tower: &KoszulTower, t: usize) -> Result<ChainMap> {
    tensor_map(&ChainMap::identity(x), tower.restriction(t)?)
}

/// Tower transition `Γ_t X -> Γ_{t+1} X` (precompose with the restriction).
pub fn gamma_transition(x: &Complex, tower: &KoszulTower, t: usize) -> Result<ChainMap> {
    hom_map_precompose(tower.restriction(t)?, x)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TowerMode {
    Gamma,
    Lambda,
}

/// Horizon-bounded stabilization verdict; never a claim about the true limit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stabilization {
    /// All transitions from this stage (1-based) up to the horizon are
    /// isomorphisms.
    StabilizedAt(usize),
    NotByHorizon,
}

pub struct DegreeRow {
    pub degree: i64,
    /// Homology at stages `t = 1..=horizon`.
    pub modules: Vec<PresentedModule>,
    /// Induced maps on homology; for `Lambda` the map `t+1 -> t`, for
    /// `Gamma` the map `t -> t+1`.
    pub transitions: Vec<ModuleMorphism>,
    pub verdict: Stabilization,
}

pub struct TowerReport {
    pub mode: TowerMode,
    pub horizon: usize,
    pub rows: Vec<DegreeRow>,
    /// For `Lambda` on a degree-0 stalk: does the degree-0 homology tower
    /// match the adic tower, maps included?
    pub adic_match: Option<bool>,
}

/// Per-degree homology of the torsion or completion tower of `x`, with
/// transition maps and stabilization verdicts.
pub fn tower_report(
    x: &Complex,
    ideal: &Ideal,
    horizon: usize,
    mode: TowerMode,
) -> Result<TowerReport> {
    if horizon == 0 {
        return Err(Error::ZeroStage);
    }
    let tower = KoszulTower::new(ideal, horizon)?;
    let stages: Vec<Complex> = (1..=horizon)
        .map(|t| match mode {
            TowerMode::Lambda => x.tensor(tower.stage(t)?),
            TowerMode::Gamma => tower.stage(t)?.hom_from(x),
        })
        .collect::<Result<_>>()?;
    let transitions: Vec<ChainMap> = (1..horizon)
        .map(|t| match mode {
            TowerMode::Lambda => lambda_transition(x, &tower, t),
            TowerMode::Gamma => gamma_transition(x, &tower, t),
        })
        .collect::<Result<_>>()?;
    let lo = stages.iter().map(Complex::lo).min().unwrap_or(0);
    let hi = stages.iter().map(Complex::hi).max().unwrap_or(0);
    let mut rows = Vec::new();
    for degree in lo..=hi {
        let modules: Vec<PresentedModule> = stages
            .iter()
            .map(|s| s.homology(degree).map(|h| h.module))
            .collect::<Result<_>>()?;
        let maps: Vec<ModuleMorphism> = transitions
            .iter()
            .map(|f| induced_on_homology(f, degree))
            .collect::<Result<_>>()?;
        let mut iso_flags = Vec::with_capacity(maps.len());
        for f in &maps {
            iso_flags.push(f.is_isomorphism()?);
        }
        let verdict = stabilized_verdict(&iso_flags);
        if modules
            .iter()
            .map(PresentedModule::is_zero_module)
            .collect::<Result<Vec<bool>>>()?
            .iter()
            .all(|z| *z)
        {
            continue;
        }
        rows.push(DegreeRow {
            degree,
            modules,
            transitions: maps,
            verdict,
        });
    }
    let adic_match = match mode {
        TowerMode::Gamma => None,
        TowerMode::Lambda => lambda_adic_match(x, ideal, &stages, &transitions)?,
    };
    Ok(TowerReport {
        mode,
        horizon,
        rows,
        adic_match,
    })
}

fn stabilized_verdict(iso_flags: &[bool]) -> Stabilization {
    // t0 is the least 1-based stage whose transitions through the horizon
    // are all isomorphisms; with no transitions there is no evidence.
    if iso_flags.is_empty() {
        return Stabilization::NotByHorizon;
    }
    let mut t0 = None;
    for start in 0..iso_flags.len() {
        if iso_flags[start..].iter().all(|&b| b) {
            t0 = Some(start + 1);
            break;
        }
    }
    match t0 {
        Some(t) => Stabilization::StabilizedAt(t),
        None => Stabilization::NotByHorizon,
    }
}

/// For `X` a free stalk in degree 0, compares the degree-0 homology tower of
/// the completion stages with the adic tower of the corresponding free
/// module, squares included. `None` when `X` has another shape.
fn lambda_adic_match(
    x: &Complex,
    ideal: &Ideal,
    stages: &[Complex],
    transitions: &[ChainMap],
) -> Result<Option<bool>> {
    let is_stalk_zero = x.is_empty() || (x.lo() == 0 && x.hi() == 0);
    if !is_stalk_zero {
        return Ok(None);
    }
    let ring = x.ring().clone();
    let free = PresentedModule::free(ring.clone(), x.rank(0));
    let mut comparisons: Vec<ModuleMorphism> = Vec::new();
    for (i, stage) in stages.iter().enumerate() {
        let h0 = stage.homology(0)?;
        let (adic, _) = adic_stage(&free, ideal, i + 1)?;
        if h0.module.generators() != free.generators() {
            return Ok(Some(false));
        }
        // Identity on generators; well-definedness failure means mismatch.
        let id = Matrix::identity(ring.clone(), free.generators());
        match ModuleMorphism::new(adic.clone(), h0.module.clone(), id) {
            Err(Error::InvalidMorphism(_)) => return Ok(Some(false)),
            Err(e) => return Err(e),
            Ok(cmp) => {
                if !cmp.is_isomorphism()? {
                    return Ok(Some(false));
                }
                comparisons.push(cmp);
            }
        }
    }
    for (t, f) in transitions.iter().enumerate() {
        let induced = induced_on_homology(f, 0)?;
        let adic_map = adic_transition(&free, ideal, t + 1)?;
        // square: cmp_t ∘ adic_map = induced ∘ cmp_{t+1}
        let left = comparisons[t].compose(&adic_map)?;
        let right = induced.compose(&comparisons[t + 1])?;
        if !left.equals(&right)? {
            return Ok(Some(false));
        }
        // surjectivity of the adic transitions carries over
        let (coker, _) = induced.cokernel()?;
        if !coker.is_zero_module()? {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

pub struct AdjunctionOutcome {
    pub holds: bool,
    pub left: PresentedModule,
    pub right: PresentedModule,
}

/// Compares `H^0 hom(Γ_t X, Y)` with `H^0 hom(X, Λ_t Y)` as modules.
pub fn adjunction_check(
    x: &Complex,
    y: &Complex,
    ideal: &Ideal,
    t: usize,
) -> Result<AdjunctionOutcome> {
    let left = gamma_stage(x, ideal, t)?.hom_from(y)?.homology(0)?.module;
    let right = x.homotopy_hom(&lambda_stage(y, ideal, t)?)?;
    let holds = left.is_isomorphic_to(right.module())?;
    Ok(AdjunctionOutcome {
        holds,
        left,
        right: right.module().clone(),
    })
}
