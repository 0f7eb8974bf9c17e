//! The sequential-completion engine: sequences of modules or complexes,
//! Cauchy and eventually-invertible diagnostics, the lim-colim Hom formula
//! with stabilization certificates, Milnor towers, finite homotopy colimits,
//! phantom checks and finite-definition subgroup lattices.
//!
//! Every verdict is horizon-relative: a certificate speaks about the
//! materialized window, never about the true limit.

pub mod fd;
mod hocolim;
mod tower;

pub use fd::{fd_intersect, fd_subgroup, fd_sum, FiniteDefinitionSubgroup};
pub use hocolim::{
    hocolim_finite, phantom_check, phantom_check_formal, restricted_yoneda_check, truncation_tower,
    YonedaReport,
};
pub use tower::{lim_lim1, LimOutcome, MlVerdict, ModuleTower};

use crate::complex::{ChainMap, Complex, HomotopyHom, WindowedComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{hom_module, socle_series, HomModule, Ideal, ModuleMorphism, PresentedModule};
use crate::ring::{Elem, Ring};

/// An object of the ambient category: a module or a bounded complex.
#[derive(Clone, Debug)]
pub enum Obj {
    Module(PresentedModule),
    Complex(Complex),
}

impl Obj {
    pub fn ring(&self) -> &Ring {
        match self {
            Obj::Module(m) => m.ring(),
            Obj::Complex(c) => c.ring(),
        }
    }

    fn same_kind(&self, other: &Obj) -> bool {
        matches!(
            (self, other),
            (Obj::Module(_), Obj::Module(_)) | (Obj::Complex(_), Obj::Complex(_))
        )
    }
}

/// A morphism in the ambient category; complexes are taken up to homotopy.
#[derive(Clone, Debug)]
pub enum Map {
    Module(ModuleMorphism),
    Chain(ChainMap),
}

impl Map {
    pub fn source(&self) -> Obj {
        match self {
            Map::Module(f) => Obj::Module(f.source().clone()),
            Map::Chain(f) => Obj::Complex(f.source().clone()),
        }
    }

    pub fn target(&self) -> Obj {
        match self {
            Map::Module(f) => Obj::Module(f.target().clone()),
            Map::Chain(f) => Obj::Complex(f.target().clone()),
        }
    }

    pub fn compose(&self, other: &Map) -> Result<Map> {
        match (self, other) {
            (Map::Module(g), Map::Module(f)) => Ok(Map::Module(g.compose(f)?)),
            (Map::Chain(g), Map::Chain(f)) => Ok(Map::Chain(g.compose(f)?)),
            _ => Err(Error::Unsupported("mixed map kinds".into())),
        }
    }

    pub fn identity(obj: &Obj) -> Map {
        match obj {
            Obj::Module(m) => Map::Module(ModuleMorphism::identity(m)),
            Obj::Complex(c) => Map::Chain(ChainMap::identity(c)),
        }
    }

    pub fn zero(source: &Obj, target: &Obj) -> Result<Map> {
        match (source, target) {
            (Obj::Module(a), Obj::Complex(_)) | (Obj::Complex(_), Obj::Module(a)) => {
                let _ = a;
                Err(Error::Unsupported("mixed map kinds".into()))
            }
            (Obj::Module(a), Obj::Module(b)) => {
                Ok(Map::Module(ModuleMorphism::zero(a.clone(), b.clone())?))
            }
            (Obj::Complex(a), Obj::Complex(b)) => Ok(Map::Chain(ChainMap::zero(a, b))),
        }
    }

    /// Equality in the ambient category (chain maps up to homotopy).
    pub fn equals(&self, other: &Map) -> Result<bool> {
        match (self, other) {
            (Map::Module(f), Map::Module(g)) => f.equals(g),
            (Map::Chain(f), Map::Chain(g)) => f.homotopic_to(g),
            _ => Ok(false),
        }
    }
}

/// `Hom(X, Y)` in the ambient category, presented as a module with lossless
/// conversion between abstract elements and morphisms.
#[derive(Clone)]
pub struct HomGroup {
    inner: HomGroupInner,
}

#[derive(Clone)]
enum HomGroupInner {
    Module(HomModule),
    Complex(HomotopyHom),
}

impl HomGroup {
    pub fn new(x: &Obj, y: &Obj) -> Result<HomGroup> {
        match (x, y) {
            (Obj::Module(a), Obj::Module(b)) => Ok(HomGroup {
                inner: HomGroupInner::Module(hom_module(a, b)?),
            }),
            (Obj::Complex(a), Obj::Complex(b)) => Ok(HomGroup {
                inner: HomGroupInner::Complex(a.homotopy_hom(b)?),
            }),
            _ => Err(Error::Unsupported("mixed object kinds".into())),
        }
    }

    pub fn module(&self) -> &PresentedModule {
        match &self.inner {
            HomGroupInner::Module(h) => h.module(),
            HomGroupInner::Complex(h) => h.module(),
        }
    }

    pub fn basis(&self) -> Result<Vec<Map>> {
        match &self.inner {
            HomGroupInner::Module(h) => Ok(h.basis()?.into_iter().map(Map::Module).collect()),
            HomGroupInner::Complex(h) => Ok(h.basis()?.into_iter().map(Map::Chain).collect()),
        }
    }

    pub fn to_map(&self, coords: &Matrix) -> Result<Map> {
        match &self.inner {
            HomGroupInner::Module(h) => Ok(Map::Module(h.to_morphism(coords)?)),
            HomGroupInner::Complex(h) => Ok(Map::Chain(h.to_chain_map(coords)?)),
        }
    }

    pub fn from_map(&self, f: &Map) -> Result<Matrix> {
        match (&self.inner, f) {
            (HomGroupInner::Module(h), Map::Module(f)) => h.from_morphism(f),
            (HomGroupInner::Complex(h), Map::Chain(f)) => h.from_chain_map(f),
            _ => Err(Error::Unsupported("mixed map kinds".into())),
        }
    }

    /// Assembles the module morphism taking each basis element through `f`.
    fn induced_by(
        &self,
        target: &HomGroup,
        f: impl Fn(&Map) -> Result<Map>,
    ) -> Result<ModuleMorphism> {
        let ring = self.module().ring().clone();
        let mut cols = Matrix::zero(
            ring,
            target.module().generators(),
            self.module().generators(),
        );
        for (j, b) in self.basis()?.into_iter().enumerate() {
            let coords = target.from_map(&f(&b)?)?;
            for i in 0..cols.rows() {
                cols.set(i, j, coords.at(i, 0).clone());
            }
        }
        ModuleMorphism::new(self.module().clone(), target.module().clone(), cols)
    }

    /// `Hom(C, X) -> Hom(C, Y)` induced by `u: X -> Y`.
    pub fn induced_post(&self, target: &HomGroup, u: &Map) -> Result<ModuleMorphism> {
        self.induced_by(target, |b| u.compose(b))
    }

    /// `Hom(X, Z) -> Hom(Y, Z)` induced by `u: Y -> X`.
    pub fn induced_pre(&self, target: &HomGroup, u: &Map) -> Result<ModuleMorphism> {
        self.induced_by(target, |b| b.compose(u))
    }
}

/// A finite list of compact test objects.
#[derive(Clone, Debug)]
pub struct TestSet {
    items: Vec<(String, Obj)>,
}

impl TestSet {
    pub fn new(items: Vec<(String, Obj)>) -> Result<TestSet> {
        if items.is_empty() {
            return Err(Error::ShapeMismatch("empty test set".into()));
        }
        Ok(TestSet { items })
    }

    pub fn items(&self) -> &[(String, Obj)] {
        &self.items
    }
}

/// A materialized window of a sequence `X_0 -> X_1 -> ...`.
#[derive(Clone, Debug)]
pub struct ObjectSequence {
    items: Vec<Obj>,
    maps: Vec<Map>,
}

impl ObjectSequence {
    pub fn from_parts(items: Vec<Obj>, maps: Vec<Map>) -> Result<ObjectSequence> {
        if items.is_empty() || maps.len() + 1 != items.len() {
            return Err(Error::ShapeMismatch(
                "a sequence with n items needs n-1 transitions".into(),
            ));
        }
        for (i, pair) in items.windows(2).enumerate() {
            if !pair[0].same_kind(&pair[1]) || pair[0].ring() != pair[1].ring() {
                return Err(Error::ShapeMismatch(format!(
                    "item kinds differ at step {i}"
                )));
            }
        }
        Ok(ObjectSequence { items, maps })
    }

    /// Constant sequence with identity transitions, items `0..=horizon`.
    pub fn constant(obj: Obj, horizon: usize) -> ObjectSequence {
        let items = vec![obj.clone(); horizon + 1];
        let maps = vec![Map::identity(&obj); horizon];
        ObjectSequence { items, maps }
    }

    /// Constant items with multiplication-by-`a` transitions.
    pub fn scalar_tower(obj: Obj, a: &Elem, horizon: usize) -> Result<ObjectSequence> {
        let step = match &obj {
            Obj::Module(m) => Map::Module(ModuleMorphism::identity(m).scale(a)),
            Obj::Complex(c) => Map::Chain(crate::complex::scalar_map(c, a)),
        };
        Ok(ObjectSequence {
            items: vec![obj; horizon + 1],
            maps: vec![step; horizon],
        })
    }

    /// The socle tower of the Prüfer-type envelope at `a`: items `R/(a^i)`
    /// for `i = 0..=horizon`, transitions multiplication by `a`.
    pub fn prufer(ring: &Ring, a: &Elem, horizon: usize) -> Result<ObjectSequence> {
        let mut items = Vec::with_capacity(horizon + 1);
        for i in 0..=horizon {
            let m = PresentedModule::cyclic(ring.clone(), ring.pow(a, i as u32))?;
            items.push(Obj::Module(m));
        }
        let mut maps = Vec::with_capacity(horizon);
        for i in 0..horizon {
            let (Obj::Module(src), Obj::Module(dst)) = (&items[i], &items[i + 1]) else {
                unreachable!()
            };
            let m = Matrix::new(ring.clone(), 1, 1, vec![a.clone()])?;
            maps.push(Map::Module(ModuleMorphism::new(
                src.clone(),
                dst.clone(),
                m,
            )?));
        }
        Ok(ObjectSequence { items, maps })
    }

    /// The socle series of a concrete module, with inclusion transitions.
    pub fn socle_tower(
        m: &PresentedModule,
        ideal: &Ideal,
        horizon: usize,
    ) -> Result<ObjectSequence> {
        let series = socle_series(m, ideal, horizon)?;
        let items: Vec<Obj> = series.iter().map(|(s, _)| Obj::Module(s.clone())).collect();
        let mut maps = Vec::with_capacity(horizon);
        for w in series.windows(2) {
            let (lower, lower_incl) = &w[0];
            let (upper, upper_incl) = &w[1];
            // solve upper_incl ∘ f = lower_incl
            let aug = upper_incl.matrix().hcat(m.relations());
            let sol = crate::linalg::solve(&aug, lower_incl.matrix())?
                .ok_or_else(|| Error::InvalidMorphism("socle stages do not nest".into()))?;
            let f = sol.take_rows(0..upper.generators());
            maps.push(Map::Module(ModuleMorphism::new(
                lower.clone(),
                upper.clone(),
                f,
            )?));
        }
        Ok(ObjectSequence { items, maps })
    }

    /// The truncation tower `σ≥0 X -> σ≥-1 X -> ...` of a windowed complex.
    pub fn truncation_tower(w: &WindowedComplex, horizon: usize) -> Result<ObjectSequence> {
        hocolim::truncation_tower(w, horizon)
    }

    /// The torsion tower `Γ_1 X -> Γ_2 X -> ...` (items at stages
    /// `t = 1..=horizon`).
    pub fn gamma_tower(x: &Complex, ideal: &Ideal, horizon: usize) -> Result<ObjectSequence> {
        if horizon == 0 {
            return Err(Error::ZeroStage);
        }
        let tower = crate::koszul::KoszulTower::new(ideal, horizon)?;
        let items: Vec<Obj> = (1..=horizon)
            .map(|t| Ok(Obj::Complex(tower.stage(t)?.hom_from(x)?)))
            .collect::<Result<_>>()?;
        let maps: Vec<Map> = (1..horizon)
            .map(|t| Ok(Map::Chain(crate::koszul::gamma_transition(x, &tower, t)?)))
            .collect::<Result<_>>()?;
        Ok(ObjectSequence { items, maps })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Highest valid index.
    pub fn horizon(&self) -> usize {
        self.items.len() - 1
    }

    pub fn item(&self, i: usize) -> Result<&Obj> {
        self.items
            .get(i)
            .ok_or_else(|| Error::HorizonInsufficient(format!("item {i} beyond window")))
    }

    /// Transition `X_i -> X_{i+1}`.
    pub fn map(&self, i: usize) -> Result<&Map> {
        self.maps
            .get(i)
            .ok_or_else(|| Error::HorizonInsufficient(format!("transition {i} beyond window")))
    }

    /// Composite `X_i -> X_j`.
    pub fn composite(&self, i: usize, j: usize) -> Result<Map> {
        let mut acc = Map::identity(self.item(i)?);
        for k in i..j {
            acc = self.map(k)?.compose(&acc)?;
        }
        Ok(acc)
    }
}

/// Stabilization verdict for a chain of maps within a window.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WindowVerdict {
    /// Every map from this index through the window end is an isomorphism.
    StabilizedAt(usize),
    NotByHorizon,
}

fn window_verdict(iso_flags: &[bool]) -> WindowVerdict {
    if iso_flags.is_empty() {
        return WindowVerdict::NotByHorizon;
    }
    for start in 0..iso_flags.len() {
        if iso_flags[start..].iter().all(|&b| b) {
            return WindowVerdict::StabilizedAt(start);
        }
    }
    WindowVerdict::NotByHorizon
}

/// One colimit column of the formal Hom computation.
pub struct ColimCertificate {
    /// `colim_{j<=depth} Hom(X_i, Y_j)`, i.e. the group at the last stage.
    pub module: PresentedModule,
    pub verdict: WindowVerdict,
}

pub struct HomFormal {
    /// Approximation of `lim_i colim_j Hom(X_i, Y_j)` at the given depth.
    pub limit: PresentedModule,
    pub certificates: Vec<ColimCertificate>,
    pub tower: ModuleTower,
    pub lim_outcome: LimOutcome,
}

/// The lim-colim Hom formula on a finite window: for each `i <= depth` the
/// colimit of `Hom(X_i, Y_j)` over the materialized target window with a
/// stabilization certificate, then the inverse limit over `i` of the
/// resulting tower. Materializing the target one stage past `depth` lets the
/// edge column carry a confirmed certificate.
pub fn hom_formal(x: &ObjectSequence, y: &ObjectSequence, depth: usize) -> Result<HomFormal> {
    if !x.item(0)?.same_kind(y.item(0)?) || x.item(0)?.ring() != y.item(0)?.ring() {
        return Err(Error::Unsupported(
            "sequences live in different bases".into(),
        ));
    }
    if depth > x.horizon() || depth > y.horizon() {
        return Err(Error::HorizonInsufficient(format!(
            "depth {depth} exceeds the materialized windows"
        )));
    }
    let jmax = y.horizon();
    let mut certificates = Vec::with_capacity(depth + 1);
    let mut tower_items: Vec<PresentedModule> = Vec::with_capacity(depth + 1);
    let mut groups_last: Vec<HomGroup> = Vec::with_capacity(depth + 1);
    for i in 0..=depth {
        let groups: Vec<HomGroup> = (0..=jmax)
            .map(|j| HomGroup::new(x.item(i)?, y.item(j)?))
            .collect::<Result<_>>()?;
        let mut iso_flags = Vec::with_capacity(jmax);
        for j in 0..jmax {
            let step = groups[j].induced_post(&groups[j + 1], y.map(j)?)?;
            iso_flags.push(step.is_isomorphism()?);
        }
        certificates.push(ColimCertificate {
            module: groups[jmax].module().clone(),
            verdict: window_verdict(&iso_flags),
        });
        tower_items.push(groups[jmax].module().clone());
        groups_last.push(groups.into_iter().next_back().unwrap());
    }
    // the tower over i: precompose with the transitions of X
    let mut tower_maps = Vec::with_capacity(depth);
    for i in 0..depth {
        tower_maps.push(groups_last[i + 1].induced_pre(&groups_last[i], x.map(i)?)?);
    }
    let tower = ModuleTower::from_parts(tower_items, tower_maps)?;
    let lim_outcome = lim_lim1(&tower)?;
    Ok(HomFormal {
        limit: lim_outcome.limit.clone(),
        certificates,
        tower,
        lim_outcome,
    })
}

/// Per-test Cauchy verdicts: the least `n_C` from which every induced map
/// `Hom(C, X_i) -> Hom(C, X_{i+1})` in the window is an isomorphism.
pub fn is_cauchy(
    x: &ObjectSequence,
    tests: &TestSet,
    horizon: usize,
) -> Result<Vec<(String, WindowVerdict)>> {
    if horizon > x.horizon() {
        return Err(Error::HorizonInsufficient(format!(
            "horizon {horizon} exceeds the window"
        )));
    }
    let mut out = Vec::new();
    for (label, c) in tests.items() {
        let groups: Vec<HomGroup> = (0..=horizon)
            .map(|i| HomGroup::new(c, x.item(i)?))
            .collect::<Result<_>>()?;
        let mut iso_flags = Vec::with_capacity(horizon);
        for i in 0..horizon {
            let step = groups[i].induced_post(&groups[i + 1], x.map(i)?)?;
            iso_flags.push(step.is_isomorphism()?);
        }
        out.push((label.clone(), window_verdict(&iso_flags)));
    }
    Ok(out)
}

/// A morphism of sequences carried by stage representatives
/// `X_i -> Y_{j(i)}` with compatibility certificates.
#[derive(Clone)]
pub struct FormalMorphism {
    source: ObjectSequence,
    target: ObjectSequence,
    /// `reps[i] = (j(i), f_i : X_i -> Y_{j(i)})`.
    reps: Vec<(usize, Map)>,
}

impl FormalMorphism {
    pub fn new(
        source: ObjectSequence,
        target: ObjectSequence,
        reps: Vec<(usize, Map)>,
    ) -> Result<FormalMorphism> {
        if reps.is_empty() || reps.len() > source.len() {
            return Err(Error::ShapeMismatch("one representative per stage".into()));
        }
        let fm = FormalMorphism {
            source,
            target,
            reps,
        };
        for i in 0..fm.reps.len() - 1 {
            if !fm.compatible_at(i)? {
                return Err(Error::InvalidMorphism(format!(
                    "representatives at stages {i} and {} are incompatible",
                    i + 1
                )));
            }
        }
        Ok(fm)
    }

    /// Compatibility of consecutive representatives, pushed into the common
    /// target stage.
    fn compatible_at(&self, i: usize) -> Result<bool> {
        let (j0, f0) = &self.reps[i];
        let (j1, f1) = &self.reps[i + 1];
        let j = (*j0).max(*j1);
        let left = self
            .target
            .composite(*j1, j)?
            .compose(&f1.compose(self.source.map(i)?)?)?;
        let right = self.target.composite(*j0, j)?.compose(f0)?;
        left.equals(&right)
    }

    pub fn identity(x: &ObjectSequence) -> Result<FormalMorphism> {
        let reps = (0..x.len())
            .map(|i| Ok((i, Map::identity(x.item(i)?))))
            .collect::<Result<_>>()?;
        FormalMorphism::new(x.clone(), x.clone(), reps)
    }

    pub fn zero(x: &ObjectSequence, y: &ObjectSequence) -> Result<FormalMorphism> {
        let n = x.len().min(y.len());
        let reps = (0..n)
            .map(|i| Ok((i, Map::zero(x.item(i)?, y.item(i)?)?)))
            .collect::<Result<_>>()?;
        FormalMorphism::new(x.clone(), y.clone(), reps)
    }

    pub fn reps(&self) -> &[(usize, Map)] {
        &self.reps
    }

    pub fn source(&self) -> &ObjectSequence {
        &self.source
    }

    pub fn target(&self) -> &ObjectSequence {
        &self.target
    }

    pub fn depth(&self) -> usize {
        self.reps.len() - 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FormalMorphism) -> Result<FormalMorphism> {
        let mut reps = Vec::new();
        for (i, (j, f)) in other.reps.iter().enumerate() {
            let Some((k, g)) = self.reps.get(*j) else {
                break;
            };
            reps.push((*k, g.compose(f)?));
            let _ = i;
        }
        FormalMorphism::new(other.source.clone(), self.target.clone(), reps)
    }
}

/// Per-test eventual-invertibility verdicts for a formal morphism.
pub fn eventually_invertible(
    f: &FormalMorphism,
    tests: &TestSet,
    horizon: usize,
) -> Result<Vec<(String, WindowVerdict)>> {
    if horizon > f.depth() {
        return Err(Error::HorizonInsufficient(format!(
            "horizon {horizon} exceeds the representative window"
        )));
    }
    let mut out = Vec::new();
    for (label, c) in tests.items() {
        let mut iso_flags = Vec::with_capacity(horizon + 1);
        for i in 0..=horizon {
            let (j, rep) = &f.reps[i];
            let src = HomGroup::new(c, f.source.item(i)?)?;
            let dst = HomGroup::new(c, f.target.item(*j)?)?;
            let step = src.induced_post(&dst, rep)?;
            iso_flags.push(step.is_isomorphism()?);
        }
        out.push((label.clone(), window_verdict(&iso_flags)));
    }
    Ok(out)
}

/// Assembles the colim-Hom tower of a pair of sequences and reports the
/// Mittag-Leffler certificate; the phantomless diagnostic of a class of
/// sequences is this check on every pair.
pub fn phantomless_check(
    x: &ObjectSequence,
    y: &ObjectSequence,
    depth: usize,
) -> Result<MlVerdict> {
    Ok(hom_formal(x, y, depth)?.lim_outcome.verdict)
}
