//! Inverse towers of presented modules; the finite Milnor sequence: the
//! inverse limit as the kernel of `id - shift` on the finite product, and a
//! Mittag-Leffler certificate from stabilizing image chains.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{BlockMatrix, Matrix};
use crate::module::{adic_stage, adic_transition, Ideal, ModuleMorphism, PresentedModule};
use crate::ring::Elem;

/// `A_0 <- A_1 <- ... <- A_d`; `maps[i]` points `items[i+1] -> items[i]`.
#[derive(Clone, Debug)]
pub struct ModuleTower {
    items: Vec<PresentedModule>,
    maps: Vec<ModuleMorphism>,
}

impl ModuleTower {
    pub fn from_parts(
        items: Vec<PresentedModule>,
        maps: Vec<ModuleMorphism>,
    ) -> Result<ModuleTower> {
        if items.is_empty() || maps.len() + 1 != items.len() {
            return Err(Error::ShapeMismatch(
                "a tower with n items needs n-1 maps".into(),
            ));
        }
        Ok(ModuleTower { items, maps })
    }

    pub fn constant(m: PresentedModule, depth: usize) -> ModuleTower {
        let maps = vec![ModuleMorphism::identity(&m); depth];
        ModuleTower {
            items: vec![m; depth + 1],
            maps,
        }
    }

    /// The adic tower `M/MI <- M/MI^2 <- ...`, stages `1..=depth`.
    pub fn adic(m: &PresentedModule, ideal: &Ideal, depth: usize) -> Result<ModuleTower> {
        if depth == 0 {
            return Err(Error::ZeroStage);
        }
        let items: Vec<PresentedModule> = (1..=depth)
            .map(|n| Ok(adic_stage(m, ideal, n)?.0))
            .collect::<Result<_>>()?;
        let maps: Vec<ModuleMorphism> = (1..depth)
            .map(|n| adic_transition(m, ideal, n))
            .collect::<Result<_>>()?;
        ModuleTower::from_parts(items, maps)
    }

    /// Constant items with multiplication maps pointing down.
    pub fn scalar(m: &PresentedModule, a: &Elem, depth: usize) -> ModuleTower {
        let step = ModuleMorphism::identity(m).scale(a);
        ModuleTower {
            items: vec![m.clone(); depth + 1],
            maps: vec![step; depth],
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.items.len() - 1
    }

    pub fn item(&self, i: usize) -> &PresentedModule {
        &self.items[i]
    }

    pub fn map(&self, i: usize) -> &ModuleMorphism {
        &self.maps[i]
    }

    /// Composite `items[j] -> items[i]` for `i <= j`.
    pub fn composite(&self, i: usize, j: usize) -> Result<ModuleMorphism> {
        let mut acc = ModuleMorphism::identity(&self.items[j]);
        for k in (i..j).rev() {
            acc = self.maps[k].compose(&acc)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MlVerdict {
    /// Image chains stabilize inside the window: `lim^1` of the truncated
    /// data vanishes.
    MittagLeffler,
    Undetermined,
}

pub struct LimOutcome {
    pub limit: PresentedModule,
    /// For each stage `i`, the lengths of the chain of images from later
    /// stages.
    pub image_chain_lengths: Vec<Vec<crate::module::Length>>,
    pub verdict: MlVerdict,
}

/// The finite Milnor data of a tower: the limit as the kernel of
/// `(a_i) -> (a_i - φ_i(a_{i+1}))` on the finite product, and the
/// Mittag-Leffler certificate from image chains.
pub fn lim_lim1(tower: &ModuleTower) -> Result<LimOutcome> {
    let d = tower.depth();
    let ring = tower.item(0).ring().clone();
    let total = PresentedModule::direct_sum(&tower.items)?;
    let limit = if d == 0 {
        tower.item(0).clone()
    } else {
        let partial = PresentedModule::direct_sum(&tower.items[..d])?;
        let gen_sizes_src: Vec<usize> = tower
            .items
            .iter()
            .map(PresentedModule::generators)
            .collect();
        let gen_sizes_dst: Vec<usize> = tower.items[..d]
            .iter()
            .map(PresentedModule::generators)
            .collect();
        let mut block = BlockMatrix::new(ring.clone(), gen_sizes_dst, gen_sizes_src);
        for i in 0..d {
            block.set(
                i,
                i,
                Matrix::identity(ring.clone(), tower.item(i).generators()),
            );
            block.set(i, i + 1, tower.map(i).matrix().neg());
        }
        let shift = ModuleMorphism::new(total.module.clone(), partial.module, block.build())?;
        shift.kernel()?.0
    };
    // image chains: for each stage i the images of the composites from j >= i
    let mut image_chain_lengths = Vec::with_capacity(d + 1);
    let mut stabilized = vec![true; d + 1];
    for i in 0..=d {
        let mut lengths = Vec::new();
        let mut prev_gens: Option<Matrix> = None;
        let mut stable_from: Option<usize> = None;
        for j in i..=d {
            let comp = tower.composite(i, j)?;
            let gens = comp.matrix().clone();
            let (im, _, _) = comp.image()?;
            lengths.push(im.length()?);
            if let Some(prev) = &prev_gens {
                let eq = submodule_equal(tower.item(i), prev, &gens)?;
                if eq {
                    if stable_from.is_none() {
                        stable_from = Some(j - 1);
                    }
                } else {
                    stable_from = None;
                }
            }
            prev_gens = Some(gens);
        }
        // the chain must be constant from some stage strictly before the end
        stabilized[i] = match stable_from {
            Some(_) => true,
            None => i == d,
        };
        image_chain_lengths.push(lengths);
    }
    let verdict = if stabilized.iter().all(|&b| b) {
        MlVerdict::MittagLeffler
    } else {
        MlVerdict::Undetermined
    };
    Ok(LimOutcome {
        limit,
        image_chain_lengths,
        verdict,
    })
}

/// Equality of the submodules generated by two sets of columns inside the
/// ambient module.
fn submodule_equal(ambient: &PresentedModule, a: &Matrix, b: &Matrix) -> Result<bool> {
    let into = |gens: &Matrix, target: &Matrix| -> Result<bool> {
        let aug = gens.hcat(ambient.relations());
        Ok(linalg::solve(&aug, target)?.is_some())
    };
    Ok(into(a, b)? && into(b, a)?)
}
