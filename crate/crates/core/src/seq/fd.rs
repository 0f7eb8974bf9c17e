//! Subgroups of finite definition of `Hom(C, X)`: images of induced maps
//! along morphisms `C -> D`, closed under finite sums (through `D_1 ⊕ D_2`)
//! and intersections (through the cone, or its cokernel surrogate over the
//! module base).

use super::{HomGroup, Map, Obj};
use crate::complex::cone;
use crate::error::{Error, Result};
use crate::matrix::{BlockMatrix, Matrix};
use crate::module::{ModuleMorphism, PresentedModule};

pub struct FiniteDefinitionSubgroup {
    c: Obj,
    x: Obj,
    /// The defining morphism `C -> D`.
    pub via: Map,
    /// `Hom(C, X)`.
    pub ambient: HomGroup,
    /// The image of `Hom(D, X) -> Hom(C, X)` as a module.
    pub subgroup: PresentedModule,
    /// Inclusion of the subgroup into the ambient Hom module.
    pub inclusion: ModuleMorphism,
}

impl FiniteDefinitionSubgroup {
    fn same_ambient(&self, other: &FiniteDefinitionSubgroup) -> Result<()> {
        let ok = match (&self.c, &other.c, &self.x, &other.x) {
            (Obj::Module(a), Obj::Module(b), Obj::Module(c), Obj::Module(d)) => a == b && c == d,
            (Obj::Complex(a), Obj::Complex(b), Obj::Complex(c), Obj::Complex(d)) => {
                a == b && c == d
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("ambient pairs differ".into()))
        }
    }
}

/// The subgroup of `Hom(C, X)` of maps factoring through `via: C -> D`.
pub fn fd_subgroup(c: &Obj, x: &Obj, via: &Map) -> Result<FiniteDefinitionSubgroup> {
    let ambient = HomGroup::new(c, x)?;
    let upstairs = HomGroup::new(&via.target(), x)?;
    let restriction = upstairs.induced_pre(&ambient, via)?;
    let (subgroup, inclusion, _) = restriction.image()?;
    Ok(FiniteDefinitionSubgroup {
        c: c.clone(),
        x: x.clone(),
        via: via.clone(),
        ambient,
        subgroup,
        inclusion,
    })
}

/// The pairing `C -> D_1 ⊕ D_2` of the defining morphisms.
fn paired_via(u1: &FiniteDefinitionSubgroup, u2: &FiniteDefinitionSubgroup) -> Result<Map> {
    match (&u1.via, &u2.via) {
        (Map::Module(f1), Map::Module(f2)) => {
            let ds = PresentedModule::direct_sum(&[f1.target().clone(), f2.target().clone()])?;
            let matrix = f1.matrix().vcat(f2.matrix());
            Ok(Map::Module(ModuleMorphism::new(
                f1.source().clone(),
                ds.module,
                matrix,
            )?))
        }
        (Map::Chain(f1), Map::Chain(f2)) => {
            let sum = f1.target().direct_sum(f2.target());
            let src = f1.source();
            let lo = src.lo();
            let comps = (lo..=src.hi().max(lo))
                .map(|d| {
                    let mut b = BlockMatrix::new(
                        src.ring().clone(),
                        vec![f1.target().rank(d), f2.target().rank(d)],
                        vec![src.rank(d)],
                    );
                    let c1 = f1.comp(d);
                    if c1.rows() > 0 && c1.cols() > 0 {
                        b.set(0, 0, c1);
                    }
                    let c2 = f2.comp(d);
                    if c2.rows() > 0 && c2.cols() > 0 {
                        b.set(1, 0, c2);
                    }
                    b.build()
                })
                .collect();
            Ok(Map::Chain(crate::complex::ChainMap::new(
                src.clone(),
                sum,
                lo,
                comps,
            )?))
        }
        _ => Err(Error::Unsupported("mixed map kinds".into())),
    }
}

/// `U_1 + U_2`, defined through `C -> D_1 ⊕ D_2`.
pub fn fd_sum(
    u1: &FiniteDefinitionSubgroup,
    u2: &FiniteDefinitionSubgroup,
) -> Result<FiniteDefinitionSubgroup> {
    u1.same_ambient(u2)?;
    let via = paired_via(u1, u2)?;
    fd_subgroup(&u1.c, &u1.x, &via)
}

/// `U_1 ∩ U_2`, defined through the composite `C -> D_1 -> E` where `E`
/// completes `C -> D_1 ⊕ D_2`: the genuine cone over the complex base, the
/// cokernel surrogate over the module base.
pub fn fd_intersect(
    u1: &FiniteDefinitionSubgroup,
    u2: &FiniteDefinitionSubgroup,
) -> Result<FiniteDefinitionSubgroup> {
    u1.same_ambient(u2)?;
    let paired = paired_via(u1, u2)?;
    let via = match (&paired, &u1.via) {
        (Map::Module(pair), Map::Module(f1)) => {
            let (e, proj) = pair.cokernel()?;
            let _ = e;
            // C --f1--> D_1 --inj--> D_1 ⊕ D_2 --proj--> E
            let inj = {
                let ds = pair.target().clone();
                let mut m =
                    Matrix::zero(f1.ring().clone(), ds.generators(), f1.target().generators());
                for j in 0..f1.target().generators() {
                    m.set(j, j, f1.ring().one());
                }
                ModuleMorphism::new(f1.target().clone(), ds, m)?
            };
            Map::Module(proj.compose(&inj)?.compose(f1)?)
        }
        (Map::Chain(pair), Map::Chain(f1)) => {
            let (_, inc, _) = cone(pair)?;
            let sum = pair.target().clone();
            let lo = f1.target().lo();
            let comps = (lo..=f1.target().hi().max(lo))
                .map(|d| {
                    let mut b = BlockMatrix::new(
                        f1.source().ring().clone(),
                        vec![u1.via_chain_rank(d), u2.via_chain_rank(d)],
                        vec![f1.target().rank(d)],
                    );
                    if f1.target().rank(d) > 0 {
                        b.set(
                            0,
                            0,
                            Matrix::identity(f1.source().ring().clone(), f1.target().rank(d)),
                        );
                    }
                    b.build()
                })
                .collect();
            let inj = crate::complex::ChainMap::new(f1.target().clone(), sum, lo, comps)?;
            Map::Chain(inc.compose(&inj)?.compose(f1)?)
        }
        _ => unreachable!(),
    };
    fd_subgroup(&u1.c, &u1.x, &via)
}

impl FiniteDefinitionSubgroup {
    fn via_chain_rank(&self, d: i64) -> usize {
        match &self.via {
            Map::Chain(f) => f.target().rank(d),
            Map::Module(_) => 0,
        }
    }
}
