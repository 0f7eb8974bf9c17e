//! Matlis duality over supported local artinian rings: the injective
//! envelope of the simple module, the duality functor `D = Hom(-, E)`, the
//! annihilator filtration of `E`, and the `End(E)`-versus-`A/m^n` comparison.
//!
//! Two concrete shapes are supported: quotient rings `Z/p^N` and
//! `k[x]/(x^N)` (self-injective, `E = A`), and table algebras over a prime
//! field, where `E` is the coefficient-field dual of the regular module and
//! duality is not transposition of presentations.

pub mod algebra;
pub mod gf;

pub use algebra::{submodules, AlgebraModule, FiniteAlgebra};
pub use gf::GfMatrix;

use crate::error::{Error, Result};
use crate::module::{
    adic_stage, hom_module, socle, Ideal, Length, ModuleMorphism, PresentedModule,
};
use crate::ring::{factor_count, poly_deg, Elem, Ring};
use crate::Matrix;

#[derive(Clone, Debug)]
pub enum ArtinianRing {
    /// `Z/p^N` or `k[x]/(x^N)`; local and self-injective.
    Quotient {
        ring: Ring,
        /// Generator of the maximal ideal (`p` or `x`).
        radical: Elem,
        /// Nilpotency index `N`.
        index: usize,
    },
    Table(FiniteAlgebra),
}

impl ArtinianRing {
    /// Validates that a ring descriptor names a supported local artinian
    /// ring.
    pub fn from_ring(ring: Ring) -> Result<ArtinianRing> {
        match &ring {
            Ring::Modular(m) => {
                let m_int = Elem::Int(num::BigInt::from(m.clone()));
                let count = factor_count(&Ring::Integers, &m_int)?;
                // p^N exactly: a single prime divides
                let mut p = num::BigUint::from(2u32);
                while (m % &p) != num::BigUint::from(0u32) {
                    p += 1u32;
                }
                if num::pow::pow(p.clone(), count as usize) != *m {
                    return Err(Error::Unsupported(format!(
                        "Z/{m} is not local (modulus is not a prime power)"
                    )));
                }
                let radical = ring.from_bigint(num::BigInt::from(p));
                Ok(ArtinianRing::Quotient {
                    ring,
                    radical,
                    index: count as usize,
                })
            }
            Ring::PolyQuot { modulus, .. } => {
                let Elem::Poly(cs) = modulus else {
                    unreachable!()
                };
                let deg = poly_deg(modulus).unwrap();
                let coeff_zero = cs[..deg].iter().all(|c| match c {
                    Elem::Int(n) => num::Zero::is_zero(n),
                    Elem::Rat(q) => num::Zero::is_zero(q),
                    Elem::Poly(_) => false,
                });
                if !coeff_zero {
                    return Err(Error::Unsupported(
                        "quotient modulus must be x^N for a local artinian ring".into(),
                    ));
                }
                let radical = ring.var_elem()?;
                Ok(ArtinianRing::Quotient {
                    ring,
                    radical,
                    index: deg,
                })
            }
            _ => Err(Error::Unsupported(format!(
                "{ring} is not a supported local artinian ring"
            ))),
        }
    }

    pub fn table(algebra: FiniteAlgebra) -> ArtinianRing {
        ArtinianRing::Table(algebra)
    }

    pub fn nilpotency_index(&self) -> usize {
        match self {
            ArtinianRing::Quotient { index, .. } => *index,
            ArtinianRing::Table(a) => {
                let mut n = 0;
                while a.radical_power(n).cols() > 0 {
                    n += 1;
                }
                n
            }
        }
    }

    pub fn maximal_ideal(&self) -> Result<Ideal> {
        match self {
            ArtinianRing::Quotient { ring, radical, .. } => {
                Ideal::principal(ring.clone(), radical.clone())
            }
            ArtinianRing::Table(_) => Err(Error::Unsupported(
                "table algebras carry their radical as a subspace".into(),
            )),
        }
    }
}

/// A module over an [`ArtinianRing`], in the matching representation.
#[derive(Clone, Debug)]
pub enum ArtModule {
    Presented(PresentedModule),
    Table(AlgebraModule),
}

impl ArtModule {
    pub fn length(&self) -> Result<u64> {
        match self {
            ArtModule::Presented(m) => m.finite_length(),
            ArtModule::Table(m) => Ok(m.length()),
        }
    }

    pub fn is_isomorphic_to(&self, other: &ArtModule) -> Result<bool> {
        match (self, other) {
            (ArtModule::Presented(a), ArtModule::Presented(b)) => a.is_isomorphic_to(b),
            (ArtModule::Table(a), ArtModule::Table(b)) => a.is_isomorphic_to(b),
            _ => Err(Error::Unsupported("mixed module representations".into())),
        }
    }

    pub fn presented(&self) -> Result<&PresentedModule> {
        match self {
            ArtModule::Presented(m) => Ok(m),
            ArtModule::Table(_) => Err(Error::Unsupported("table module".into())),
        }
    }
}

/// The injective envelope of the unique simple module, verified: the socle
/// is simple and a Baer-style lifting test passes over every (cyclic)
/// submodule inclusion.
pub fn injective_envelope_simple(a: &ArtinianRing) -> Result<ArtModule> {
    match a {
        ArtinianRing::Quotient {
            ring,
            radical,
            index,
        } => {
            let e = PresentedModule::free(ring.clone(), 1);
            let ideal = a.maximal_ideal()?;
            let (soc, _) = socle(&e, &ideal)?;
            if soc.finite_length()? != 1 {
                return Err(Error::InvalidRing("socle of E is not simple".into()));
            }
            // Baer: every map (g^i) -> E extends along (g^i) ⊆ A.
            let hom_ae = hom_module(&e, &e)?;
            for i in 0..=*index {
                let gi = ring.pow(radical, i as u32);
                let ann = ring.pow(radical, (*index - i) as u32);
                let j = PresentedModule::cyclic(ring.clone(), ann)?;
                let incl = ModuleMorphism::new(
                    j.clone(),
                    e.clone(),
                    Matrix::new(ring.clone(), 1, 1, vec![gi])?,
                )?;
                let hom_je = hom_module(&j, &e)?;
                let restriction = hom_ae.precompose(&hom_je, &incl)?;
                let (coker, _) = restriction.cokernel()?;
                if !coker.is_zero_module()? {
                    return Err(Error::InvalidRing(format!(
                        "lifting test failed on the ideal ({})",
                        ring.fmt_elem(radical)
                    )));
                }
            }
            Ok(ArtModule::Presented(e))
        }
        ArtinianRing::Table(alg) => {
            let e = alg.regular().dual();
            if e.radical_annihilator(1).cols() != 1 {
                return Err(Error::InvalidRing("socle of E is not simple".into()));
            }
            // Baer over every submodule of the regular module.
            let reg = alg.regular();
            let hom_ae = reg.hom_basis(&e);
            for basis in submodules(&reg)? {
                let sub = reg.submodule(&basis)?;
                let hom_je = sub.hom_basis(&e);
                // restrictions span: φ ↦ φ∘incl, i.e. Φ * basis
                let p = alg.p();
                let mut restricted = GfMatrix::zero(p, e.dim() * sub.dim(), hom_ae.len());
                for (k, phi) in hom_ae.iter().enumerate() {
                    let v = phi.mul(&basis).vec_col_major();
                    for r in 0..v.rows() {
                        restricted.set(r, k, v.at(r, 0));
                    }
                }
                if restricted.rank() != hom_je.len() {
                    return Err(Error::InvalidRing(
                        "lifting test failed on a submodule".into(),
                    ));
                }
            }
            Ok(ArtModule::Table(e))
        }
    }
}

/// `D(M) = Hom(M, E)` with its natural module structure.
pub fn matlis_dual(a: &ArtinianRing, m: &ArtModule) -> Result<ArtModule> {
    match (a, m) {
        (ArtinianRing::Quotient { ring, .. }, ArtModule::Presented(m)) => {
            let e = PresentedModule::free(ring.clone(), 1);
            Ok(ArtModule::Presented(hom_module(m, &e)?.module().clone()))
        }
        (ArtinianRing::Table(alg), ArtModule::Table(m)) => {
            let e = alg.regular().dual();
            Ok(ArtModule::Table(m.hom_module(&e)?.0))
        }
        _ => Err(Error::Unsupported("module does not match the ring".into())),
    }
}

/// The dual, double dual and natural evaluation of a presented module over a
/// quotient artinian ring.
pub struct PresentedDoubleDual {
    pub dual: crate::module::HomModule,
    pub double_dual: crate::module::HomModule,
    pub evaluation: ModuleMorphism,
}

/// Builds the natural map `M -> D(D(M))` over a quotient artinian ring.
pub fn double_dual_evaluation(
    a: &ArtinianRing,
    m: &PresentedModule,
) -> Result<PresentedDoubleDual> {
    let ArtinianRing::Quotient { ring, .. } = a else {
        return Err(Error::Unsupported(
            "table algebras expose their own evaluation".into(),
        ));
    };
    if m.length()? == Length::Infinite {
        return Err(Error::InfiniteLength);
    }
    let e = PresentedModule::free(ring.clone(), 1);
    let d = hom_module(m, &e)?;
    let dd = hom_module(d.module(), &e)?;
    let mut ev = Matrix::zero(ring.clone(), dd.module().generators(), m.generators());
    let basis = d.basis()?;
    for j in 0..m.generators() {
        // φ ↦ φ(e_j), a morphism D(M) -> E
        let mut row = Matrix::zero(ring.clone(), 1, d.module().generators());
        for (k, phi) in basis.iter().enumerate() {
            row.set(0, k, phi.matrix().at(0, j).clone());
        }
        let ev_j = ModuleMorphism::new(d.module().clone(), e.clone(), row)?;
        let coords = dd.from_morphism(&ev_j)?;
        for i in 0..ev.rows() {
            ev.set(i, j, coords.at(i, 0).clone());
        }
    }
    let evaluation = ModuleMorphism::new(m.clone(), dd.module().clone(), ev)?;
    Ok(PresentedDoubleDual {
        dual: d,
        double_dual: dd,
        evaluation,
    })
}

/// Builds the evaluation `M -> D(D(M))` and verifies it is an isomorphism.
pub fn double_dual_check(a: &ArtinianRing, m: &ArtModule) -> Result<bool> {
    match (a, m) {
        (ArtinianRing::Quotient { .. }, ArtModule::Presented(m)) => {
            double_dual_evaluation(a, m)?.evaluation.is_isomorphism()
        }
        (ArtinianRing::Table(alg), ArtModule::Table(m)) => {
            let e = alg.regular().dual();
            Ok(m.double_dual_evaluation(&e)?.is_iso)
        }
        _ => Err(Error::Unsupported("module does not match the ring".into())),
    }
}

pub enum EInclusion {
    Morphism(ModuleMorphism),
    Basis(GfMatrix),
}

/// `E_n`, the submodule of `E` annihilated by `m^n`, with its inclusion.
pub fn e_filtration(a: &ArtinianRing, n: usize) -> Result<(ArtModule, EInclusion)> {
    match a {
        ArtinianRing::Quotient { ring, radical, .. } => {
            let e = PresentedModule::free(ring.clone(), 1);
            let gn = ring.pow(radical, n as u32);
            let mult = ModuleMorphism::new(
                e.clone(),
                e.clone(),
                Matrix::new(ring.clone(), 1, 1, vec![gn])?,
            )?;
            let (ker, incl) = mult.kernel()?;
            Ok((ArtModule::Presented(ker), EInclusion::Morphism(incl)))
        }
        ArtinianRing::Table(alg) => {
            let e = alg.regular().dual();
            let basis = e.radical_annihilator(n);
            let sub = e.submodule(&basis)?;
            Ok((ArtModule::Table(sub), EInclusion::Basis(basis)))
        }
    }
}

pub struct EndCompare {
    pub end_stage: ArtModule,
    pub adic: ArtModule,
    pub iso: bool,
}

/// Compares `Hom(E_n, E)` with `A/m^n` as modules.
pub fn end_e_compare(a: &ArtinianRing, n: usize) -> Result<EndCompare> {
    match a {
        ArtinianRing::Quotient { ring, .. } => {
            let (en, _) = e_filtration(a, n)?;
            let e = PresentedModule::free(ring.clone(), 1);
            let end_stage = hom_module(en.presented()?, &e)?.module().clone();
            let (adic, _) = adic_stage(&e, &a.maximal_ideal()?, n)?;
            let iso = end_stage.is_isomorphic_to(&adic)?;
            Ok(EndCompare {
                end_stage: ArtModule::Presented(end_stage),
                adic: ArtModule::Presented(adic),
                iso,
            })
        }
        ArtinianRing::Table(alg) => {
            let e = alg.regular().dual();
            let basis = e.radical_annihilator(n);
            let en = e.submodule(&basis)?;
            let (end_stage, _) = en.hom_module(&e)?;
            let adic = alg.regular().quotient(&alg.radical_power(n))?;
            let iso = end_stage.is_isomorphic_to(&adic)?;
            Ok(EndCompare {
                end_stage: ArtModule::Table(end_stage),
                adic: ArtModule::Table(adic),
                iso,
            })
        }
    }
}

/// The swap comparison `Hom(M, D N) ≅ Hom(N, D M)` as groups.
pub fn swap_isomorphic(a: &ArtinianRing, m: &ArtModule, n: &ArtModule) -> Result<bool> {
    match (a, m, n) {
        (ArtinianRing::Quotient { .. }, ArtModule::Presented(m), ArtModule::Presented(n)) => {
            let dn = matlis_dual(a, &ArtModule::Presented(n.clone()))?;
            let dm = matlis_dual(a, &ArtModule::Presented(m.clone()))?;
            let left = hom_module(m, dn.presented()?)?.module().clone();
            let right = hom_module(n, dm.presented()?)?.module().clone();
            left.is_isomorphic_to(&right)
        }
        (ArtinianRing::Table(_), ArtModule::Table(m), ArtModule::Table(n)) => {
            let ArtModule::Table(dn) = matlis_dual(a, &ArtModule::Table(n.clone()))? else {
                unreachable!()
            };
            let ArtModule::Table(dm) = matlis_dual(a, &ArtModule::Table(m.clone()))? else {
                unreachable!()
            };
            // groups here are F_p-spaces; equal dimension is isomorphism
            Ok(m.hom_basis(&dn).len() == n.hom_basis(&dm).len())
        }
        _ => Err(Error::Unsupported("module does not match the ring".into())),
    }
}
