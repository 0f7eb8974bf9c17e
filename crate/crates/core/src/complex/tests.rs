use super::*;
use crate::module::{hom_module, Length};

fn z() -> Ring {
    Ring::integers()
}

fn zmod(m: i64) -> PresentedModule {
    PresentedModule::cyclic(z(), z().from_i64(m)).unwrap()
}

/// Two-term complex `R --a--> R` in degrees `[-1, 0]`.
fn kos(a: i64) -> Complex {
    Complex::two_term(-1, Matrix::from_rows_i64(z(), &[vec![a]]).unwrap())
}

#[test]
fn shift_identities() {
    let x = kos(2);
    assert_eq!(x.shift(0), x);
    assert_eq!(x.shift(1).shift(-1), x);
    let stalk = Complex::stalk(z(), 0, 1);
    assert_eq!(stalk.shift(1).lo(), -1);
}

#[test]
fn cone_of_identity_is_acyclic() {
    let x = kos(2);
    let (c, _, _) = cone(&ChainMap::identity(&x)).unwrap();
    assert!(c.is_acyclic().unwrap());
}

#[test]
fn cone_of_zero_is_degreewise_sum() {
    let x = kos(2);
    let y = Complex::stalk(z(), 0, 2);
    let (c, _, _) = cone(&ChainMap::zero(&x, &y)).unwrap();
    let expected = x.shift(1).direct_sum(&y);
    for n in c.lo() - 1..=c.hi() + 1 {
        assert_eq!(c.rank(n), expected.rank(n), "rank at {n}");
    }
}

#[test]
fn cone_of_two_on_z() {
    let x = Complex::stalk(z(), 0, 1);
    let f = scalar_map(&x, &z().from_i64(2));
    let (c, _, _) = cone(&f).unwrap();
    assert!(c
        .homology(0)
        .unwrap()
        .module
        .is_isomorphic_to(&zmod(2))
        .unwrap());
    assert!(c.homology(-1).unwrap().module.is_zero_module().unwrap());
}

#[test]
fn triangle_maps_compose_to_zero_up_to_homotopy() {
    let x = kos(2);
    let y = kos(6);
    // x -> y: degree -1 identity, degree 0 multiplication by 3.
    let f = ChainMap::new(
        x.clone(),
        y.clone(),
        -1,
        vec![
            Matrix::from_rows_i64(z(), &[vec![1]]).unwrap(),
            Matrix::from_rows_i64(z(), &[vec![3]]).unwrap(),
        ],
    )
    .unwrap();
    let (_, inc, prj) = cone(&f).unwrap();
    let composite = inc.compose(&f).unwrap();
    assert!(composite.is_null_homotopic().unwrap());
    let second = prj.compose(&inc).unwrap();
    assert!(second.is_null_homotopic().unwrap());
}

#[test]
fn tensor_with_unit_stalk() {
    let x = kos(2);
    let unit = Complex::stalk(z(), 0, 1);
    let t = x.tensor(&unit).unwrap();
    assert_eq!(t, x);
    let a = Complex::stalk(z(), 1, 2);
    let b = Complex::stalk(z(), 2, 3);
    let t = a.tensor(&b).unwrap();
    assert_eq!(t.rank(3), 6);
    assert_eq!(t.total_rank(), 6);
}

#[test]
fn hom_complex_computes_ext() {
    // hom(K(2), Z[0]) has homology Z/2 concentrated in one degree.
    let h = kos(2).hom_from(&Complex::stalk(z(), 0, 1)).unwrap();
    let mut nonzero = Vec::new();
    for n in h.lo()..=h.hi() {
        let m = h.homology(n).unwrap().module;
        if !m.is_zero_module().unwrap() {
            nonzero.push((n, m));
        }
    }
    assert_eq!(nonzero.len(), 1);
    assert!(nonzero[0].1.is_isomorphic_to(&zmod(2)).unwrap());
}

#[test]
fn homology_examples() {
    let x = kos(5);
    assert!(x
        .homology(0)
        .unwrap()
        .module
        .is_isomorphic_to(&zmod(5))
        .unwrap());
    assert!(x.homology(-1).unwrap().module.is_zero_module().unwrap());
    assert!(Complex::zero(z())
        .homology(0)
        .unwrap()
        .module
        .is_zero_module()
        .unwrap());
}

#[test]
fn homotopy_hom_examples() {
    let stalk = Complex::stalk(z(), 0, 1);
    let h = stalk.homotopy_hom(&stalk).unwrap();
    assert_eq!(h.module().length().unwrap(), Length::Infinite);
    assert!(h
        .module()
        .is_isomorphic_to(&PresentedModule::free(z(), 1))
        .unwrap());

    let k2 = kos(2);
    let h = k2.homotopy_hom(&k2).unwrap();
    assert!(h.module().is_isomorphic_to(&zmod(2)).unwrap());

    let (contractible, _, _) = cone(&ChainMap::identity(&k2)).unwrap();
    let h = k2.homotopy_hom(&contractible).unwrap();
    assert!(h.module().is_zero_module().unwrap());
}

#[test]
fn homotopy_hom_of_k2_brute_force() {
    // All chain self-maps of K(2) are pairs (a, b) with 2a = 2b; modulo
    // homotopies (2s, 2s). Enumerate small representatives directly.
    let k2 = kos(2);
    let h = k2.homotopy_hom(&k2).unwrap();
    let mut classes = std::collections::BTreeSet::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            if 2 * a != 2 * b {
                continue;
            }
            let f = ChainMap::new(
                k2.clone(),
                k2.clone(),
                -1,
                vec![
                    Matrix::from_rows_i64(z(), &[vec![b]]).unwrap(),
                    Matrix::from_rows_i64(z(), &[vec![a]]).unwrap(),
                ],
            )
            .unwrap();
            let class = h.from_chain_map(&f).unwrap();
            let rep = h.to_chain_map(&class).unwrap();
            assert!(rep.sub(&f).is_null_homotopic().unwrap());
            classes.insert(f.is_null_homotopic().unwrap());
        }
    }
    // both the zero class and a nonzero class occur
    assert_eq!(classes.len(), 2);
    assert_eq!(h.module().finite_length().unwrap(), 1);
}

#[test]
fn homotopy_hom_from_free_stalk_is_h0() {
    let y = kos(6);
    let h = Complex::stalk(z(), 0, 1).homotopy_hom(&y).unwrap();
    let h0 = y.homology(0).unwrap().module;
    assert!(h.module().is_isomorphic_to(&h0).unwrap());
}

#[test]
fn truncation_examples() {
    let x = kos(2);
    let (t, map) = x.truncate_ge(-5);
    assert_eq!(t, x);
    assert!(map.compose(&ChainMap::identity(&t)).is_ok());
    let (t, _) = x.truncate_ge(1);
    assert!(t.is_empty());
    let (t, _) = x.truncate_ge(0);
    assert_eq!(t, Complex::stalk(z(), 0, 1));
}

#[test]
fn truncation_cone_is_concentrated() {
    // X supported on [-2, 0]; the cone of σ≥-1 X -> σ≥-2 X has homology only
    // in degree -2, where it is free of rank X^{-2}.
    let d1 = Matrix::from_rows_i64(z(), &[vec![2], vec![0]]).unwrap();
    let d0 = Matrix::from_rows_i64(z(), &[vec![0, 3]]).unwrap();
    let x = Complex::new(z(), -2, vec![1, 2, 1], vec![d1, d0]).unwrap();
    let (t1, m1) = x.truncate_ge(-1);
    let incl = ChainMap::new(
        t1.clone(),
        x.clone(),
        t1.lo(),
        (t1.lo()..=t1.hi()).map(|n| m1.comp(n)).collect(),
    )
    .unwrap();
    let (c, _, _) = cone(&incl).unwrap();
    for n in c.lo()..=c.hi() {
        let h = c.homology(n).unwrap().module;
        if n == -2 {
            assert!(h
                .is_isomorphic_to(&PresentedModule::free(z(), x.rank(-2)))
                .unwrap());
        } else {
            assert!(h.is_zero_module().unwrap(), "degree {n}");
        }
    }
}

#[test]
fn quasi_iso_checks() {
    let x = kos(2);
    assert!(ChainMap::identity(&x).is_quasi_iso().unwrap());
    let y = Complex::stalk(z(), 0, 1);
    assert!(!ChainMap::zero(&x, &y).is_quasi_iso().unwrap());
    // K(p) resolves Z/p: homology is Z/p concentrated in degree 0.
    let k = kos(5);
    assert!(k
        .homology(0)
        .unwrap()
        .module
        .is_isomorphic_to(&zmod(5))
        .unwrap());
    assert!(k.homology(-1).unwrap().module.is_zero_module().unwrap());
}

#[test]
fn hom_tensor_adjunction_on_h0() {
    // H^0 hom(X⊗K, Y) ≅ H^0 hom(X, hom(K, Y)) on small instances.
    let cases = [
        (kos(2), kos(3), kos(4)),
        (Complex::stalk(z(), 0, 2), kos(2), kos(2)),
        (kos(6), Complex::stalk(z(), -1, 1), kos(2)),
    ];
    for (x, k, y) in cases {
        let lhs = x.tensor(&k).unwrap().homotopy_hom(&y).unwrap();
        let inner = k.hom_from(&y).unwrap();
        let rhs = x.homotopy_hom(&inner).unwrap();
        assert!(
            lhs.module().is_isomorphic_to(rhs.module()).unwrap(),
            "adjunction failed: {:?} vs {:?}",
            lhs.module().canonical_shape().unwrap(),
            rhs.module().canonical_shape().unwrap()
        );
    }
}

#[test]
fn homotopy_hom_over_quotient_ring() {
    let m4 = Ring::modular(4u32).unwrap();
    let x = Complex::two_term(0, Matrix::from_rows_i64(m4.clone(), &[vec![2]]).unwrap());
    let y = Complex::stalk(m4.clone(), 1, 1);
    // f with degree-1 component 2 is a chain map, not null-homotopic.
    let f = ChainMap::new(
        x.clone(),
        y.clone(),
        0,
        vec![
            Matrix::zero(m4.clone(), 0, 1),
            Matrix::from_rows_i64(m4.clone(), &[vec![2]]).unwrap(),
        ],
    )
    .unwrap();
    assert!(!f.is_null_homotopic().unwrap());
    // consistency with Hom-module arithmetic over Z/4
    let a = PresentedModule::free(m4.clone(), 1);
    let h = hom_module(&a, &a).unwrap();
    assert_eq!(h.module().finite_length().unwrap(), 2);
}
