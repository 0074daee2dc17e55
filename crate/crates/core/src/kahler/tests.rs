use std::sync::Arc;

use super::*;
use crate::gsets::FiniteGroup;
use crate::mackey::GreenModule;
use crate::tambara::{burnside, fixed_points, localize, RingWithAction, TambaraFunctor, DEFAULT_DEPTH};
use crate::zmod::{ints, Int};

fn swap_ring(modulus: i64) -> Arc<TambaraFunctor> {
    let g = FiniteGroup::cyclic(2);
    let swap = vec![vec![0, 1], vec![1, 0]];
    Arc::new(fixed_points(&RingWithAction::functions_on(&g, &swap, modulus)).unwrap())
}

#[test]
fn classification_over_c2_mod_2() {
    let r = swap_ring(2);
    let alg = Algebra::over_burnside(&r);
    let m = GreenModule::regular(&r);
    let c = classify_over_itself(&alg, &m, None).unwrap();
    assert!(c.report.passed(), "{:?}", c.report.failures().next());
    assert_eq!(c.tambara_maps.len(), c.correspondence.len());
}

#[test]
fn classification_for_constant_f2_over_s3() {
    let g = FiniteGroup::by_name("S3").unwrap();
    let r = Arc::new(fixed_points(&RingWithAction::integers(&g, 2)).unwrap());
    let alg = Algebra::over_burnside(&r);
    let c = classify_over_itself(&alg, &GreenModule::regular(&r), None).unwrap();
    assert!(c.report.passed(), "{:?}", c.report.failures().next());
}

#[test]
fn universal_derivation_and_der_hom_for_swap() {
    let r = swap_ring(0);
    let alg = Algebra::over_burnside(&r);
    let k = kahler(&alg).unwrap();
    let rep = k.check(None);
    assert!(rep.passed(), "{:?}", rep.failures().next());
    for m in [GreenModule::regular(&r), k.omega.clone()] {
        let b = der_hom_bijection(&k, &m).unwrap();
        assert!(b.report.passed(), "{:?}", b.report.failures().next());
        for d in b.derivations.basis() {
            assert!(kernel_is_subtambara(&alg, &d).passed());
        }
    }
}

#[test]
fn localization_is_formally_etale() {
    let g = FiniteGroup::cyclic(2);
    let a = Arc::new(burnside(&g));
    let loc = localize(&a, &ints(&[1, 0]), DEFAULT_DEPTH).unwrap();
    let alg = Algebra::new(loc.map.clone());
    let k = kahler(&alg).unwrap();
    assert!(k.kernel.multiplication.mackey.is_isomorphism());
    assert!(k.omega.module.is_zero());
    assert!(k.check(None).passed());
}

fn dual_numbers(g: &Arc<FiniteGroup>, modulus: i64) -> Arc<TambaraFunctor> {
    let ring = RingWithAction::quadratic(g, 0, |_| 1);
    let ring = if modulus > 0 { ring.modulo(modulus) } else { ring };
    Arc::new(fixed_points(&ring).unwrap())
}

fn sqrt_ring(d: i64) -> Arc<TambaraFunctor> {
    let g = FiniteGroup::cyclic(2);
    Arc::new(fixed_points(&RingWithAction::quadratic(&g, d, |x| if x == g.identity() { 1 } else { -1 })).unwrap())
}

#[test]
fn classification_for_dual_numbers_mod_2() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::by_name("S3").unwrap()] {
        let r = dual_numbers(&g, 2);
        let c = classify_over_itself(&Algebra::over_burnside(&r), &GreenModule::regular(&r), None).unwrap();
        assert!(c.report.passed(), "{}: {:?}", g.name(), c.report.failures().next());
        assert!(c.tambara_maps.len() > 1);
    }
}

/// Classical `Ω_{Z[x]/(x²-d)}` is `R/(2x)`: its invariant factors computed directly.
fn classical_quadratic_omega(d: i64) -> Vec<Int> {
    // R = Z{1, x}; the ideal (2x) is spanned by 2x and 2x·x = 2d
    let rel = crate::zmod::Matrix::from_i64_rows(&[vec![0, 2 * d], vec![2, 0]]);
    crate::zmod::PresentedAb::new(2, rel).invariant_factors()
}

#[test]
fn underlying_level_is_classical() {
    for d in [0, 2, 3, -1] {
        let r = sqrt_ring(d);
        let k = kahler(&Algebra::over_burnside(&r)).unwrap();
        assert_eq!(k.omega.module.level(0).invariant_factors(), classical_quadratic_omega(d), "d = {d}");
    }
}

#[test]
fn der_hom_for_quadratic_rings() {
    let c2 = FiniteGroup::cyclic(2);
    for r in [dual_numbers(&c2, 0), sqrt_ring(2)] {
        let alg = Algebra::over_burnside(&r);
        let k = kahler(&alg).unwrap();
        let rep = k.check(None);
        assert!(rep.passed(), "{:?}", rep.failures().next());
        for m in [GreenModule::regular(&r), k.omega.clone()] {
            let b = der_hom_bijection(&k, &m).unwrap();
            assert!(b.report.passed(), "{:?}", b.report.failures().next());
            for d in b.derivations.basis() {
                assert!(kernel_is_subtambara(&alg, &d).passed());
            }
        }
    }
}

#[test]
fn hom_sets_into_square_zero_count_derivations_at_each_level() {
    use crate::tambara::{hom_tambara, restrict_to_subgroup, square_zero, Augmented, SubgroupRestriction, TambaraHom};
    let g = FiniteGroup::cyclic(2);
    let r = dual_numbers(&g, 2);
    let alg = Algebra::over_burnside(&r);
    let m = GreenModule::regular(&r);
    let sz = square_zero(&r, &m).unwrap();
    let c = Augmented { augmentation: TambaraHom::identity(&r), structure: Some(alg.structure.clone()) };
    let b = Augmented { augmentation: sz.augmentation.clone(), structure: Some(alg.structure.then(&sz.section)) };
    let homs = hom_tambara(&c, &b, None).unwrap();
    for h in 0..g.num_subgroups() {
        let s = SubgroupRestriction::new(&g, h);
        let (rh, _) = restrict_to_subgroup(&r, h);
        let sub = Algebra::over_burnside(&rh);
        let ders = derivation_space(&sub, &s.module(&m, &rh).unwrap()).unwrap();
        assert_eq!(Some(Int::from(homs.cardinality(h) as i64)), ders.group().order(), "level {h}");
    }
    assert!(homs.restriction[1][0].is_some());
}

#[test]
fn derivations_form_a_mackey_functor() {
    let g = FiniteGroup::cyclic(2);
    for r in [dual_numbers(&g, 0), sqrt_ring(2), dual_numbers(&g, 2)] {
        let alg = Algebra::over_burnside(&r);
        let m = GreenModule::regular(&r);
        let dm = der_mackey(&alg, &m).unwrap();
        let rep = dm.functor.validate();
        assert!(rep.passed(), "{:?}", rep.failures().next());
        let top = derivation_space(&alg, &m).unwrap();
        assert_eq!(dm.functor.level(g.whole_group()).invariant_factors(), top.group().invariant_factors());
        // the underlying level counts derivations of the underlying ring
        let (re, s) = crate::tambara::restrict_to_subgroup(&r, 0);
        let de = derivation_space(&Algebra::over_burnside(&re), &s.module(&m, &re).unwrap()).unwrap();
        assert_eq!(dm.functor.level(0).invariant_factors(), de.group().invariant_factors());
    }
    let r = dual_numbers(&g, 0);
    assert!(der_mackey(&Algebra::over_itself(&r), &GreenModule::regular(&r)).unwrap().functor.is_zero());
}
