use super::*;
use crate::gsets::FiniteGroup;
use crate::gsets::GSet;
use crate::zmod::{ints, Int};

#[test]
fn burnside_c2_levels_and_norm() {
    let g = FiniteGroup::cyclic(2);
    let a = burnside(&g);
    assert!(a.mackey().validate().passed());
    assert_eq!(a.ngens(0), 1);
    assert_eq!(a.ngens(1), 2);
    // basis at C2: [C2/e], [C2/C2] (ordered by subgroup index: e first)
    // N(n) = n [C2/C2] + (n^2 - n)/2 [C2/e]
    for n in -4i64..5 {
        let v = a.norm(1, 0, &ints(&[n]));
        assert_eq!(v, ints(&[(n * n - n) / 2, n]), "n = {n}");
    }
    assert_eq!(a.res(1, 0, &ints(&[1, 0])), ints(&[2]));
    assert_eq!(a.tr(1, 0, &ints(&[1])), ints(&[1, 0]));
}

#[test]
fn burnside_c3_norm() {
    let g = FiniteGroup::cyclic(3);
    let a = burnside(&g);
    for n in -3i64..4 {
        assert_eq!(a.norm(1, 0, &ints(&[n])), ints(&[(n * n * n - n) / 3, n]));
    }
}

#[test]
fn fixed_points_examples() {
    let g = FiniteGroup::cyclic(2);
    let z = fixed_points(&RingWithAction::integers(&g, 0)).unwrap();
    assert_eq!(z.tr(1, 0, &ints(&[1])), ints(&[2]));
    assert_eq!(z.norm(1, 0, &ints(&[3])), ints(&[9]));
    let swap = vec![vec![0, 1], vec![1, 0]];
    let zz = fixed_points(&RingWithAction::functions_on(&g, &swap, 0)).unwrap();
    assert_eq!(zz.ngens(1), 1);
    assert!(zz.mackey().validate().passed());
    // N(a, b) = ab on the diagonal
    let v = zz.norm(1, 0, &ints(&[2, 5]));
    assert_eq!(zz.mackey().res(1, 0).mul_vec(&v), ints(&[10, 10]));
    assert_eq!(zz.norm(1, 0, &ints(&[1, 1])), zz.unit(1).unwrap().to_vec());
}

fn family() -> Vec<std::sync::Arc<FiniteGroup>> {
    ["C2", "C3", "C4", "C2xC2", "S3"].iter().map(|n| FiniteGroup::by_name(n).unwrap()).collect()
}

#[test]
fn burnside_satisfies_all_axioms() {
    for g in family() {
        let rep = check_tambara(&burnside(&g), None);
        assert!(rep.passed(), "{}: {:?}", g.name(), rep.failures().next());
    }
}

#[test]
fn fixed_points_satisfy_all_axioms() {
    for g in family() {
        let regular: Vec<Vec<usize>> = g.elements().map(|x| g.elements().map(|y| g.mul(x, y)).collect()).collect();
        for ring in [
            RingWithAction::integers(&g, 0),
            RingWithAction::functions_on(&g, &regular, 0),
            RingWithAction::functions_on(&g, &regular, 2),
        ] {
            let r = fixed_points(&ring).unwrap();
            let rep = check_tambara(&r, None);
            assert!(rep.passed(), "{}: {:?}", g.name(), rep.failures().next());
        }
    }
}

#[test]
fn corrupted_norm_fails_with_witness() {
    let g = FiniteGroup::cyclic(2);
    let a = burnside(&g);
    // N(n) = n [C2/C2] only: drops the (n^2 - n)/2 [C2/e] term
    let bad = crate::poly::NewtonPoly::interpolate(1, 2, 2, |x| vec![Int::from(0), x[0].clone()]);
    let rep = check_norm_of_sum(&a.with_norm(1, 0, bad), 0, 1, None).unwrap();
    assert!(!rep.passed());
    let w = rep.failures().next().unwrap().witness.clone().unwrap();
    assert!(w.contains("a="), "{w}");
}

#[test]
fn norm_of_sum_closed_form_for_c2() {
    use crate::bispan::{Bispan, Generator};
    use crate::gsets::{GMap, GSet};
    let g = FiniteGroup::cyclic(2);
    let gen = 1;
    let pi = GMap::projection(&g, 0, 1);
    let fold = GMap::fold(&GSet::coset_space(&g, 0), 2);
    let p = Bispan::generator(Generator::N, &pi).compose(&Bispan::generator(Generator::T, &fold)).unwrap();
    let regular = vec![vec![0, 1], vec![1, 0]];
    for r in [burnside(&g), fixed_points(&RingWithAction::functions_on(&g, &regular, 0)).unwrap()] {
        let m = r.ngens(0);
        for a in crate::poly::simplex_points(m, 2) {
            for b in crate::poly::simplex_points(m, 2) {
                let (a, b) = (crate::poly::to_ints(&a), crate::poly::to_ints(&b));
                let x: Vec<Int> = a.iter().chain(&b).cloned().collect();
                let got = r.eval_bispan(&p, &x).unwrap();
                let cross = r.tr(1, 0, &r.mul(0, &a, &r.conj(gen, 0, &b)));
                let want = crate::zmod::add_vec(&crate::zmod::add_vec(&r.norm(1, 0, &a), &r.norm(1, 0, &b)), &cross);
                assert!(r.eq(1, &got, &want), "a={a:?} b={b:?}");
            }
        }
    }
}

#[test]
fn restriction_of_transfer_adds_conjugate() {
    use crate::bispan::{Bispan, Generator};
    use crate::gsets::GMap;
    let g = FiniteGroup::cyclic(2);
    let a = burnside(&g);
    let pi = GMap::projection(&g, 0, 1);
    let p = Bispan::generator(Generator::R, &pi).compose(&Bispan::generator(Generator::T, &pi)).unwrap();
    for n in -3i64..4 {
        let x = ints(&[n]);
        let want = crate::zmod::add_vec(&x, &a.conj(1, 0, &x));
        assert_eq!(a.eval_bispan(&p, &x).unwrap(), want);
    }
    let id = Bispan::identity(&GSet::coset_space(&g, 1));
    assert_eq!(a.eval_bispan(&id, &ints(&[2, 3])).unwrap(), ints(&[2, 3]));
}

#[test]
fn box_squares_are_tambara_functors() {
    use std::sync::Arc;
    let g = FiniteGroup::cyclic(2);
    let swap = vec![vec![0, 1], vec![1, 0]];
    for r in [burnside(&g), fixed_points(&RingWithAction::functions_on(&g, &swap, 0)).unwrap()] {
        let r = Arc::new(r);
        let br = box_ring(&r, &r, None).unwrap();
        let rep = check_tambara(&br.ring, None);
        assert!(rep.passed(), "{:?}", rep.failures().next());
        for eta in [&br.eta_left, &br.eta_right] {
            let rep = eta.check(None);
            assert!(rep.passed(), "{:?}", rep.failures().next());
        }
        let mu = br.multiplication();
        let rep = mu.check(None);
        assert!(rep.passed(), "{:?}", rep.failures().next());
        assert!(br.eta_left.then(&mu).same_as(&TambaraHom::identity(&r)));
        assert!(br.eta_right.then(&mu).same_as(&TambaraHom::identity(&r)));
    }
}

#[test]
fn burnside_box_square_is_burnside() {
    use std::sync::Arc;
    for name in ["C3", "C2xC2", "S3"] {
        let g = FiniteGroup::by_name(name).unwrap();
        let a = Arc::new(burnside(&g));
        let br = box_ring(&a, &a, None).unwrap();
        assert!(check_tambara(&br.ring, None).passed(), "{name}");
        let mu = br.multiplication();
        assert!(mu.check(None).passed(), "{name}");
        assert!(mu.mackey.is_isomorphism(), "{name}");
    }
}

#[test]
fn square_zero_over_burnside_c2() {
    use crate::mackey::GreenModule;
    use std::sync::Arc;
    let g = FiniteGroup::cyclic(2);
    let a = Arc::new(burnside(&g));
    let sz = square_zero(&a, &GreenModule::regular(&a)).unwrap();
    let rep = check_tambara(&sz.ext, None);
    assert!(rep.passed(), "{:?}", rep.failures().next());
    assert!(sz.augmentation.check(None).passed());
    assert!(sz.section.check(None).passed());
    assert!(sz.section.then(&sz.augmentation).same_as(&TambaraHom::identity(&a)));
    // N(r, m) = (N r, tr(conj(r)·m)) on the level e = Z ⊕ Z
    for rv in -2i64..3 {
        for mv in -2i64..3 {
            let got = sz.ext.norm(1, 0, &ints(&[rv, mv]));
            let mut want = a.norm(1, 0, &ints(&[rv]));
            want.extend(a.tr(1, 0, &a.mul(0, &a.conj(1, 0, &ints(&[rv])), &ints(&[mv]))));
            assert_eq!(got, want);
        }
    }
    let ideal = kernel_ideal(&sz.augmentation).unwrap();
    let i = &ideal.functor;
    assert!(check_tambara(i, None).passed());
    for h in 0..2 {
        for m in &i.mul_table(h).mats {
            assert!(i.level(h).same_map(m, &crate::zmod::Matrix::zeros(i.ngens(h), i.ngens(h))));
        }
    }
    for x in -3i64..4 {
        assert!(i.level(1).is_zero_element(&i.norm(1, 0, &ints(&[x]))));
    }
}

#[test]
fn square_zero_with_zero_module_is_the_base() {
    use crate::mackey::{GreenModule, MackeyFunctor};
    use std::sync::Arc;
    let g = FiniteGroup::by_name("S3").unwrap();
    let a = Arc::new(burnside(&g));
    let zero = Arc::new(MackeyFunctor::zero(&g));
    let m = GreenModule::new(
        a.clone(),
        zero,
        (0..g.num_subgroups()).map(|h| Bilinear { mats: vec![crate::zmod::Matrix::zeros(0, 0); a.ngens(h)] }).collect(),
    )
    .unwrap();
    let sz = square_zero(&a, &m).unwrap();
    assert!(sz.augmentation.mackey.is_isomorphism());
    assert!(check_tambara(&sz.ext, None).passed());
}

#[test]
fn reductions_and_localizations() {
    use std::sync::Arc;
    let g = FiniteGroup::cyclic(2);
    let a = Arc::new(burnside(&g));
    let (a2, p) = reduce_mod(&a, 2).unwrap();
    assert!(check_tambara(&a2, None).passed());
    assert!(p.check(None).passed());
    // N(2) = 2 + [C2/e] puts [C2/e] into the ideal generated by 2
    assert_eq!(a2.level(1).order(), Some(Int::from(2)));
    assert_eq!(a2.level(0).order(), Some(Int::from(2)));
    let swap = vec![vec![0, 1], vec![1, 0]];
    let zz = Arc::new(fixed_points(&RingWithAction::functions_on(&g, &swap, 0)).unwrap());
    let (zz2, _) = reduce_mod(&zz, 2).unwrap();
    assert!(check_tambara(&zz2, None).passed());
    assert_eq!(zz2.level(0).order(), Some(Int::from(4)));
    let one = localize(&a, &ints(&[0, 1]), DEFAULT_DEPTH).unwrap();
    assert!(one.exact && one.depth == 0 && one.map.mackey.is_isomorphism());
    let zero = localize(&a, &ints(&[0, 0]), DEFAULT_DEPTH).unwrap();
    assert!(zero.functor.mackey().is_zero());
    // s = [C2/e]: ker(s) = span([C2/e] - 2) at the top, nothing below
    let loc = localize(&a, &ints(&[1, 0]), DEFAULT_DEPTH).unwrap();
    assert_eq!(loc.depth, 1);
    assert!(!loc.exact);
    assert!(check_tambara(&loc.functor, None).passed());
    assert!(loc.map.check(None).passed());
    assert_eq!(loc.functor.level(1).invariant_factors(), ints(&[0]));
    assert_eq!(loc.functor.level(0).invariant_factors(), ints(&[0]));
    let am = burnside_map(&a, &loc.functor);
    assert!(am.same_as(&loc.map));
}

mod change_of_group {
    use super::*;
    use crate::gsets::GSet;
    use std::sync::Arc;

    fn same_levels(a: &TambaraFunctor, b: &TambaraFunctor) -> bool {
        (0..a.group().num_subgroups()).all(|h| a.level(h).invariant_factors() == b.level(h).invariant_factors())
    }

    #[test]
    fn restriction_to_whole_group_and_trivial_subgroup() {
        let g = FiniteGroup::by_name("S3").unwrap();
        let a = burnside(&g);
        let (top, s) = restrict_to_subgroup(&a, g.whole_group());
        assert_eq!(s.levels, (0..g.num_subgroups()).collect::<Vec<_>>());
        assert!(same_levels(&top, &a));
        assert!(check_tambara(&top, None).passed());
        let c2 = FiniteGroup::cyclic(2);
        let (bottom, _) = restrict_to_subgroup(&burnside(&c2), 0);
        assert_eq!(bottom.group().num_subgroups(), 1);
        assert_eq!(bottom.level(0).invariant_factors(), ints(&[0]));
    }

    #[test]
    fn burnside_restricts_to_burnside() {
        let g = FiniteGroup::by_name("S3").unwrap();
        for h in 0..g.num_subgroups() {
            let (r, s) = restrict_to_subgroup(&burnside(&g), h);
            let rep = check_tambara(&r, None);
            assert!(rep.passed(), "{:?}", rep.failures().next());
            assert!(same_levels(&r, &burnside(&s.group)));
        }
    }

    #[test]
    fn levels_at_a_point_are_the_functor() {
        for name in ["C2", "S3"] {
            let g = FiniteGroup::by_name(name).unwrap();
            let a = burnside(&g);
            let b = f_level(&GSet::point(&g), &a).unwrap();
            let n = g.num_subgroups();
            for k in 0..n {
                assert_eq!(b.mul_table(k), a.mul_table(k));
                for h in g.subgroups_of(k) {
                    assert_eq!(b.mackey().res(k, h), a.mackey().res(k, h));
                    assert_eq!(b.mackey().tr(k, h), a.mackey().tr(k, h));
                    if h != k {
                        assert_eq!(b.norm_poly(k, h), a.norm_poly(k, h));
                    }
                }
                for x in g.elements() {
                    assert_eq!(b.mackey().conj(x, k), a.mackey().conj(x, k), "{name}");
                }
            }
        }
    }

    #[test]
    fn levels_over_orbits_are_coinduced() {
        for (name, h) in [("C2", 0), ("C3", 0)] {
            let g = FiniteGroup::by_name(name).unwrap();
            let a = burnside(&g);
            let s = SubgroupRestriction::new(&g, h);
            let cmp = coinduction_comparison(&s, &a).unwrap();
            assert!(cmp.mackey.is_isomorphism());
            let rep = cmp.check(None);
            assert!(rep.passed(), "{:?}", rep.failures().next());
            assert!(check_tambara(&cmp.source, None).passed());
        }
    }

    #[test]
    fn levels_are_additive_in_t() {
        let g = FiniteGroup::cyclic(2);
        let a = burnside(&g);
        let (t1, t2) = (GSet::coset_space(&g, 0), GSet::point(&g));
        let (sum, _) = GSet::disjoint_union(&g, &[&t1, &t2]);
        let whole = f_level(&sum, &a).unwrap();
        let parts = product_tambara(&f_level(&t1, &a).unwrap(), &f_level(&t2, &a).unwrap()).unwrap();
        assert!(same_levels(&whole, &parts));
        assert!(check_tambara(&whole, None).passed());
    }

    #[test]
    fn relative_level_at_a_point() {
        let g = FiniteGroup::cyclic(2);
        let a = Arc::new(burnside(&g));
        let sz = square_zero(&a, &crate::mackey::GreenModule::regular(&a)).unwrap();
        let f = f_relative(&GSet::point(&g), &sz.augmentation).unwrap();
        assert!(f.to_level.is_isomorphism());
        assert!(check_tambara(&f.functor.functor, None).passed());
    }
}
