use std::sync::Arc;

use super::*;
use crate::gsets::{FiniteGroup, GMap, GSet};
use crate::zmod::{ints, Matrix, PresentedAb};

/// Burnside Mackey functor of C2 written out by hand; `tr_scale` corrupts the transfer.
pub(crate) fn burnside_c2_by_hand(tr_scale: i64) -> MackeyFunctor {
    let g = FiniteGroup::cyclic(2);
    // subgroup 0 = e (level Z), subgroup 1 = C2 (level Z{[C2/C2], [C2/e]})
    let levels = vec![PresentedAb::free(1), PresentedAb::free(2)];
    MackeyFunctor::from_fn(
        &g,
        levels,
        |k, h| match (k, h) {
            (1, 0) => Matrix::from_i64_rows(&[vec![1, 2]]),
            _ => Matrix::identity(if k == 0 { 1 } else { 2 }),
        },
        |k, h| match (k, h) {
            (1, 0) => Matrix::from_i64_rows(&[vec![0], vec![tr_scale]]),
            _ => Matrix::identity(if k == 0 { 1 } else { 2 }),
        },
        |_, h| Matrix::identity(if h == 0 { 1 } else { 2 }),
    )
    .unwrap()
}

/// Fixed points of Z with trivial C2 action: res = 1, tr = 2.
pub(crate) fn fixed_z_c2() -> MackeyFunctor {
    let g = FiniteGroup::cyclic(2);
    MackeyFunctor::from_fn(
        &g,
        vec![PresentedAb::free(1), PresentedAb::free(1)],
        |_, _| Matrix::identity(1),
        |k, h| Matrix::from_i64_rows(&[vec![if k == h { 1 } else { 2 }]]),
        |_, _| Matrix::identity(1),
    )
    .unwrap()
}

#[test]
fn burnside_c2_validates() {
    assert!(burnside_c2_by_hand(1).validate().passed());
    let bad = burnside_c2_by_hand(2).validate();
    assert!(!bad.passed());
    let failing: Vec<&str> = bad.failures().map(|c| c.id.as_str()).collect();
    assert_eq!(failing, ["mackey.double_coset"]);
    assert!(MackeyFunctor::zero(&FiniteGroup::symmetric(3)).validate().passed());
}

#[test]
fn evaluation_at_gsets() {
    let m = burnside_c2_by_hand(1);
    let g = m.group().clone();
    let free = GSet::coset_space(&g, 0);
    assert_eq!(m.eval(&free).ngens(), 1);
    let (two, _) = GSet::disjoint_union(&g, &[&free, &free]);
    assert_eq!(m.eval(&two).ngens(), 2);
    let pi = GMap::to_point(&free);
    assert_eq!(m.transfer_along(&pi), Matrix::from_i64_rows(&[vec![0], vec![1]]));
    assert_eq!(m.restriction_along(&pi), Matrix::from_i64_rows(&[vec![1, 2]]));
}

#[test]
fn kernel_and_quotient() {
    let m = Arc::new(fixed_z_c2());
    // multiplication by 2 levelwise
    let two = MackeyHom::new(m.clone(), m.clone(), vec![Matrix::from_i64_rows(&[vec![2]]); 2]);
    assert!(two.check().passed());
    let (k, _) = two.kernel();
    assert!(k.is_zero());
    let (c, proj) = two.cokernel();
    assert_eq!(c.level(0).invariant_factors(), ints(&[2]));
    assert!(c.validate().passed());
    assert!(proj.check().passed());
}

#[test]
fn endomorphisms_of_fixed_points() {
    let m = Arc::new(fixed_z_c2());
    let hs = hom_space(&m, &m);
    // brute force: maps (a, b) with a*1 = 1*b (res) and b*2 = 2*a (tr) => a = b, so Z
    assert_eq!(hs.group().invariant_factors(), ints(&[0]));
    let id = MackeyHom::identity(&m);
    assert!(hs.coords_of(&id).is_some());
    for f in hs.basis() {
        assert!(f.check().passed());
    }
}

mod box_products {
    use super::*;
    use crate::tambara::{burnside, fixed_points, RingWithAction};

    fn regular_action(g: &FiniteGroup) -> Vec<Vec<usize>> {
        g.elements().map(|x| g.elements().map(|y| g.mul(x, y)).collect()).collect()
    }

    #[test]
    fn burnside_is_a_unit() {
        for name in ["C2", "S3"] {
            let g = FiniteGroup::by_name(name).unwrap();
            let a = Arc::new(burnside(&g));
            let z = fixed_points(&RingWithAction::integers(&g, 0)).unwrap();
            let f = fixed_points(&RingWithAction::functions_on(&g, &regular_action(&g), 0)).unwrap();
            for m in [a.mackey().clone(), z.mackey().clone(), f.mackey().clone()] {
                let bx = box_product(a.mackey(), &m).unwrap();
                assert!(bx.raw.validate().passed(), "{name}");
                let act = burnside_module(&a, &m);
                assert!(act.validate().passed());
                let phi = act.action_map(&bx);
                assert!(phi.check().passed());
                assert!(phi.is_isomorphism(), "{name}: A □ M -> M is not an isomorphism");
            }
        }
    }

    #[test]
    fn constant_z_squared_over_c2() {
        // generators u = [C2, 1⊗1], v = [e, 1⊗1] with 2u = v: the top level is Z on u
        let z = Arc::new(fixed_z_c2());
        let bx = box_product(&z, &z).unwrap();
        assert!(bx.functor.validate().passed());
        assert_eq!(bx.functor.level(1).invariant_factors(), ints(&[0]));
        assert_eq!(bx.functor.level(0).invariant_factors(), ints(&[0]));
        let u = bx.symbol(1, 1, &ints(&[1]), &ints(&[1]));
        let v = bx.symbol(1, 0, &ints(&[1]), &ints(&[1]));
        let two_u: Vec<_> = u.iter().map(|x| x * 2).collect();
        assert!(bx.functor.level(1).eq_elements(&two_u, &v));
        let ru = bx.functor.res(1, 0).mul_vec(&u);
        assert!(bx.functor.level(0).eq_elements(&ru, &bx.symbol(0, 0, &ints(&[1]), &ints(&[1]))));
    }

    #[test]
    fn relative_box_with_the_base() {
        for name in ["C2", "C3"] {
            let g = FiniteGroup::by_name(name).unwrap();
            let s = Arc::new(fixed_points(&RingWithAction::functions_on(&g, &regular_action(&g), 0)).unwrap());
            let reg = GreenModule::regular(&s);
            assert!(reg.validate().passed());
            let bx = box_over(&reg, &reg).unwrap();
            assert!(bx.raw.validate().passed());
            let mu = reg.action_map(&bx);
            assert!(mu.check().passed());
            assert!(mu.is_isomorphism(), "{name}: S □_S S -> S");
            let a = Arc::new(burnside(&g));
            let m = burnside_module(&a, s.mackey());
            let bx = box_over(&m, &GreenModule::regular(&a)).unwrap();
            assert!(bx.functor.validate().passed());
            for h in 0..g.num_subgroups() {
                assert_eq!(bx.functor.level(h).invariant_factors(), s.level(h).invariant_factors());
            }
        }
    }
}

mod internal_hom {
    use super::*;
    use crate::tambara::{burnside, fixed_points, RingWithAction};
    use crate::zmod::Int;

    #[test]
    fn maps_out_of_the_ring_are_the_module() {
        for name in ["C2", "S3"] {
            let g = FiniteGroup::by_name(name).unwrap();
            let a = Arc::new(burnside(&g));
            let z = fixed_points(&RingWithAction::integers(&g, 0)).unwrap();
            for m in [burnside_module(&a, a.mackey()), burnside_module(&a, z.mackey())] {
                let h = internal_hom_module(&GreenModule::regular(&a), &m).unwrap();
                assert!(h.functor.validate().passed(), "{name}");
                for l in 0..g.num_subgroups() {
                    assert_eq!(h.functor.level(l).invariant_factors(), m.module.level(l).invariant_factors());
                }
            }
        }
    }

    #[test]
    fn maps_from_zero_vanish() {
        let g = FiniteGroup::cyclic(2);
        let a = Arc::new(burnside(&g));
        let zero = burnside_module(&a, &Arc::new(MackeyFunctor::zero(&g)));
        let h = internal_hom_module(&zero, &GreenModule::regular(&a)).unwrap();
        assert!(h.functor.is_zero());
    }

    /// Counts module endomorphisms of `F2 × F2` with the swap by trying every matrix.
    #[test]
    fn endomorphisms_match_brute_force() {
        let g = FiniteGroup::cyclic(2);
        let swap = vec![vec![0, 1], vec![1, 0]];
        let r = Arc::new(fixed_points(&RingWithAction::functions_on(&g, &swap, 2)).unwrap());
        let m = GreenModule::regular(&r);
        let space = module_hom_space(&m, &m);
        let (p, q) = (r.ngens(0), r.ngens(1));
        let total = p * p + q * q;
        let mut count = 0;
        for bits in 0u32..(1 << total) {
            let entry = |i: usize| Int::from((bits >> i) & 1);
            let m0 = Matrix::from_rows(p, p, (0..p).map(|i| (0..p).map(|j| entry(i * p + j)).collect()).collect());
            let m1 =
                Matrix::from_rows(q, q, (0..q).map(|i| (0..q).map(|j| entry(p * p + i * q + j)).collect()).collect());
            let f = MackeyHom::new(r.mackey().clone(), r.mackey().clone(), vec![m0, m1]);
            let commutes = f.check().passed()
                && (0..2).all(|h| {
                    (0..r.ngens(h)).all(|a| {
                        let act = m.act_matrix(h, &crate::zmod::unit_vec(r.ngens(h), a));
                        r.level(h).same_map(&(f.map(h) * &act), &(&act * f.map(h)))
                    })
                });
            if commutes {
                count += 1;
            }
        }
        assert_eq!(space.group().order(), Some(Int::from(count)));
        let internal = internal_hom_module(&m, &m).unwrap();
        let id = MackeyHom::identity(r.mackey());
        assert!(space.coords_of(&id).is_some());
        assert!(internal.functor.validate().passed());
    }
}
