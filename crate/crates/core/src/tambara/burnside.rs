//! The Burnside Tambara functor, computed from honest finite G-sets.
//!
//! Level `H` is the Grothendieck group of G-sets over `G/H`, free on the orbits `G/J → G/H`
//! up to isomorphism, i.e. on `H`-conjugacy classes of subgroups `J ≤ H`.

use std::sync::Arc;

use num_traits::ToPrimitive;

use super::functor::{Bilinear, TambaraFunctor};
use crate::gsets::{dependent_product_object, pullback, FiniteGroup, GMap, GSet, SubgroupId};
use crate::mackey::MackeyFunctor;
use crate::zmod::{unit_vec, Int, Matrix, PresentedAb};

/// Basis bookkeeping for the Burnside functor.
#[derive(Clone, Debug)]
pub struct BurnsideBasis {
    group: Arc<FiniteGroup>,
    /// `basis[h]`: least member of each `H`-class of subgroups of `H`, by subgroup index.
    basis: Vec<Vec<SubgroupId>>,
}

impl BurnsideBasis {
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        let basis = (0..group.num_subgroups())
            .map(|h| {
                let mut reps: Vec<SubgroupId> = Vec::new();
                for j in group.subgroups_of(h) {
                    let least = group.subgroup(h).elements.iter().map(|&x| group.conj_subgroup(x, j)).min().unwrap();
                    if !reps.contains(&least) {
                        reps.push(least);
                    }
                }
                reps.sort_unstable();
                reps
            })
            .collect();
        Self { group: group.clone(), basis }
    }

    pub fn basis(&self, h: SubgroupId) -> &[SubgroupId] {
        &self.basis[h]
    }

    /// Index of the basis element `[H/J]`.
    pub fn index_of(&self, h: SubgroupId, j: SubgroupId) -> usize {
        let g = &self.group;
        let least = g.subgroup(h).elements.iter().map(|&x| g.conj_subgroup(x, j)).min().unwrap();
        self.basis[h].iter().position(|&b| b == least).expect("J is a subgroup of H")
    }

    /// Coordinates of a G-set over `G/H` (given by its structure map).
    pub fn classify(&self, h: SubgroupId, p: &GMap) -> Vec<Int> {
        let x = p.source();
        let mut out = vec![Int::from(0); self.basis[h].len()];
        for o in x.orbits().orbits {
            // any point of the orbit over the coset eH has stabilizer inside H
            let pt = *o.points.iter().find(|&&pt| p.apply(pt) == 0).expect("orbit maps onto G/H");
            out[self.index_of(h, x.stabilizer(pt))] += 1;
        }
        out
    }

    /// The honest G-set over `G/H` with coordinates `x ≥ 0`.
    pub fn realize(&self, h: SubgroupId, x: &[Int]) -> GMap {
        let g = &self.group;
        let mut maps: Vec<GMap> = Vec::new();
        for (b, n) in x.iter().enumerate() {
            let n = n.to_usize().expect("honest elements have nonnegative coordinates");
            for _ in 0..n {
                maps.push(GMap::projection(g, self.basis[h][b], h));
            }
        }
        let base = GSet::coset_space(g, h);
        let mut acc = GMap::new(GSet::empty(g), base, vec![]).unwrap();
        for m in &maps {
            acc = acc.copair(m).expect("common target");
        }
        acc
    }
}

/// The Burnside Tambara functor of `group`.
pub fn burnside(group: &Arc<FiniteGroup>) -> TambaraFunctor {
    let bb = BurnsideBasis::new(group);
    let n = group.num_subgroups();
    let levels: Vec<PresentedAb> = (0..n).map(|h| PresentedAb::free(bb.basis(h).len())).collect();
    let res = |k: SubgroupId, h: SubgroupId| {
        let cols: Vec<Vec<Int>> = bb
            .basis(k)
            .iter()
            .map(|&j| {
                let (_, p1, _) = pullback(&GMap::projection(group, h, k), &GMap::projection(group, j, k)).unwrap();
                bb.classify(h, &p1)
            })
            .collect();
        Matrix::from_columns(bb.basis(h).len(), &cols)
    };
    let tr = |k: SubgroupId, h: SubgroupId| {
        let cols: Vec<Vec<Int>> = bb.basis(h).iter().map(|&j| unit_vec(bb.basis(k).len(), bb.index_of(k, j))).collect();
        Matrix::from_columns(bb.basis(k).len(), &cols)
    };
    let conj = |x: usize, h: SubgroupId| {
        let xh = group.conj_subgroup(x, h);
        let cols: Vec<Vec<Int>> = bb
            .basis(h)
            .iter()
            .map(|&j| unit_vec(bb.basis(xh).len(), bb.index_of(xh, group.conj_subgroup(x, j))))
            .collect();
        Matrix::from_columns(bb.basis(xh).len(), &cols)
    };
    let mackey = Arc::new(MackeyFunctor::from_fn(group, levels, res, tr, conj).expect("burnside shapes"));
    let mul: Vec<Bilinear> = (0..n)
        .map(|h| {
            let r = bb.basis(h).len();
            Bilinear::from_fn(r, r, r, |a, b| {
                let pa = GMap::projection(group, bb.basis(h)[a], h);
                let pb = GMap::projection(group, bb.basis(h)[b], h);
                let (_, p1, _) = pullback(&pa, &pb).unwrap();
                bb.classify(h, &p1.then(&pa).unwrap())
            })
        })
        .collect();
    let unit: Vec<Vec<Int>> = (0..n).map(|h| unit_vec(bb.basis(h).len(), bb.index_of(h, h))).collect();
    TambaraFunctor::from_norm_fn(mackey, mul, Some(unit), |k, h, x| {
        let p = bb.realize(h, x);
        let dp = dependent_product_object(&p, &GMap::projection(group, h, k)).expect("desk-scale dependent product");
        bb.classify(k, &dp.to_base)
    })
    .expect("burnside norms")
}

/// The unique map from the Burnside functor `a`: `[H/J] ↦ tr_J^H(1)`.
pub fn burnside_map(a: &Arc<TambaraFunctor>, r: &Arc<TambaraFunctor>) -> super::TambaraHom {
    let g = a.group();
    let bb = BurnsideBasis::new(g);
    let maps = (0..g.num_subgroups())
        .map(|h| {
            let cols: Vec<Vec<Int>> =
                bb.basis(h).iter().map(|&j| r.tr(h, j, r.unit(j).expect("unital target"))).collect();
            Matrix::from_columns(r.ngens(h), &cols)
        })
        .collect();
    super::TambaraHom::new(a.clone(), r.clone(), maps)
}
