//! Maps of Tambara functors.

use std::sync::Arc;

use super::functor::TambaraFunctor;
use crate::gsets::SubgroupId;
use crate::mackey::MackeyHom;
use crate::poly::{simplex_points, to_ints};
use crate::report::Report;
use crate::zmod::{unit_vec, Int, Matrix};

const HOM: &str = "map of Tambara functors";

#[derive(Clone, Debug)]
pub struct TambaraHom {
    pub source: Arc<TambaraFunctor>,
    pub target: Arc<TambaraFunctor>,
    pub mackey: MackeyHom,
}

impl TambaraHom {
    pub fn new(source: Arc<TambaraFunctor>, target: Arc<TambaraFunctor>, maps: Vec<Matrix>) -> Self {
        let mackey = MackeyHom::new(source.mackey().clone(), target.mackey().clone(), maps);
        Self { source, target, mackey }
    }

    pub fn identity(r: &Arc<TambaraFunctor>) -> Self {
        Self { source: r.clone(), target: r.clone(), mackey: MackeyHom::identity(r.mackey()) }
    }

    pub fn apply(&self, h: SubgroupId, x: &[Int]) -> Vec<Int> {
        self.mackey.apply(h, x)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TambaraHom) -> TambaraHom {
        Self { source: self.source.clone(), target: other.target.clone(), mackey: self.mackey.then(&other.mackey) }
    }

    pub fn same_as(&self, other: &TambaraHom) -> bool {
        self.mackey.same_as(&other.mackey)
    }

    /// Mackey compatibility, levelwise ring maps, units, and norms on the degree grid.
    pub fn check(&self, grid_bound: Option<usize>) -> Report {
        let mut rep = self.mackey.check();
        let (s, t) = (&self.source, &self.target);
        let g = s.group().clone();
        let n = g.num_subgroups();
        rep.declare("tambara_hom.ring_map", HOM);
        rep.declare("tambara_hom.norms", HOM);
        let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
        for h in 0..n {
            let m = s.ngens(h);
            for i in 0..m {
                for j in 0..m {
                    let (a, b) = (unit_vec(m, i), unit_vec(m, j));
                    let lhs = self.apply(h, &s.mul(h, &a, &b));
                    let rhs = t.mul(h, &self.apply(h, &a), &self.apply(h, &b));
                    rep.record("tambara_hom.ring_map", HOM, t.eq(h, &lhs, &rhs), || {
                        format!("not multiplicative at {} on generators {i},{j}", lab(h))
                    });
                }
            }
            if let (Some(us), Some(ut)) = (s.unit(h), t.unit(h)) {
                rep.record("tambara_hom.ring_map", HOM, t.eq(h, &self.apply(h, us), ut), || {
                    format!("does not preserve 1 at {}", lab(h))
                });
            }
        }
        for k in 0..n {
            for h in g.subgroups_of(k) {
                if h == k {
                    continue;
                }
                let d = grid_bound.map_or(g.index(h, k), |b| b.max(g.index(h, k)));
                for p in simplex_points(s.ngens(h), d) {
                    let x = to_ints(&p);
                    let lhs = self.apply(k, &s.norm(k, h, &x));
                    let rhs = t.norm(k, h, &self.apply(h, &x));
                    rep.record("tambara_hom.norms", HOM, t.eq(k, &lhs, &rhs), || {
                        format!("does not commute with N_{}^{} at {:?}", lab(h), lab(k), p)
                    });
                }
            }
        }
        rep
    }
}
