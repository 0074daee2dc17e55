//! Mackey functors stored levelwise on every subgroup (not only class representatives).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, GMap, GSet, OrbitDecomposition, SubgroupId};
use crate::report::Report;
use crate::zmod::{Matrix, PresentedAb};

#[derive(Clone)]
pub struct MackeyFunctor {
    group: Arc<FiniteGroup>,
    levels: Vec<PresentedAb>,
    /// `res[k][h]: M(G/K) → M(G/H)` for `H ≤ K`.
    res: Vec<Vec<Option<Matrix>>>,
    /// `tr[k][h]: M(G/H) → M(G/K)` for `H ≤ K`.
    tr: Vec<Vec<Option<Matrix>>>,
    /// `conj[g][h]: M(G/H) → M(G/gHg^-1)`.
    conj: Vec<Vec<Matrix>>,
}

impl fmt::Debug for MackeyFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MackeyFunctor({}; ", self.group.name())?;
        for c in self.group.classes() {
            write!(f, "{}: {:?} ", c.id, self.levels[c.representative].invariant_factors())?;
        }
        write!(f, ")")
    }
}

const RES: &str = "restriction along G/H -> G/K";
const TR: &str = "transfer along G/H -> G/K";
const CONJ: &str = "conjugation action";
const DOUBLE_COSET: &str = "double coset formula";

impl MackeyFunctor {
    /// Builds a functor from structure-map callbacks on all pairs `H ≤ K` and all `(g, H)`.
    pub fn from_fn(
        group: &Arc<FiniteGroup>,
        levels: Vec<PresentedAb>,
        res: impl Fn(SubgroupId, SubgroupId) -> Matrix,
        tr: impl Fn(SubgroupId, SubgroupId) -> Matrix,
        conj: impl Fn(usize, SubgroupId) -> Matrix,
    ) -> Result<Self> {
        let n = group.num_subgroups();
        if levels.len() != n {
            return Err(Error::Shape(format!("{} levels for {n} subgroups", levels.len())));
        }
        let mut rs = vec![vec![None; n]; n];
        let mut ts = vec![vec![None; n]; n];
        for k in 0..n {
            for h in 0..n {
                if !group.is_subgroup_of(h, k) {
                    continue;
                }
                let r = res(k, h);
                let t = tr(k, h);
                let (mk, mh) = (levels[k].ngens(), levels[h].ngens());
                if r.shape() != (mh, mk) || t.shape() != (mk, mh) {
                    return Err(Error::Shape(format!(
                        "structure maps for ({}, {}) have the wrong size",
                        group.subgroup_label(k),
                        group.subgroup_label(h)
                    )));
                }
                rs[k][h] = Some(r);
                ts[k][h] = Some(t);
            }
        }
        let mut cs = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut row = Vec::with_capacity(n);
            for h in 0..n {
                let c = conj(g, h);
                let gh = group.conj_subgroup(g, h);
                if c.shape() != (levels[gh].ngens(), levels[h].ngens()) {
                    return Err(Error::Shape(format!(
                        "conjugation by {} on {} has the wrong size",
                        group.element_name(g),
                        group.subgroup_label(h)
                    )));
                }
                row.push(c);
            }
            cs.push(row);
        }
        Ok(Self { group: group.clone(), levels, res: rs, tr: ts, conj: cs })
    }

    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        let n = group.num_subgroups();
        Self::from_fn(
            group,
            vec![PresentedAb::zero(); n],
            |_, _| Matrix::zeros(0, 0),
            |_, _| Matrix::zeros(0, 0),
            |_, _| Matrix::zeros(0, 0),
        )
        .expect("zero functor")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn level(&self, h: SubgroupId) -> &PresentedAb {
        &self.levels[h]
    }

    pub fn levels(&self) -> &[PresentedAb] {
        &self.levels
    }

    pub fn res(&self, k: SubgroupId, h: SubgroupId) -> &Matrix {
        self.res[k][h].as_ref().expect("restriction needs H <= K")
    }

    pub fn tr(&self, k: SubgroupId, h: SubgroupId) -> &Matrix {
        self.tr[k][h].as_ref().expect("transfer needs H <= K")
    }

    pub fn conj(&self, g: usize, h: SubgroupId) -> &Matrix {
        &self.conj[g][h]
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.is_zero())
    }

    /// `M ⊕ N`, generators of `M` first.
    pub fn direct_sum(&self, other: &MackeyFunctor) -> MackeyFunctor {
        let levels = self.levels.iter().zip(&other.levels).map(|(a, b)| PresentedAb::direct_sum(&[a, b])).collect();
        Self::from_fn(
            &self.group,
            levels,
            |k, h| Matrix::block_diag(&[self.res(k, h), other.res(k, h)]),
            |k, h| Matrix::block_diag(&[self.tr(k, h), other.tr(k, h)]),
            |g, h| Matrix::block_diag(&[self.conj(g, h), other.conj(g, h)]),
        )
        .expect("direct sum of functors over one group")
    }

    /// Replaces every level by an isomorphic presentation: `to[k]` old → new, `from[k]` new → old.
    pub fn transport(&self, levels: Vec<PresentedAb>, to: &[Matrix], from: &[Matrix]) -> MackeyFunctor {
        let g = &self.group;
        Self::from_fn(
            g,
            levels,
            |k, h| &(&to[h] * self.res(k, h)) * &from[k],
            |k, h| &(&to[k] * self.tr(k, h)) * &from[h],
            |x, h| &(&to[g.conj_subgroup(x, h)] * self.conj(x, h)) * &from[h],
        )
        .expect("transport preserves shapes")
    }

    /// Checks every Mackey axiom instance; failures name the subgroups involved.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let g = &self.group;
        let n = g.num_subgroups();
        let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
        for id in [
            "mackey.well_defined",
            "mackey.identity",
            "mackey.transitivity",
            "mackey.conjugation",
            "mackey.double_coset",
        ] {
            rep.declare(id, if id.ends_with("double_coset") { DOUBLE_COSET } else { RES });
        }
        for k in 0..n {
            for h in 0..n {
                if !g.is_subgroup_of(h, k) {
                    continue;
                }
                let ok = self.levels[h].accepts_map_from(&self.levels[k], self.res(k, h))
                    && self.levels[k].accepts_map_from(&self.levels[h], self.tr(k, h));
                rep.record("mackey.well_defined", RES, ok, || format!("res/tr for K={}, H={}", lab(k), lab(h)));
            }
        }
        for x in g.elements() {
            for h in 0..n {
                let t = &self.levels[g.conj_subgroup(x, h)];
                let ok = t.accepts_map_from(&self.levels[h], self.conj(x, h));
                rep.record("mackey.well_defined", CONJ, ok, || {
                    format!("conjugation by {} on H={}", g.element_name(x), lab(h))
                });
            }
        }
        for h in 0..n {
            let m = &self.levels[h];
            let id = Matrix::identity(m.ngens());
            rep.record("mackey.identity", RES, m.same_map(self.res(h, h), &id), || {
                format!("res^H_H != id, H={}", lab(h))
            });
            rep.record("mackey.identity", TR, m.same_map(self.tr(h, h), &id), || format!("tr^H_H != id, H={}", lab(h)));
            for &x in &g.subgroup(h).elements {
                rep.record("mackey.identity", CONJ, m.same_map(self.conj(x, h), &id), || {
                    format!("conjugation by {} in H={} is not the identity", g.element_name(x), lab(h))
                });
            }
        }
        for k in 0..n {
            for h in g.subgroups_of(k) {
                for l in g.subgroups_of(h) {
                    let ml = &self.levels[l];
                    let ok = ml.same_map(&(self.res(h, l) * self.res(k, h)), self.res(k, l));
                    rep.record("mackey.transitivity", RES, ok, || {
                        format!("res chain {} > {} > {}", lab(k), lab(h), lab(l))
                    });
                    let ok = self.levels[k].same_map(&(self.tr(k, h) * self.tr(h, l)), self.tr(k, l));
                    rep.record("mackey.transitivity", TR, ok, || {
                        format!("tr chain {} > {} > {}", lab(k), lab(h), lab(l))
                    });
                }
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                for h in 0..n {
                    let bh = g.conj_subgroup(b, h);
                    let abh = g.conj_subgroup(a, bh);
                    let ok =
                        self.levels[abh].same_map(&(self.conj(a, bh) * self.conj(b, h)), self.conj(g.mul(a, b), h));
                    rep.record("mackey.conjugation", CONJ, ok, || {
                        format!(
                            "c_{} c_{} != c_({}{}) on H={}",
                            g.element_name(a),
                            g.element_name(b),
                            g.element_name(a),
                            g.element_name(b),
                            lab(h)
                        )
                    });
                }
            }
            for k in 0..n {
                for h in g.subgroups_of(k) {
                    let (ak, ah) = (g.conj_subgroup(a, k), g.conj_subgroup(a, h));
                    let ok = self.levels[ah]
                        .same_map(&(self.conj(a, h) * self.res(k, h)), &(self.res(ak, ah) * self.conj(a, k)));
                    rep.record("mackey.conjugation", RES, ok, || {
                        format!("c_{} does not commute with res^{}_{}", g.element_name(a), lab(k), lab(h))
                    });
                    let ok = self.levels[ak]
                        .same_map(&(self.conj(a, k) * self.tr(k, h)), &(self.tr(ak, ah) * self.conj(a, h)));
                    rep.record("mackey.conjugation", TR, ok, || {
                        format!("c_{} does not commute with tr^{}_{}", g.element_name(a), lab(k), lab(h))
                    });
                }
            }
        }
        for k in 0..n {
            let subs = g.subgroups_of(k);
            for &l in &subs {
                for &h in &subs {
                    let lhs = self.res(k, l) * self.tr(k, h);
                    let rhs = self.double_coset_sum(k, l, h);
                    let ok = self.levels[l].same_map(&lhs, &rhs);
                    rep.record("mackey.double_coset", DOUBLE_COSET, ok, || {
                        format!("res^K_L tr^K_H for K={}, L={}, H={}", lab(k), lab(l), lab(h))
                    });
                }
            }
        }
        rep
    }

    /// `Σ_{x ∈ L\K/H} tr^L_{L∩xHx⁻¹} c_x res^H_{x⁻¹Lx∩H}`.
    pub fn double_coset_sum(&self, k: SubgroupId, l: SubgroupId, h: SubgroupId) -> Matrix {
        let g = &self.group;
        let mut sum = Matrix::zeros(self.levels[l].ngens(), self.levels[h].ngens());
        for x in g.double_coset_reps(l, k, h) {
            let xinv = g.inv(x);
            let inner = g.intersection(g.conj_subgroup(xinv, l), h);
            let outer = g.conj_subgroup(x, inner);
            let term = &(self.tr(l, outer) * self.conj(x, inner)) * self.res(h, inner);
            sum = &sum + &term;
        }
        sum
    }

    /// `M(X) = ⊕_orbits M(G/Stab(rep))`.
    pub fn eval(&self, x: &GSet) -> PresentedAb {
        let d = x.orbits();
        let parts: Vec<&PresentedAb> = d.orbits.iter().map(|o| &self.levels[o.stabilizer]).collect();
        PresentedAb::direct_sum(&parts)
    }

    pub(crate) fn offsets(&self, d: &OrbitDecomposition) -> Vec<usize> {
        let mut out = Vec::with_capacity(d.orbits.len() + 1);
        let mut acc = 0;
        for o in &d.orbits {
            out.push(acc);
            acc += self.levels[o.stabilizer].ngens();
        }
        out.push(acc);
        out
    }

    /// `R_f: M(Y) → M(X)` for `f: X → Y`.
    pub fn restriction_along(&self, f: &GMap) -> Matrix {
        let g = &self.group;
        let (dx, dy) = (f.source().orbits(), f.target().orbits());
        let (ox, oy) = (self.offsets(&dx), self.offsets(&dy));
        let mut m = Matrix::zeros(*ox.last().unwrap(), *oy.last().unwrap());
        for (i, o) in dx.orbits.iter().enumerate() {
            let y = f.apply(o.rep);
            let j = dy.orbit_of[y];
            let gamma = dy.transporter[y];
            let sj = dy.orbits[j].stabilizer;
            let sy = g.conj_subgroup(gamma, sj);
            let block = self.res(sy, o.stabilizer) * self.conj(gamma, sj);
            m.add_block(ox[i], oy[j], &block);
        }
        m
    }

    /// `T_f: M(X) → M(Y)` for `f: X → Y`.
    pub fn transfer_along(&self, f: &GMap) -> Matrix {
        let g = &self.group;
        let (dx, dy) = (f.source().orbits(), f.target().orbits());
        let (ox, oy) = (self.offsets(&dx), self.offsets(&dy));
        let mut m = Matrix::zeros(*oy.last().unwrap(), *ox.last().unwrap());
        for (i, o) in dx.orbits.iter().enumerate() {
            let y = f.apply(o.rep);
            let j = dy.orbit_of[y];
            let gamma = dy.transporter[y];
            let sj = dy.orbits[j].stabilizer;
            let sy = g.conj_subgroup(gamma, sj);
            let block = self.conj(g.inv(gamma), sy) * self.tr(sy, o.stabilizer);
            m.add_block(oy[j], ox[i], &block);
        }
        m
    }
}
