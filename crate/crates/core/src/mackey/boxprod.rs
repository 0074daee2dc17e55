//! Box products of Mackey functors, Green modules and relative box products.

use std::sync::Arc;

use num_traits::Zero;

use super::functor::MackeyFunctor;
use super::hom::{simplify, MackeyHom};
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, SubgroupId};
use crate::report::Report;
use crate::tambara::{Bilinear, TambaraFunctor};
use crate::zmod::{add_vec, sub_vec, tensor_coords, unit_vec, Int, Matrix, PresentedAb};

/// `M □ N`, presented at level `K` by symbols `[L, m_i ⊗ n_j]` for `L ≤ K`.
#[derive(Clone, Debug)]
pub struct BoxProduct {
    pub left: Arc<MackeyFunctor>,
    pub right: Arc<MackeyFunctor>,
    /// The generators-and-relations presentation.
    pub raw: Arc<MackeyFunctor>,
    /// A simplified presentation of the same functor.
    pub functor: Arc<MackeyFunctor>,
    /// `raw → functor` and back.
    pub to: MackeyHom,
    pub from: MackeyHom,
    /// `offset[k][l]`: position of the `[L, · ⊗ ·]` block in raw level `K`.
    offset: Vec<Vec<Option<usize>>>,
}

struct Layout {
    group: Arc<FiniteGroup>,
    offset: Vec<Vec<Option<usize>>>,
    size: Vec<usize>,
    left: Arc<MackeyFunctor>,
    right: Arc<MackeyFunctor>,
}

impl Layout {
    fn new(left: &Arc<MackeyFunctor>, right: &Arc<MackeyFunctor>) -> Self {
        let g = left.group().clone();
        let n = g.num_subgroups();
        let mut offset = vec![vec![None; n]; n];
        let mut size = vec![0; n];
        for k in 0..n {
            for l in g.subgroups_of(k) {
                offset[k][l] = Some(size[k]);
                size[k] += left.level(l).ngens() * right.level(l).ngens();
            }
        }
        Self { group: g, offset, size, left: left.clone(), right: right.clone() }
    }

    fn sym(&self, k: SubgroupId, l: SubgroupId, m: &[Int], n: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.size[k]];
        let off = self.offset[k][l].expect("symbol subgroup lies in the level subgroup");
        for (i, v) in tensor_coords(m, n).into_iter().enumerate() {
            out[off + i] = v;
        }
        out
    }

    fn matrix_from_terms(
        &self,
        src: SubgroupId,
        dst: SubgroupId,
        image: impl Fn(SubgroupId, usize, usize) -> Vec<Int>,
    ) -> Matrix {
        let mut cols = vec![Vec::new(); self.size[src]];
        for l in self.group.subgroups_of(src) {
            let off = self.offset[src][l].unwrap();
            let (nl, nr) = (self.left.level(l).ngens(), self.right.level(l).ngens());
            for i in 0..nl {
                for j in 0..nr {
                    cols[off + i * nr + j] = image(l, i, j);
                }
            }
        }
        Matrix::from_columns(self.size[dst], &cols)
    }

    fn res_image(&self, k: SubgroupId, h: SubgroupId, l: SubgroupId, m: &[Int], n: &[Int]) -> Vec<Int> {
        let g = &self.group;
        let mut out = vec![Int::zero(); self.size[h]];
        for x in g.double_coset_reps(h, k, l) {
            let inner = g.intersection(g.conj_subgroup(g.inv(x), h), l);
            let outer = g.conj_subgroup(x, inner);
            let a = self.left.conj(x, inner).mul_vec(&self.left.res(l, inner).mul_vec(m));
            let b = self.right.conj(x, inner).mul_vec(&self.right.res(l, inner).mul_vec(n));
            out = add_vec(&out, &self.sym(h, outer, &a, &b));
        }
        out
    }

    fn relations(&self, k: SubgroupId) -> Vec<Vec<Int>> {
        let g = &self.group;
        let (lm, rn) = (&self.left, &self.right);
        let mut rels = Vec::new();
        for l in g.subgroups_of(k) {
            let (nl, nr) = (lm.level(l).ngens(), rn.level(l).ngens());
            for c in lm.level(l).relations().columns() {
                for j in 0..nr {
                    rels.push(self.sym(k, l, &c, &unit_vec(nr, j)));
                }
            }
            for c in rn.level(l).relations().columns() {
                for i in 0..nl {
                    rels.push(self.sym(k, l, &unit_vec(nl, i), &c));
                }
            }
            for j in g.subgroups_of(l) {
                if j == l {
                    continue;
                }
                let (jl, jr) = (lm.level(j).ngens(), rn.level(j).ngens());
                for a in 0..jl {
                    for b in 0..nr {
                        let (m, n) = (unit_vec(jl, a), unit_vec(nr, b));
                        let lhs = self.sym(k, l, &lm.tr(l, j).mul_vec(&m), &n);
                        let rhs = self.sym(k, j, &m, &rn.res(l, j).mul_vec(&n));
                        rels.push(sub_vec(&lhs, &rhs));
                    }
                }
                for a in 0..nl {
                    for b in 0..jr {
                        let (m, n) = (unit_vec(nl, a), unit_vec(jr, b));
                        let lhs = self.sym(k, l, &m, &rn.tr(l, j).mul_vec(&n));
                        let rhs = self.sym(k, j, &lm.res(l, j).mul_vec(&m), &n);
                        rels.push(sub_vec(&lhs, &rhs));
                    }
                }
            }
            for &x in &g.subgroup(k).elements {
                let xl = g.conj_subgroup(x, l);
                for a in 0..nl {
                    for b in 0..nr {
                        let (m, n) = (unit_vec(nl, a), unit_vec(nr, b));
                        let moved = self.sym(k, xl, &lm.conj(x, l).mul_vec(&m), &rn.conj(x, l).mul_vec(&n));
                        rels.push(sub_vec(&moved, &self.sym(k, l, &m, &n)));
                    }
                }
            }
        }
        rels
    }

    fn build(&self, extra: impl Fn(SubgroupId) -> Vec<Vec<Int>>) -> Result<MackeyFunctor> {
        let g = &self.group;
        let n = g.num_subgroups();
        let levels: Vec<PresentedAb> = (0..n)
            .map(|k| {
                let mut rels = self.relations(k);
                rels.extend(extra(k));
                PresentedAb::new(self.size[k], Matrix::from_columns(self.size[k], &rels))
            })
            .collect();
        let (lm, rn) = (&self.left, &self.right);
        MackeyFunctor::from_fn(
            g,
            levels,
            |k, h| {
                self.matrix_from_terms(k, h, |l, i, j| {
                    let (m, nn) = (unit_vec(lm.level(l).ngens(), i), unit_vec(rn.level(l).ngens(), j));
                    self.res_image(k, h, l, &m, &nn)
                })
            },
            |k, h| {
                self.matrix_from_terms(h, k, |l, i, j| {
                    self.sym(k, l, &unit_vec(lm.level(l).ngens(), i), &unit_vec(rn.level(l).ngens(), j))
                })
            },
            |x, h| {
                let xh = g.conj_subgroup(x, h);
                self.matrix_from_terms(h, xh, |l, i, j| {
                    let m = lm.conj(x, l).mul_vec(&unit_vec(lm.level(l).ngens(), i));
                    let nn = rn.conj(x, l).mul_vec(&unit_vec(rn.level(l).ngens(), j));
                    self.sym(xh, g.conj_subgroup(x, l), &m, &nn)
                })
            },
        )
    }
}

impl BoxProduct {
    fn assemble(layout: Layout, raw: MackeyFunctor) -> Self {
        let raw = Arc::new(raw);
        let (functor, to, from) = simplify(&raw);
        Self { left: layout.left, right: layout.right, raw, functor, to, from, offset: layout.offset }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.left.group()
    }

    /// Raw coordinates of `[L, m ⊗ n]` at level `K`.
    pub fn symbol_raw(&self, k: SubgroupId, l: SubgroupId, m: &[Int], n: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.raw.level(k).ngens()];
        let off = self.offset[k][l].expect("symbol subgroup lies in the level subgroup");
        for (i, v) in tensor_coords(m, n).into_iter().enumerate() {
            out[off + i] = v;
        }
        out
    }

    /// `[L, m ⊗ n]` at level `K`, in the simplified coordinates.
    pub fn symbol(&self, k: SubgroupId, l: SubgroupId, m: &[Int], n: &[Int]) -> Vec<Int> {
        self.to.apply(k, &self.symbol_raw(k, l, m, n))
    }

    /// Calls `f(l, m_i, n_j, coefficient)` for every nonzero raw coordinate at level `k`.
    pub fn for_each_term(&self, k: SubgroupId, raw: &[Int], mut f: impl FnMut(SubgroupId, usize, usize, &Int)) {
        let g = self.group();
        for l in g.subgroups_of(k) {
            let off = self.offset[k][l].unwrap();
            let (nl, nr) = (self.left.level(l).ngens(), self.right.level(l).ngens());
            for i in 0..nl {
                for j in 0..nr {
                    let c = &raw[off + i * nr + j];
                    if !c.is_zero() {
                        f(l, i, j, c);
                    }
                }
            }
        }
    }
}

/// The box product `M □ N`.
pub fn box_product(m: &Arc<MackeyFunctor>, n: &Arc<MackeyFunctor>) -> Result<BoxProduct> {
    if m.group() != n.group() {
        return Err(Error::Invalid("box product of functors over different groups".into()));
    }
    let layout = Layout::new(m, n);
    let raw = layout.build(|_| Vec::new())?;
    Ok(BoxProduct::assemble(layout, raw))
}

/// A module over the Green functor underlying `ring`.
#[derive(Clone, Debug)]
pub struct GreenModule {
    pub ring: Arc<TambaraFunctor>,
    pub module: Arc<MackeyFunctor>,
    /// `action[h].mats[i]`: the matrix of `m ↦ r_i · m` at level `h`.
    pub action: Vec<Bilinear>,
}

const MODULE: &str = "module over the underlying Green functor";

impl GreenModule {
    pub fn new(ring: Arc<TambaraFunctor>, module: Arc<MackeyFunctor>, action: Vec<Bilinear>) -> Result<Self> {
        let g = ring.group();
        if module.group() != g || action.len() != g.num_subgroups() {
            return Err(Error::Shape("module and ring over different groups".into()));
        }
        for h in 0..g.num_subgroups() {
            let (r, m) = (ring.ngens(h), module.level(h).ngens());
            if action[h].mats.len() != r || action[h].mats.iter().any(|a| a.shape() != (m, m)) {
                return Err(Error::Shape(format!("action at {} has the wrong size", g.subgroup_label(h))));
            }
        }
        Ok(Self { ring, module, action })
    }

    /// The ring as a module over itself.
    pub fn regular(ring: &Arc<TambaraFunctor>) -> Self {
        let n = ring.group().num_subgroups();
        let action = (0..n).map(|h| ring.mul_table(h).clone()).collect();
        Self { ring: ring.clone(), module: ring.mackey().clone(), action }
    }

    /// `M` as a module over `ring` through `φ: ring → other` and an `other`-module structure.
    pub fn restrict_scalars(&self, ring: &Arc<TambaraFunctor>, phi: &MackeyHom) -> Self {
        let n = ring.group().num_subgroups();
        let action = (0..n)
            .map(|h| Bilinear {
                mats: (0..ring.ngens(h)).map(|i| self.act_matrix(h, &phi.maps[h].column(i))).collect(),
            })
            .collect();
        Self { ring: ring.clone(), module: self.module.clone(), action }
    }

    /// Matrix of `m ↦ r·m` at level `h`.
    pub fn act_matrix(&self, h: SubgroupId, r: &[Int]) -> Matrix {
        self.action[h].left(r)
    }

    pub fn act(&self, h: SubgroupId, r: &[Int], m: &[Int]) -> Vec<Int> {
        self.action[h].apply(r, m)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.ring.group()
    }

    pub fn validate(&self) -> Report {
        let mut rep = self.module.validate();
        rep.declare("module.action", MODULE);
        rep.declare("module.frobenius", "Frobenius reciprocity for the action");
        let g = self.group().clone();
        let r = &self.ring;
        let m = &self.module;
        let n = g.num_subgroups();
        let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
        for h in 0..n {
            let (nr, nm) = (r.ngens(h), m.level(h).ngens());
            for a in &self.action[h].mats {
                rep.record("module.action", MODULE, m.level(h).accepts_map_from(m.level(h), a), || {
                    format!("action not well defined at {}", lab(h))
                });
            }
            for c in r.level(h).relations().columns() {
                let z = self.act_matrix(h, &c);
                rep.record("module.action", MODULE, m.level(h).same_map(&z, &Matrix::zeros(nm, nm)), || {
                    format!("a ring relation acts nontrivially at {}", lab(h))
                });
            }
            if let Some(u) = r.unit(h) {
                let ok = m.level(h).same_map(&self.act_matrix(h, u), &Matrix::identity(nm));
                rep.record("module.action", MODULE, ok, || format!("unit acts nontrivially at {}", lab(h)));
            }
            for i in 0..nr {
                for j in 0..nr {
                    let prod = r.mul(h, &unit_vec(nr, i), &unit_vec(nr, j));
                    let lhs = self.act_matrix(h, &prod);
                    let rhs = &self.action[h].mats[i] * &self.action[h].mats[j];
                    rep.record("module.action", MODULE, m.level(h).same_map(&lhs, &rhs), || {
                        format!("associativity at {} on generators {i},{j}", lab(h))
                    });
                }
            }
        }
        for k in 0..n {
            for h in g.subgroups_of(k) {
                if h == k {
                    continue;
                }
                for i in 0..r.ngens(k) {
                    let a = unit_vec(r.ngens(k), i);
                    let ra = r.res(k, h, &a);
                    // res(a·m) = res(a)·res(m) and a·tr(m) = tr(res(a)·m)
                    let lhs = m.res(k, h) * &self.act_matrix(k, &a);
                    let rhs = &self.act_matrix(h, &ra) * m.res(k, h);
                    rep.record("module.action", MODULE, m.level(h).same_map(&lhs, &rhs), || {
                        format!("restriction {} -> {} is not linear", lab(k), lab(h))
                    });
                    let lhs = &self.act_matrix(k, &a) * m.tr(k, h);
                    let rhs = m.tr(k, h) * &self.act_matrix(h, &ra);
                    rep.record("module.frobenius", MODULE, m.level(k).same_map(&lhs, &rhs), || {
                        format!("a·tr(m) != tr(res(a)·m) for {} < {}", lab(h), lab(k))
                    });
                }
                for i in 0..r.ngens(h) {
                    let b = unit_vec(r.ngens(h), i);
                    // tr(b)·m = tr(b·res(m))
                    let lhs = self.act_matrix(k, &r.tr(k, h, &b));
                    let rhs = &(m.tr(k, h) * &self.act_matrix(h, &b)) * m.res(k, h);
                    rep.record("module.frobenius", MODULE, m.level(k).same_map(&lhs, &rhs), || {
                        format!("tr(b)·m != tr(b·res(m)) for {} < {}", lab(h), lab(k))
                    });
                }
            }
        }
        for x in g.generators() {
            for h in 0..n {
                let xh = g.conj_subgroup(x, h);
                for i in 0..r.ngens(h) {
                    let a = unit_vec(r.ngens(h), i);
                    let lhs = m.conj(x, h) * &self.act_matrix(h, &a);
                    let rhs = &self.act_matrix(xh, &r.conj(x, h, &a)) * m.conj(x, h);
                    rep.record("module.action", MODULE, m.level(xh).same_map(&lhs, &rhs), || {
                        format!("conjugation by {} is not linear on {}", g.element_name(x), lab(h))
                    });
                }
            }
        }
        rep
    }

    /// The action map `R □ M → M`, `[L, r ⊗ m] ↦ tr_L^K(r·m)`.
    pub fn action_map(&self, bx: &BoxProduct) -> MackeyHom {
        let g = self.group();
        let n = g.num_subgroups();
        let maps = (0..n)
            .map(|k| {
                let cols: Vec<Vec<Int>> = (0..bx.functor.level(k).ngens())
                    .map(|c| {
                        let raw = bx.from.apply(k, &unit_vec(bx.functor.level(k).ngens(), c));
                        let mut out = vec![Int::zero(); self.module.level(k).ngens()];
                        bx.for_each_term(k, &raw, |l, i, j, coef| {
                            let v = self.act(
                                l,
                                &unit_vec(self.ring.ngens(l), i),
                                &unit_vec(self.module.level(l).ngens(), j),
                            );
                            let t = self.module.tr(k, l).mul_vec(&v);
                            out = add_vec(&out, &t.iter().map(|x| x * coef).collect::<Vec<_>>());
                        });
                        out
                    })
                    .collect();
                Matrix::from_columns(self.module.level(k).ngens(), &cols)
            })
            .collect();
        MackeyHom::new(bx.functor.clone(), self.module.clone(), maps)
    }
}

/// The Burnside ring action on any Mackey functor: `[H/J]·m = tr_J^H res_J^H m`.
pub fn burnside_module(burnside: &Arc<TambaraFunctor>, m: &Arc<MackeyFunctor>) -> GreenModule {
    let g = burnside.group();
    let bb = crate::tambara::BurnsideBasis::new(g);
    let action = (0..g.num_subgroups())
        .map(|h| Bilinear { mats: bb.basis(h).iter().map(|&j| m.tr(h, j) * m.res(h, j)).collect() })
        .collect();
    GreenModule { ring: burnside.clone(), module: m.clone(), action }
}

/// `M □_S N`: the box product with `[L, s·m ⊗ n] = [L, m ⊗ s·n]` imposed.
pub fn box_over(m: &GreenModule, n: &GreenModule) -> Result<BoxProduct> {
    if !Arc::ptr_eq(&m.ring, &n.ring) && !same_tambara(&m.ring, &n.ring) {
        return Err(Error::Invalid("modules over different rings".into()));
    }
    let s = &m.ring;
    let layout = Layout::new(&m.module, &n.module);
    let g = s.group().clone();
    let raw = layout.build(|k| {
        let mut rels = Vec::new();
        for l in g.subgroups_of(k) {
            let (nl, nr) = (m.module.level(l).ngens(), n.module.level(l).ngens());
            for si in 0..s.ngens(l) {
                let sv = unit_vec(s.ngens(l), si);
                for a in 0..nl {
                    for b in 0..nr {
                        let (x, y) = (unit_vec(nl, a), unit_vec(nr, b));
                        let lhs = layout.sym(k, l, &m.act(l, &sv, &x), &y);
                        let rhs = layout.sym(k, l, &x, &n.act(l, &sv, &y));
                        rels.push(sub_vec(&lhs, &rhs));
                    }
                }
            }
        }
        rels
    })?;
    Ok(BoxProduct::assemble(layout, raw))
}

fn same_tambara(a: &TambaraFunctor, b: &TambaraFunctor) -> bool {
    let g = a.group();
    (0..g.num_subgroups()).all(|h| {
        a.level(h).ngens() == b.level(h).ngens()
            && a.level(h).relations() == b.level(h).relations()
            && a.mul_table(h) == b.mul_table(h)
    })
}
