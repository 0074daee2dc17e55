//! Change of group: restriction `i_H^*`, coinduction `CoInd_H^G`, the functors `B_T = B(T × −)`
//! and the relative construction `F(T, B) = B_T ×_{R_T} R`.

use std::sync::Arc;

use super::functor::{Bilinear, TambaraFunctor};
use super::hom::TambaraHom;
use super::square_zero::{sub_tambara, NonUnitalTambara};
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, GMap, GSet, SubgroupId};
use crate::mackey::{GreenModule, MackeyFunctor, MackeyHom};
use crate::zmod::{unit_vec, zero_vec, Int, Matrix, PresentedAb};

/// `H ≤ G` viewed as a group, with the subgroup correspondence used to re-index levels.
#[derive(Clone, Debug)]
pub struct SubgroupRestriction {
    pub parent: Arc<FiniteGroup>,
    pub subgroup: SubgroupId,
    pub group: Arc<FiniteGroup>,
    /// Element `i` of `group` is element `embedding[i]` of `parent`.
    pub embedding: Vec<usize>,
    /// Subgroup `l` of `group` is subgroup `levels[l]` of `parent`.
    pub levels: Vec<SubgroupId>,
}

impl SubgroupRestriction {
    pub fn new(parent: &Arc<FiniteGroup>, h: SubgroupId) -> Self {
        let (group, embedding) = parent.subgroup_as_group(h);
        let levels = group
            .subgroups()
            .iter()
            .map(|s| {
                let e: Vec<usize> = s.elements.iter().map(|&x| embedding[x]).collect();
                parent.subgroup_id(&e).expect("image of a subgroup is a subgroup")
            })
            .collect();
        Self { parent: parent.clone(), subgroup: h, group, embedding, levels }
    }

    pub fn mackey(&self, m: &MackeyFunctor) -> MackeyFunctor {
        let lv = &self.levels;
        MackeyFunctor::from_fn(
            &self.group,
            lv.iter().map(|&l| m.level(l).clone()).collect(),
            |k, h| m.res(lv[k], lv[h]).clone(),
            |k, h| m.tr(lv[k], lv[h]).clone(),
            |g, h| m.conj(self.embedding[g], lv[h]).clone(),
        )
        .expect("restriction keeps shapes")
    }

    pub fn hom(&self, f: &MackeyHom, source: &Arc<MackeyFunctor>, target: &Arc<MackeyFunctor>) -> MackeyHom {
        MackeyHom::new(source.clone(), target.clone(), self.levels.iter().map(|&l| f.map(l).clone()).collect())
    }

    pub fn tambara(&self, r: &TambaraFunctor) -> TambaraFunctor {
        let lv = &self.levels;
        let n = lv.len();
        let mk = Arc::new(self.mackey(r.mackey()));
        let mul = lv.iter().map(|&l| r.mul_table(l).clone()).collect();
        let unit = r.unit(0).map(|_| lv.iter().map(|&l| r.unit(l).expect("unital").to_vec()).collect());
        let mut norms = vec![vec![None; n]; n];
        for k in 0..n {
            for h in 0..n {
                if h != k && self.group.is_subgroup_of(h, k) {
                    norms[k][h] = r.norm_poly(lv[k], lv[h]).cloned();
                }
            }
        }
        TambaraFunctor::new(mk, mul, unit, norms).expect("restriction keeps shapes")
    }

    pub fn tambara_hom(
        &self,
        f: &TambaraHom,
        source: &Arc<TambaraFunctor>,
        target: &Arc<TambaraFunctor>,
    ) -> TambaraHom {
        TambaraHom::new(source.clone(), target.clone(), self.levels.iter().map(|&l| f.mackey.map(l).clone()).collect())
    }

    /// `i_H^* M` as a module over an already restricted ring.
    pub fn module(&self, m: &GreenModule, ring: &Arc<TambaraFunctor>) -> Result<GreenModule> {
        let mk = Arc::new(self.mackey(&m.module));
        GreenModule::new(ring.clone(), mk, self.levels.iter().map(|&l| m.action[l].clone()).collect())
    }
}

/// `i_H^* R` as a Tambara functor for the group `H`.
pub fn restrict_to_subgroup(r: &TambaraFunctor, h: SubgroupId) -> (Arc<TambaraFunctor>, SubgroupRestriction) {
    let s = SubgroupRestriction::new(r.group(), h);
    (Arc::new(s.tambara(r)), s)
}

/// The Mackey functor `X ↦ M(Φ(X))` on `group`-sets for a functor `Φ` into `M`'s G-sets that
/// preserves pullbacks, sums and dependent products.
pub fn precompose_mackey(
    m: &MackeyFunctor,
    group: &Arc<FiniteGroup>,
    phi: &dyn Fn(&GSet) -> GSet,
    phi_map: &dyn Fn(&GMap) -> GMap,
) -> MackeyFunctor {
    let n = group.num_subgroups();
    let levels = (0..n).map(|l| m.eval(&phi(&GSet::coset_space(group, l)))).collect();
    MackeyFunctor::from_fn(
        group,
        levels,
        |k, h| m.restriction_along(&phi_map(&GMap::projection(group, h, k))),
        |k, h| m.transfer_along(&phi_map(&GMap::projection(group, h, k))),
        |g, h| m.transfer_along(&phi_map(&GMap::conjugation(group, g, h))),
    )
    .expect("precomposition keeps shapes")
}

/// `X ↦ B(Φ(X))` with products, units and norms taken along `Φ`.
pub fn precompose(
    b: &TambaraFunctor,
    group: &Arc<FiniteGroup>,
    phi: &dyn Fn(&GSet) -> GSet,
    phi_map: &dyn Fn(&GMap) -> GMap,
) -> Result<TambaraFunctor> {
    let n = group.num_subgroups();
    let mk = Arc::new(precompose_mackey(b.mackey(), group, phi, phi_map));
    let sets: Vec<GSet> = (0..n).map(|l| phi(&GSet::coset_space(group, l))).collect();
    let mul = (0..n)
        .map(|l| {
            let q = mk.level(l).ngens();
            Bilinear::from_fn(q, q, q, |i, j| b.mul_at(&sets[l], &unit_vec(q, i), &unit_vec(q, j)))
        })
        .collect();
    let unit = sets.iter().map(|x| b.unit_at(x)).collect::<Option<Vec<_>>>();
    let mut failure = None;
    let t = TambaraFunctor::from_norm_fn(mk.clone(), mul, unit, |k, h, x| {
        match b.norm_along(&phi_map(&GMap::projection(group, h, k)), x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                zero_vec(mk.level(k).ngens())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

/// `CoInd_H^G B (X) = B(i_H^* X)` for a Tambara functor `b` over the group of `res`.
pub fn coinduce(res: &SubgroupRestriction, b: &TambaraFunctor) -> Result<TambaraFunctor> {
    if **b.group() != *res.group {
        return Err(Error::Invalid("functor is not over the subgroup".into()));
    }
    let h = b.group().clone();
    let emb = res.embedding.clone();
    let phi = |x: &GSet| x.restrict_group(&h, &emb);
    let phi_map = |f: &GMap| f.restrict_group(&h, &emb);
    precompose(b, &res.parent, &phi, &phi_map)
}

/// `B_T = B(T × −)`.
pub fn f_level(t: &GSet, b: &TambaraFunctor) -> Result<TambaraFunctor> {
    if t.group() != b.group() {
        return Err(Error::Invalid("T is not a G-set for the functor's group".into()));
    }
    let phi = |x: &GSet| t.product(x).0;
    let phi_map = |f: &GMap| GMap::product_with(t, f);
    precompose(b, b.group(), &phi, &phi_map)
}

/// `M_T = M(T × −)` as a module over `R` through `R → R_T`.
pub fn f_level_module(t: &GSet, m: &GreenModule) -> Result<GreenModule> {
    let g = m.group().clone();
    if t.group() != &g {
        return Err(Error::Invalid("T is not a G-set for the module's group".into()));
    }
    let phi = |x: &GSet| t.product(x).0;
    let phi_map = |f: &GMap| GMap::product_with(t, f);
    let mk = Arc::new(precompose_mackey(&m.module, &g, &phi, &phi_map));
    let r = &m.ring;
    let action = (0..g.num_subgroups())
        .map(|l| {
            let x = GSet::coset_space(&g, l);
            let (tx, _, p2) = t.product(&x);
            let eta = r.mackey().restriction_along(&p2);
            let d = tx.orbits();
            let (ro, mo) = (r.mackey().offsets(&d), m.module.offsets(&d));
            let q = mk.level(l).ngens();
            Bilinear::from_fn(r.ngens(l), q, q, |i, j| {
                let rt = eta.column(i);
                let e = unit_vec(q, j);
                let mut out = Vec::with_capacity(q);
                for (o, orb) in d.orbits.iter().enumerate() {
                    out.extend(m.act(orb.stabilizer, &rt[ro[o]..ro[o + 1]], &e[mo[o]..mo[o + 1]]));
                }
                out
            })
        })
        .collect();
    GreenModule::new(r.clone(), mk, action)
}

/// `f_T: M_T → N_T` applied orbitwise.
pub fn f_level_hom(t: &GSet, f: &MackeyHom, source: &Arc<MackeyFunctor>, target: &Arc<MackeyFunctor>) -> MackeyHom {
    let g = f.source.group().clone();
    let maps = (0..g.num_subgroups())
        .map(|l| {
            let (tx, _, _) = t.product(&GSet::coset_space(&g, l));
            let d = tx.orbits();
            let blocks: Vec<&Matrix> = d.orbits.iter().map(|o| f.map(o.stabilizer)).collect();
            Matrix::block_diag(&blocks)
        })
        .collect();
    MackeyHom::new(source.clone(), target.clone(), maps)
}

/// `(A × B)(X) = A(X) × B(X)` with componentwise structure.
pub fn product_tambara(a: &TambaraFunctor, b: &TambaraFunctor) -> Result<TambaraFunctor> {
    let g = a.group().clone();
    let n = g.num_subgroups();
    let mk = Arc::new(a.mackey().direct_sum(b.mackey()));
    let mul = (0..n)
        .map(|h| {
            let (p, q) = (a.ngens(h), b.ngens(h));
            Bilinear::from_fn(p + q, p + q, p + q, |i, j| {
                let (x, y) = (unit_vec(p + q, i), unit_vec(p + q, j));
                let mut out = a.mul(h, &x[..p], &y[..p]);
                out.extend(b.mul(h, &x[p..], &y[p..]));
                out
            })
        })
        .collect();
    let unit =
        (0..n).map(|h| Some(a.unit(h)?.iter().chain(b.unit(h)?).cloned().collect())).collect::<Option<Vec<Vec<Int>>>>();
    TambaraFunctor::from_norm_fn(mk, mul, unit, |k, h, x| {
        let p = a.ngens(h);
        let mut out = a.norm(k, h, &x[..p]);
        out.extend(b.norm(k, h, &x[p..]));
        out
    })
}

/// `F(T, B)`: the pullback of `B_T → R_T ← R` for `ε: B → R`.
#[derive(Clone, Debug)]
pub struct RelativeLevel {
    pub functor: NonUnitalTambara,
    /// `F(T, B) → B_T`
    pub to_level: MackeyHom,
    /// `F(T, B) → R`
    pub to_base: MackeyHom,
}

pub fn f_relative(t: &GSet, eps: &TambaraHom) -> Result<RelativeLevel> {
    let (b, r) = (&eps.source, &eps.target);
    let g = r.group().clone();
    let n = g.num_subgroups();
    let bt = Arc::new(f_level(t, b)?);
    let rt = Arc::new(f_level(t, r)?);
    let eps_t = f_level_hom(t, &eps.mackey, bt.mackey(), rt.mackey());
    let eta: Vec<Matrix> = (0..n)
        .map(|l| {
            let (_, _, p2) = t.product(&GSet::coset_space(&g, l));
            r.mackey().restriction_along(&p2)
        })
        .collect();
    let prod = Arc::new(product_tambara(&bt, r)?);
    let diff = (0..n).map(|l| Matrix::hstack(rt.ngens(l), &[eps_t.map(l), &eta[l].scale(&Int::from(-1))])).collect();
    let diff = MackeyHom::new(prod.mackey().clone(), rt.mackey().clone(), diff);
    let (k, incl) = diff.kernel();
    let functor = sub_tambara(&prod, &k, &incl, true)?;
    let split = |first: bool| -> Vec<Matrix> {
        (0..n)
            .map(|l| {
                let (p, q) = (bt.ngens(l), r.ngens(l));
                let sel = if first {
                    Matrix::hstack(p, &[&Matrix::identity(p), &Matrix::zeros(p, q)])
                } else {
                    Matrix::hstack(q, &[&Matrix::zeros(q, p), &Matrix::identity(q)])
                };
                &sel * incl.map(l)
            })
            .collect()
    };
    Ok(RelativeLevel {
        to_level: MackeyHom::new(k.clone(), bt.mackey().clone(), split(true)),
        to_base: MackeyHom::new(k.clone(), r.mackey().clone(), split(false)),
        functor,
    })
}

/// The comparison `CoInd_H^G i_H^* B → B_{G/H}` matching the `H`-orbit of `x` in `i_H^* X`
/// with the `G`-orbit of `(eH, x)` in `G/H × X`.
pub fn coinduction_comparison(res: &SubgroupRestriction, b: &TambaraFunctor) -> Result<TambaraHom> {
    let ib = Arc::new(res.tambara(b));
    let co = Arc::new(coinduce(res, &ib)?);
    let g = res.parent.clone();
    let gh = GSet::coset_space(&g, res.subgroup);
    let bgh = Arc::new(f_level(&gh, b)?);
    let mb = b.mackey();
    let maps = (0..g.num_subgroups())
        .map(|l| {
            let x = GSet::coset_space(&g, l);
            let hx = x.restrict_group(&res.group, &res.embedding);
            let (dh, prod) = (hx.orbits(), gh.product(&x).0);
            let dg = prod.orbits();
            let (oh, og) = (ib.mackey().offsets(&dh), mb.offsets(&dg));
            let mut m = Matrix::zeros(*og.last().unwrap(), *oh.last().unwrap());
            for (i, o) in dh.orbits.iter().enumerate() {
                // (eH, x) has index x in G/H × X since eH is point 0
                let p = o.rep;
                let j = dg.orbit_of[p];
                let gamma = dg.transporter[p];
                let sp = res.levels[o.stabilizer];
                m.add_block(og[j], oh[i], mb.conj(g.inv(gamma), sp));
            }
            m
        })
        .collect();
    Ok(TambaraHom::new(co, bgh, maps))
}

/// The modules `M_{G/H}` for all subgroups, with the module maps induced by `G/H → G/K` and
/// by conjugation.
#[derive(Clone, Debug)]
pub struct CoinducedFamily {
    pub modules: Vec<GreenModule>,
    /// `res[k][h]: M_{G/K} → M_{G/H}`
    pub res: Vec<Vec<Option<MackeyHom>>>,
    /// `tr[k][h]: M_{G/H} → M_{G/K}`
    pub tr: Vec<Vec<Option<MackeyHom>>>,
    /// `conj[g][h]: M_{G/H} → M_{G/gHg^-1}`
    pub conj: Vec<Vec<MackeyHom>>,
}

fn along_first_factor(
    m: &MackeyFunctor,
    f: &GMap,
    source: &GreenModule,
    target: &GreenModule,
    transfer: bool,
) -> MackeyHom {
    let g = m.group().clone();
    let maps = (0..g.num_subgroups())
        .map(|l| {
            let fx = f.times(&GSet::coset_space(&g, l));
            if transfer {
                m.transfer_along(&fx)
            } else {
                m.restriction_along(&fx)
            }
        })
        .collect();
    MackeyHom::new(source.module.clone(), target.module.clone(), maps)
}

pub fn coinduced_family(m: &GreenModule) -> Result<CoinducedFamily> {
    let g = m.group().clone();
    let n = g.num_subgroups();
    let modules = (0..n).map(|h| f_level_module(&GSet::coset_space(&g, h), m)).collect::<Result<Vec<_>>>()?;
    let mut res = vec![vec![None; n]; n];
    let mut tr = vec![vec![None; n]; n];
    for k in 0..n {
        for h in g.subgroups_of(k) {
            let p = GMap::projection(&g, h, k);
            res[k][h] = Some(along_first_factor(&m.module, &p, &modules[k], &modules[h], false));
            tr[k][h] = Some(along_first_factor(&m.module, &p, &modules[h], &modules[k], true));
        }
    }
    let conj = g
        .elements()
        .map(|x| {
            (0..n)
                .map(|h| {
                    let c = GMap::conjugation(&g, x, h);
                    along_first_factor(&m.module, &c, &modules[h], &modules[g.conj_subgroup(x, h)], true)
                })
                .collect()
        })
        .collect();
    Ok(CoinducedFamily { modules, res, tr, conj })
}

impl CoinducedFamily {
    /// The Mackey functor with level `H` a group of maps into `M_{G/H}`, given by generators and a
    /// coordinate function, with structure maps by postcomposition.
    pub fn assemble(
        &self,
        levels: Vec<PresentedAb>,
        basis: &[Vec<MackeyHom>],
        coords: impl Fn(SubgroupId, &MackeyHom) -> Option<Vec<Int>>,
    ) -> Result<MackeyFunctor> {
        let g = self.modules[0].group().clone();
        let post = |from: SubgroupId, to: SubgroupId, via: &MackeyHom| -> Matrix {
            let cols: Vec<Vec<Int>> = basis[from]
                .iter()
                .map(|b| coords(to, &b.then(via)).expect("postcomposition stays in the family"))
                .collect();
            Matrix::from_columns(levels[to].ngens(), &cols)
        };
        let some = |m: &Option<MackeyHom>| m.clone().expect("defined for H <= K");
        MackeyFunctor::from_fn(
            &g,
            levels.clone(),
            |k, h| post(k, h, &some(&self.res[k][h])),
            |k, h| post(h, k, &some(&self.tr[k][h])),
            |x, h| post(h, g.conj_subgroup(x, h), &self.conj[x][h]),
        )
    }
}
