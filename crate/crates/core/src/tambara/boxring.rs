//! The Tambara structure on box products `R₁ □ R₂` and relative box products `R₁ □_S R₂`.
//!
//! Products of symbols use Frobenius reciprocity and the double coset formula; the norm of a
//! sum of symbols `Σ T_{L→H}(η_L(a)·η_R(b))` is computed through the exponential diagram of
//! `X → G/H → G/K`, where `η_L`, `η_R` commute with norms and restrictions.

use std::sync::Arc;

use num_traits::Zero;

use super::functor::{Bilinear, TambaraFunctor};
use super::hom::TambaraHom;
use crate::error::{Error, Result};
use crate::gsets::{dependent_product, GMap, GSet, SubgroupId};
use crate::mackey::{box_over, box_product, BoxProduct, GreenModule, MackeyHom};
use crate::zmod::{add_vec, scale_vec, unit_vec, Int, Matrix};

/// `R₁ □ R₂` (or `R₁ □_S R₂`) as a Tambara functor, with its two unit maps.
#[derive(Clone, Debug)]
pub struct BoxRing {
    pub bx: BoxProduct,
    pub ring: Arc<TambaraFunctor>,
    pub left: Arc<TambaraFunctor>,
    pub right: Arc<TambaraFunctor>,
    /// `η_L: R₁ → R₁ □ R₂`, `a ↦ [K, a ⊗ 1]`.
    pub eta_left: TambaraHom,
    /// `η_R: R₂ → R₁ □ R₂`, `b ↦ [K, 1 ⊗ b]`.
    pub eta_right: TambaraHom,
}

struct Raw<'a> {
    bx: &'a BoxProduct,
    r1: &'a TambaraFunctor,
    r2: &'a TambaraFunctor,
}

impl Raw<'_> {
    fn terms(&self, k: SubgroupId, x: &[Int]) -> Vec<(SubgroupId, usize, usize, Int)> {
        let mut out = Vec::new();
        self.bx.for_each_term(k, x, |l, i, j, c| out.push((l, i, j, c.clone())));
        out
    }

    fn mul(&self, k: SubgroupId, x: &[Int], y: &[Int]) -> Vec<Int> {
        let g = self.r1.group();
        let mut out = vec![Int::zero(); self.bx.raw.level(k).ngens()];
        for (l, i, j, c) in self.terms(k, x) {
            let (a, b) = (unit_vec(self.r1.ngens(l), i), unit_vec(self.r2.ngens(l), j));
            for (l2, i2, j2, c2) in self.terms(k, y) {
                let (a2, b2) = (unit_vec(self.r1.ngens(l2), i2), unit_vec(self.r2.ngens(l2), j2));
                for z in g.double_coset_reps(l, k, l2) {
                    let inner = g.intersection(g.conj_subgroup(g.inv(z), l), l2);
                    let j_ = g.conj_subgroup(z, inner);
                    let p =
                        self.r1.mul(j_, &self.r1.res(l, j_, &a), &self.r1.conj(z, inner, &self.r1.res(l2, inner, &a2)));
                    let q =
                        self.r2.mul(j_, &self.r2.res(l, j_, &b), &self.r2.conj(z, inner, &self.r2.res(l2, inner, &b2)));
                    let s = self.bx.symbol_raw(k, j_, &p, &q);
                    out = add_vec(&out, &scale_vec(&(&c * &c2), &s));
                }
            }
        }
        out
    }

    /// `N_H^K` of a raw element at level `h`.
    fn norm(&self, k: SubgroupId, h: SubgroupId, x: &[Int]) -> Result<Vec<Int>> {
        let g = self.r1.group();
        let terms = self.terms(h, x);
        let base = GSet::coset_space(g, h);
        let mut p = GMap::new(GSet::empty(g), base, vec![])?;
        let mut alpha = Vec::new();
        let mut beta = Vec::new();
        for (l, i, j, c) in &terms {
            p = p.copair(&GMap::projection(g, *l, h))?;
            alpha.extend(scale_vec(c, &unit_vec(self.r1.ngens(*l), *i)));
            beta.extend(unit_vec(self.r2.ngens(*l), *j));
        }
        let exp = dependent_product(&p, &GMap::projection(g, h, k))?;
        let a = self.r1.norm_along(&exp.g_prime, &self.r1.restrict_along(&exp.f_prime, &alpha))?;
        let b = self.r2.norm_along(&exp.g_prime, &self.r2.restrict_along(&exp.f_prime, &beta))?;
        let pi = &exp.dependent_product;
        let d = pi.orbits();
        let (o1, o2) = (self.r1.mackey().offsets(&d), self.r2.mackey().offsets(&d));
        let mut v = Vec::new();
        for (t, o) in d.orbits.iter().enumerate() {
            let s = o.stabilizer;
            v.extend(self.bx.symbol_raw(s, s, &a[o1[t]..o1[t + 1]], &b[o2[t]..o2[t + 1]]));
        }
        Ok(self.bx.raw.transfer_along(&exp.h_prime).mul_vec(&v))
    }
}

/// `R₁ □ R₂` when `base` is `None`, otherwise `R₁ □_S R₂` for `base = (S, φ₁: S → R₁, φ₂: S → R₂)`.
pub fn box_ring(
    r1: &Arc<TambaraFunctor>,
    r2: &Arc<TambaraFunctor>,
    base: Option<(&Arc<TambaraFunctor>, &MackeyHom, &MackeyHom)>,
) -> Result<BoxRing> {
    let (u1, u2) = match (r1.is_unital(), r2.is_unital()) {
        (true, true) => (r1.clone(), r2.clone()),
        _ => return Err(Error::Invalid("box products of rings need units".into())),
    };
    let bx = match base {
        None => box_product(r1.mackey(), r2.mackey())?,
        Some((s, phi1, phi2)) => {
            let m1 = GreenModule::regular(r1).restrict_scalars(s, phi1);
            let m2 = GreenModule::regular(r2).restrict_scalars(s, phi2);
            box_over(&m1, &m2)?
        }
    };
    let g = r1.group().clone();
    let n = g.num_subgroups();
    let raw = Raw { bx: &bx, r1: &u1, r2: &u2 };
    let f = &bx.functor;
    let mul: Vec<Bilinear> = (0..n)
        .map(|k| {
            let m = f.level(k).ngens();
            let lift = |i| bx.from.apply(k, &unit_vec(m, i));
            Bilinear::from_fn(m, m, m, |i, j| bx.to.apply(k, &raw.mul(k, &lift(i), &lift(j))))
        })
        .collect();
    let unit: Vec<Vec<Int>> = (0..n).map(|k| bx.symbol(k, k, r1.unit(k).unwrap(), r2.unit(k).unwrap())).collect();
    let mut failure = None;
    let ring = TambaraFunctor::from_norm_fn(f.clone(), mul, Some(unit), |k, h, x| {
        match raw.norm(k, h, &bx.from.apply(h, x)) {
            Ok(v) => bx.to.apply(k, &v),
            Err(e) => {
                failure.get_or_insert(e);
                vec![Int::zero(); f.level(k).ngens()]
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let ring = Arc::new(ring);
    let eta = |r: &Arc<TambaraFunctor>, left: bool| {
        let maps = (0..n)
            .map(|k| {
                let cols: Vec<Vec<Int>> = (0..r.ngens(k))
                    .map(|i| {
                        let e = unit_vec(r.ngens(k), i);
                        if left {
                            bx.symbol(k, k, &e, r2.unit(k).unwrap())
                        } else {
                            bx.symbol(k, k, r1.unit(k).unwrap(), &e)
                        }
                    })
                    .collect();
                Matrix::from_columns(f.level(k).ngens(), &cols)
            })
            .collect();
        TambaraHom::new(r.clone(), ring.clone(), maps)
    };
    let eta_left = eta(r1, true);
    let eta_right = eta(r2, false);
    Ok(BoxRing { bx, ring, left: r1.clone(), right: r2.clone(), eta_left, eta_right })
}

impl BoxRing {
    /// The multiplication `R □ R → R`, `[L, a ⊗ b] ↦ tr_L^K(ab)` (for `R₁ = R₂`).
    pub fn multiplication(&self) -> TambaraHom {
        let mu = GreenModule::regular(&self.left).action_map(&self.bx);
        TambaraHom { source: self.ring.clone(), target: self.left.clone(), mackey: mu }
    }
}
