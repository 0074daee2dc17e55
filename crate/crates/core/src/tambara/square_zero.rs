//! Square-zero extensions `R ⋉ M` and kernels of Tambara maps as non-unital Tambara functors.

use std::sync::Arc;

use super::functor::{Bilinear, TambaraFunctor};
use super::hom::TambaraHom;
use crate::error::{Error, Result};
use crate::gsets::{off_diagonal, SubgroupId};
use crate::mackey::{GreenModule, MackeyFunctor, MackeyHom};
use crate::zmod::{add_vec, unit_vec, zero_vec, Int, Matrix};

/// `R ⋉ M` with its augmentation, section and the inclusion of `M`.
#[derive(Clone, Debug)]
pub struct SquareZero {
    pub base: Arc<TambaraFunctor>,
    pub module: GreenModule,
    pub ext: Arc<TambaraFunctor>,
    /// `R ⋉ M → R`
    pub augmentation: TambaraHom,
    /// `R → R ⋉ M`, `r ↦ (r, 0)`
    pub section: TambaraHom,
    /// `M → R ⋉ M`, `m ↦ (0, m)`
    pub inclusion: MackeyHom,
}

/// `N_{d₂} R_{d₁}(r)` for the off-diagonal `D ⊂ G/H ×_{G/K} G/H`.
pub fn off_diagonal_norm(r: &TambaraFunctor, h: SubgroupId, k: SubgroupId, x: &[Int]) -> Result<Vec<Int>> {
    let od = off_diagonal(r.group(), h, k)?;
    r.norm_along(&od.d2, &r.restrict_along(&od.d1, x))
}

/// The square-zero extension: levels `R ⊕ M`, `(r,m)(r',m') = (rr', rm' + r'm)` and
/// `N_H^K(r, m) = (N_H^K r, tr_H^K(N_{d₂}R_{d₁}(r)·m))`.
pub fn square_zero(r: &Arc<TambaraFunctor>, m: &GreenModule) -> Result<SquareZero> {
    let rep = m.validate();
    if !rep.passed() {
        let w = rep.failures().next().and_then(|c| c.witness.clone()).unwrap_or_default();
        return Err(Error::Invalid(format!("module: {w}")));
    }
    let units = (0..r.group().num_subgroups())
        .map(|h| r.unit(h).map(<[Int]>::to_vec))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("square-zero extension of a non-unital functor".into()))?;
    let g = r.group().clone();
    let n = g.num_subgroups();
    let mk = Arc::new(r.mackey().direct_sum(&m.module));
    let split = |h: SubgroupId, x: &[Int]| -> (Vec<Int>, Vec<Int>) {
        let a = r.ngens(h);
        (x[..a].to_vec(), x[a..].to_vec())
    };
    let mul: Vec<Bilinear> = (0..n)
        .map(|h| {
            let t = mk.level(h).ngens();
            Bilinear::from_fn(t, t, t, |i, j| {
                let (a, x) = split(h, &unit_vec(t, i));
                let (b, y) = split(h, &unit_vec(t, j));
                let mut out = r.mul(h, &a, &b);
                out.extend(add_vec(&m.act(h, &a, &y), &m.act(h, &b, &x)));
                out
            })
        })
        .collect();
    let unit: Vec<Vec<Int>> =
        (0..n).map(|h| units[h].iter().cloned().chain(zero_vec(m.module.level(h).ngens())).collect()).collect();
    let mut failure = None;
    let ext = TambaraFunctor::from_norm_fn(mk.clone(), mul, Some(unit), |k, h, x| {
        let (a, y) = split(h, x);
        let mut out = r.norm(k, h, &a);
        match off_diagonal_norm(r, h, k, &a) {
            Ok(c) => out.extend(m.module.tr(k, h).mul_vec(&m.act(h, &c, &y))),
            Err(e) => {
                failure.get_or_insert(e);
                out.extend(zero_vec(m.module.level(k).ngens()));
            }
        }
        out
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let ext = Arc::new(ext);
    let aug = (0..n)
        .map(|h| {
            Matrix::hstack(
                r.ngens(h),
                &[&Matrix::identity(r.ngens(h)), &Matrix::zeros(r.ngens(h), m.module.level(h).ngens())],
            )
        })
        .collect();
    let sec = (0..n)
        .map(|h| {
            Matrix::vstack(
                r.ngens(h),
                &[&Matrix::identity(r.ngens(h)), &Matrix::zeros(m.module.level(h).ngens(), r.ngens(h))],
            )
        })
        .collect();
    let inc = (0..n)
        .map(|h| {
            let q = m.module.level(h).ngens();
            Matrix::vstack(q, &[&Matrix::zeros(r.ngens(h), q), &Matrix::identity(q)])
        })
        .collect();
    Ok(SquareZero {
        base: r.clone(),
        module: m.clone(),
        augmentation: TambaraHom::new(ext.clone(), r.clone(), aug),
        section: TambaraHom::new(r.clone(), ext.clone(), sec),
        inclusion: MackeyHom::new(m.module.clone(), mk, inc),
        ext,
    })
}

impl SquareZero {
    /// `R ⋉ f: R ⋉ M → R ⋉ M'` for a module map `f`.
    pub fn functorial(&self, other: &SquareZero, f: &MackeyHom) -> TambaraHom {
        let n = self.ext.group().num_subgroups();
        let maps = (0..n).map(|h| Matrix::block_diag(&[&Matrix::identity(self.base.ngens(h)), f.map(h)])).collect();
        TambaraHom::new(self.ext.clone(), other.ext.clone(), maps)
    }
}

/// A non-unital Tambara functor sitting inside an ambient one.
#[derive(Clone, Debug)]
pub struct NonUnitalTambara {
    pub functor: Arc<TambaraFunctor>,
    pub ambient: Arc<TambaraFunctor>,
    pub inclusion: MackeyHom,
}

/// `ker(f)` with the products and norms of the source; fails if a norm leaves the kernel.
pub fn kernel_ideal(f: &TambaraHom) -> Result<NonUnitalTambara> {
    let (k, incl) = f.mackey.kernel();
    sub_tambara(&f.source, &k, &incl, false)
}

/// A sub-functor `incl: K → R` closed under products and norms, as a (non-unital) Tambara functor.
pub fn sub_tambara(
    r: &Arc<TambaraFunctor>,
    k: &Arc<MackeyFunctor>,
    incl: &MackeyHom,
    unital: bool,
) -> Result<NonUnitalTambara> {
    let g = r.group().clone();
    let n = g.num_subgroups();
    let lift = |h: SubgroupId, y: &[Int]| -> Result<Vec<Int>> {
        r.level(h)
            .solve_in_span(incl.map(h), y)
            .ok_or_else(|| Error::Invalid(format!("not closed at {}", g.subgroup_label(h))))
    };
    let mut mul = Vec::with_capacity(n);
    for h in 0..n {
        let q = k.level(h).ngens();
        let mut mats = Vec::with_capacity(q);
        for i in 0..q {
            let mut cols = Vec::with_capacity(q);
            for j in 0..q {
                let y = r.mul(h, &incl.map(h).column(i), &incl.map(h).column(j));
                cols.push(lift(h, &y)?);
            }
            mats.push(Matrix::from_columns(q, &cols));
        }
        mul.push(Bilinear { mats });
    }
    let unit = if unital {
        Some((0..n).map(|h| lift(h, r.unit(h).expect("unital ambient"))).collect::<Result<Vec<_>>>()?)
    } else {
        None
    };
    let mut failure = None;
    let t = TambaraFunctor::from_norm_fn(k.clone(), mul, unit, |kk, h, x| {
        let y = r.norm(kk, h, &incl.apply(h, x));
        match lift(kk, &y) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                zero_vec(k.level(kk).ngens())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(NonUnitalTambara { functor: Arc::new(t), ambient: r.clone(), inclusion: incl.clone() })
}
