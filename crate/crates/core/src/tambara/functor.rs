//! Green and Tambara functors: levelwise rings with norms, and evaluation on arbitrary G-sets.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::bispan::Bispan;
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, GMap, GSet, SubgroupId};
use crate::mackey::MackeyFunctor;
use crate::poly::NewtonPoly;
use crate::zmod::{add_vec, Int, Matrix, PresentedAb};

/// A bilinear map given by the matrices of multiplication by each left generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    pub mats: Vec<Matrix>,
}

impl Bilinear {
    pub fn from_fn(nleft: usize, nright: usize, nout: usize, f: impl Fn(usize, usize) -> Vec<Int>) -> Self {
        let mats = (0..nleft)
            .map(|i| {
                let cols: Vec<Vec<Int>> = (0..nright).map(|j| f(i, j)).collect();
                Matrix::from_columns(nout, &cols)
            })
            .collect();
        Self { mats }
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left(&self, x: &[Int]) -> Matrix {
        let mut acc: Option<Matrix> = None;
        for (xi, m) in x.iter().zip(&self.mats) {
            if xi.is_zero() {
                continue;
            }
            let t = m.scale(xi);
            acc = Some(match acc {
                None => t,
                Some(a) => &a + &t,
            });
        }
        acc.unwrap_or_else(|| match self.mats.first() {
            Some(m) => Matrix::zeros(m.rows(), m.cols()),
            None => Matrix::zeros(0, 0),
        })
    }

    pub fn apply(&self, x: &[Int], y: &[Int]) -> Vec<Int> {
        let mut out: Option<Vec<Int>> = None;
        for (xi, m) in x.iter().zip(&self.mats) {
            if xi.is_zero() {
                continue;
            }
            let v: Vec<Int> = m.mul_vec(y).into_iter().map(|c| c * xi).collect();
            out = Some(match out {
                None => v,
                Some(o) => add_vec(&o, &v),
            });
        }
        out.unwrap_or_else(|| vec![Int::zero(); self.out_dim()])
    }

    pub fn out_dim(&self) -> usize {
        self.mats.first().map_or(0, |m| m.rows())
    }
}

/// A (possibly non-unital) Tambara functor; levels, products and norms on every subgroup.
#[derive(Clone)]
pub struct TambaraFunctor {
    mackey: Arc<MackeyFunctor>,
    mul: Vec<Bilinear>,
    unit: Option<Vec<Vec<Int>>>,
    /// `norms[k][h]` for `H < K`: the norm `R(G/H) → R(G/K)`.
    norms: Vec<Vec<Option<NewtonPoly>>>,
}

impl fmt::Debug for TambaraFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tambara{:?}", self.mackey)
    }
}

impl TambaraFunctor {
    pub fn new(
        mackey: Arc<MackeyFunctor>,
        mul: Vec<Bilinear>,
        unit: Option<Vec<Vec<Int>>>,
        norms: Vec<Vec<Option<NewtonPoly>>>,
    ) -> Result<Self> {
        let g = mackey.group().clone();
        let n = g.num_subgroups();
        if mul.len() != n || unit.as_ref().is_some_and(|u| u.len() != n) || norms.len() != n {
            return Err(Error::Shape("one product, unit and norm row per subgroup".into()));
        }
        for h in 0..n {
            let r = mackey.level(h).ngens();
            if mul[h].mats.len() != r || mul[h].mats.iter().any(|m| m.shape() != (r, r)) {
                return Err(Error::Shape(format!("product table at {} has the wrong size", g.subgroup_label(h))));
            }
        }
        for k in 0..n {
            for h in 0..n {
                if h != k && g.is_subgroup_of(h, k) {
                    match &norms[k][h] {
                        Some(p) if p.nvars() == mackey.level(h).ngens() && p.out_dim() == mackey.level(k).ngens() => {}
                        _ => {
                            return Err(Error::Shape(format!(
                                "missing or mis-sized norm {} -> {}",
                                g.subgroup_label(h),
                                g.subgroup_label(k)
                            )))
                        }
                    }
                }
            }
        }
        Ok(Self { mackey, mul, unit, norms })
    }

    /// Interpolates every norm `N_H^K` from `f(k, h, x)` on the simplex grid of degree `[K:H]`.
    pub fn from_norm_fn(
        mackey: Arc<MackeyFunctor>,
        mul: Vec<Bilinear>,
        unit: Option<Vec<Vec<Int>>>,
        mut f: impl FnMut(SubgroupId, SubgroupId, &[Int]) -> Vec<Int>,
    ) -> Result<Self> {
        let g = mackey.group().clone();
        let n = g.num_subgroups();
        let mut norms = vec![vec![None; n]; n];
        for k in 0..n {
            for h in 0..n {
                if h != k && g.is_subgroup_of(h, k) {
                    let (r, s) = (mackey.level(h).ngens(), mackey.level(k).ngens());
                    let target = mackey.level(k).clone();
                    let p = NewtonPoly::interpolate(r, g.index(h, k), s, |x| f(k, h, x));
                    norms[k][h] = Some(p.map_coeffs(s, |c| target.reduce(c)));
                }
            }
        }
        Self::new(mackey, mul, unit, norms)
    }

    pub fn mackey(&self) -> &Arc<MackeyFunctor> {
        &self.mackey
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.mackey.group()
    }

    pub fn level(&self, h: SubgroupId) -> &PresentedAb {
        self.mackey.level(h)
    }

    pub fn ngens(&self, h: SubgroupId) -> usize {
        self.mackey.level(h).ngens()
    }

    pub fn mul_table(&self, h: SubgroupId) -> &Bilinear {
        &self.mul[h]
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn unit(&self, h: SubgroupId) -> Option<&[Int]> {
        self.unit.as_ref().map(|u| u[h].as_slice())
    }

    pub fn norm_poly(&self, k: SubgroupId, h: SubgroupId) -> Option<&NewtonPoly> {
        self.norms[k][h].as_ref()
    }

    pub fn mul(&self, h: SubgroupId, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.mul[h].apply(a, b)
    }

    pub fn res(&self, k: SubgroupId, h: SubgroupId, x: &[Int]) -> Vec<Int> {
        self.mackey.res(k, h).mul_vec(x)
    }

    pub fn tr(&self, k: SubgroupId, h: SubgroupId, x: &[Int]) -> Vec<Int> {
        self.mackey.tr(k, h).mul_vec(x)
    }

    pub fn conj(&self, g: usize, h: SubgroupId, x: &[Int]) -> Vec<Int> {
        self.mackey.conj(g, h).mul_vec(x)
    }

    /// `N_H^K(x)`; the identity when `H = K`.
    pub fn norm(&self, k: SubgroupId, h: SubgroupId, x: &[Int]) -> Vec<Int> {
        if h == k {
            return x.to_vec();
        }
        self.norms[k][h].as_ref().expect("norm needs H < K").eval(x)
    }

    pub fn eq(&self, h: SubgroupId, a: &[Int], b: &[Int]) -> bool {
        self.level(h).eq_elements(a, b)
    }

    /// Replaces the norm table (used for negative controls and corrections).
    pub fn with_norm(&self, k: SubgroupId, h: SubgroupId, p: NewtonPoly) -> Self {
        let mut t = self.clone();
        t.norms[k][h] = Some(p);
        t
    }

    pub fn eval(&self, x: &GSet) -> PresentedAb {
        self.mackey.eval(x)
    }

    pub fn restrict_along(&self, f: &GMap, x: &[Int]) -> Vec<Int> {
        self.mackey.restriction_along(f).mul_vec(x)
    }

    pub fn transfer_along(&self, f: &GMap, x: &[Int]) -> Vec<Int> {
        self.mackey.transfer_along(f).mul_vec(x)
    }

    fn split<'a>(&self, x: &GSet, v: &'a [Int]) -> Vec<&'a [Int]> {
        let d = x.orbits();
        let off = self.mackey.offsets(&d);
        (0..d.orbits.len()).map(|i| &v[off[i]..off[i + 1]]).collect()
    }

    /// Orbitwise product in `R(X)`.
    pub fn mul_at(&self, x: &GSet, a: &[Int], b: &[Int]) -> Vec<Int> {
        let d = x.orbits();
        let (sa, sb) = (self.split(x, a), self.split(x, b));
        d.orbits.iter().enumerate().flat_map(|(i, o)| self.mul(o.stabilizer, sa[i], sb[i])).collect()
    }

    pub fn unit_at(&self, x: &GSet) -> Option<Vec<Int>> {
        let d = x.orbits();
        let u = self.unit.as_ref()?;
        Some(d.orbits.iter().flat_map(|o| u[o.stabilizer].clone()).collect())
    }

    /// `N_f: R(X) → R(Y)`: over each orbit representative `y`, the product of the norms of
    /// the values on the `Stab(y)`-orbits of the fiber.
    pub fn norm_along(&self, f: &GMap, x: &[Int]) -> Result<Vec<Int>> {
        let g = self.group();
        let (sx, sy) = (f.source(), f.target());
        let (dx, dy) = (sx.orbits(), sy.orbits());
        let parts = self.split(sx, x);
        let mut out = Vec::new();
        for o in &dy.orbits {
            let k = o.stabilizer;
            let fiber = f.fiber(o.rep);
            let mut seen = vec![false; sx.len()];
            let mut acc: Option<Vec<Int>> = None;
            for &u in &fiber {
                if seen[u] {
                    continue;
                }
                for &kk in &g.subgroup(k).elements {
                    seen[sx.act(kk, u)] = true;
                }
                let i = dx.orbit_of[u];
                let gamma = dx.transporter[u];
                let hi = dx.orbits[i].stabilizer;
                let su = g.conj_subgroup(gamma, hi);
                let value = self.norm(k, su, &self.conj(gamma, hi, parts[i]));
                acc = Some(match acc {
                    None => value,
                    Some(a) => self.mul(k, &a, &value),
                });
            }
            let v = match acc {
                Some(v) => v,
                None => self
                    .unit(k)
                    .ok_or_else(|| Error::Invalid("norm along a map with an empty fiber needs a unit".into()))?
                    .to_vec(),
            };
            out.extend(v);
        }
        Ok(out)
    }

    /// `T_h N_g R_f (x)`.
    pub fn eval_bispan(&self, p: &Bispan, x: &[Int]) -> Result<Vec<Int>> {
        if x.len() != self.eval(p.s()).ngens() {
            return Err(Error::Shape("element does not live at the source of the bispan".into()));
        }
        let r = self.restrict_along(&p.f, x);
        let n = self.norm_along(&p.g, &r)?;
        Ok(self.transfer_along(&p.h, &n))
    }
}
