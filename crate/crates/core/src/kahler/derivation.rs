//! Genuine derivations: the Leibniz rule, the norm rule `d(N a) = tr(N_{d₂}R_{d₁}(a)·d(a))`,
//! and vanishing on the base.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gsets::SubgroupId;
use crate::mackey::{add_mackey_hom_constraints, GreenModule, MackeyFunctor, MackeyHom, MatrixUnknowns};
use crate::poly::{simplex_points, to_ints};
use crate::report::Report;
use crate::tambara::{burnside, burnside_map, coinduced_family, off_diagonal_norm, TambaraFunctor, TambaraHom};
use crate::zmod::{unit_vec, Int, LinearSystem, Matrix, PresentedAb, SolutionSpace};

/// A Tambara functor `R` over a base `S` through `structure: S → R`.
#[derive(Clone, Debug)]
pub struct Algebra {
    pub ring: Arc<TambaraFunctor>,
    pub base: Arc<TambaraFunctor>,
    pub structure: TambaraHom,
}

impl Algebra {
    pub fn new(structure: TambaraHom) -> Self {
        Self { ring: structure.target.clone(), base: structure.source.clone(), structure }
    }

    pub fn over_itself(r: &Arc<TambaraFunctor>) -> Self {
        Self::new(TambaraHom::identity(r))
    }

    /// `R` over the Burnside functor through its unique map.
    pub fn over_burnside(r: &Arc<TambaraFunctor>) -> Self {
        let a = Arc::new(burnside(r.group()));
        Self::new(burnside_map(&a, r))
    }

    pub fn check(&self, grid_bound: Option<usize>) -> Report {
        let mut rep = crate::tambara::check_tambara(&self.ring, grid_bound).prefixed("ring");
        rep.merge(crate::tambara::check_tambara(&self.base, grid_bound).prefixed("base"));
        rep.merge(self.structure.check(grid_bound).prefixed("structure"));
        rep
    }
}

const LEIBNIZ: &str = "genuine derivation: Leibniz rule";
const NORM_RULE: &str = "genuine derivation: norm rule";
const BASE: &str = "genuine derivation: vanishes on the base";

fn grid_degree(d: usize, bound: Option<usize>) -> usize {
    bound.map_or(d, |b| b.max(d))
}

/// Checks that `d: R → M` is a genuine derivation over the base of `alg`.
pub fn is_genuine_derivation(alg: &Algebra, m: &GreenModule, d: &MackeyHom, grid_bound: Option<usize>) -> Report {
    let r = &alg.ring;
    let g = r.group().clone();
    let n = g.num_subgroups();
    let mut rep = d.check();
    rep.declare("derivation.leibniz", LEIBNIZ);
    rep.declare("derivation.norm", NORM_RULE);
    rep.declare("derivation.base", BASE);
    let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
    let mm = &m.module;
    for h in 0..n {
        let q = r.ngens(h);
        for i in 0..q {
            for j in 0..q {
                let (a, b) = (unit_vec(q, i), unit_vec(q, j));
                let lhs = d.apply(h, &r.mul(h, &a, &b));
                let rhs = crate::zmod::add_vec(&m.act(h, &a, &d.apply(h, &b)), &m.act(h, &b, &d.apply(h, &a)));
                rep.record("derivation.leibniz", LEIBNIZ, mm.level(h).eq_elements(&lhs, &rhs), || {
                    format!("d(ab) != a d(b) + b d(a) at {} on generators {i},{j}", lab(h))
                });
            }
        }
        for s in 0..alg.base.ngens(h) {
            let img = d.apply(h, &alg.structure.apply(h, &unit_vec(alg.base.ngens(h), s)));
            rep.record("derivation.base", BASE, mm.level(h).is_zero_element(&img), || {
                format!("d is nonzero on base generator {s} at {}", lab(h))
            });
        }
    }
    for k in 0..n {
        for h in g.subgroups_of(k) {
            if h == k {
                continue;
            }
            for p in simplex_points(r.ngens(h), grid_degree(g.index(h, k), grid_bound)) {
                let a = to_ints(&p);
                let lhs = d.apply(k, &r.norm(k, h, &a));
                let rhs = match off_diagonal_norm(r, h, k, &a) {
                    Ok(c) => mm.tr(k, h).mul_vec(&m.act(h, &c, &d.apply(h, &a))),
                    Err(e) => {
                        rep.record("derivation.norm", NORM_RULE, false, || e.to_string());
                        continue;
                    }
                };
                rep.record("derivation.norm", NORM_RULE, mm.level(k).eq_elements(&lhs, &rhs), || {
                    format!("d(N_{}^{} a) != tr(N R(a)·d(a)) at a = {:?}", lab(h), lab(k), p)
                });
            }
        }
    }
    rep
}

/// `Der_S(R, M)` as the solution group of a linear system, with explicit derivations.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub algebra: Algebra,
    pub module: GreenModule,
    pub unknowns: MatrixUnknowns,
    pub solutions: SolutionSpace,
}

impl DerivationSpace {
    pub fn group(&self) -> &PresentedAb {
        &self.solutions.group
    }

    pub fn derivation(&self, coords: &[Int]) -> MackeyHom {
        let z = self.solutions.vector(coords);
        MackeyHom::new(self.algebra.ring.mackey().clone(), self.module.module.clone(), self.unknowns.unpack(&z))
    }

    pub fn basis(&self) -> Vec<MackeyHom> {
        let n = self.solutions.ngens();
        (0..n).map(|i| self.derivation(&unit_vec(n, i))).collect()
    }

    pub fn coords_of(&self, d: &MackeyHom) -> Option<Vec<Int>> {
        self.solutions.coords_of(&self.unknowns.pack(&d.maps))
    }
}

/// Solves for all genuine derivations `R → M` over the base: Mackey compatibility, Leibniz on
/// generator pairs, the norm rule at every grid point and vanishing on base generators.
pub fn derivation_space(alg: &Algebra, m: &GreenModule) -> Result<DerivationSpace> {
    let r = &alg.ring;
    if m.ring.group() != r.group() {
        return Err(Error::Invalid("module over a different group".into()));
    }
    let g = r.group().clone();
    let n = g.num_subgroups();
    let mm = &m.module;
    let shapes = (0..n).map(|h| (mm.level(h).ngens(), r.ngens(h))).collect();
    let u = MatrixUnknowns::new(shapes);
    let mut sys = LinearSystem::new(u.total);
    add_mackey_hom_constraints(&mut sys, &u, r.mackey(), mm);
    for h in 0..n {
        let q = r.ngens(h);
        for i in 0..q {
            for j in i..q {
                let (a, b) = (unit_vec(q, i), unit_vec(q, j));
                let c = &(&u.times_vector(h, &r.mul(h, &a, &b)) - &u.left_times_vector(&m.act_matrix(h, &a), h, &b))
                    - &u.left_times_vector(&m.act_matrix(h, &b), h, &a);
                sys.constrain(c, mm.level(h));
            }
        }
        for s in 0..alg.base.ngens(h) {
            let img = alg.structure.apply(h, &unit_vec(alg.base.ngens(h), s));
            sys.constrain(u.times_vector(h, &img), mm.level(h));
        }
    }
    for k in 0..n {
        for h in g.subgroups_of(k) {
            if h == k {
                continue;
            }
            for p in simplex_points(r.ngens(h), g.index(h, k)) {
                let a = to_ints(&p);
                let c = off_diagonal_norm(r, h, k, &a)?;
                let t: Matrix = mm.tr(k, h) * &m.act_matrix(h, &c);
                let row = &u.times_vector(k, &r.norm(k, h, &a)) - &u.left_times_vector(&t, h, &a);
                sys.constrain(row, mm.level(k));
            }
        }
    }
    Ok(DerivationSpace { algebra: alg.clone(), module: m.clone(), unknowns: u, solutions: sys.solve() })
}

/// The Mackey functor of derivations: level `H` is `Der_S(R, M_{G/H})`, the derivations of
/// `i_H^*R` into `i_H^*M`, with structure maps by postcomposition.
#[derive(Clone, Debug)]
pub struct DerivationMackey {
    pub functor: Arc<MackeyFunctor>,
    pub spaces: Vec<DerivationSpace>,
}

pub fn der_mackey(alg: &Algebra, m: &GreenModule) -> Result<DerivationMackey> {
    let fam = coinduced_family(m)?;
    let spaces = fam.modules.iter().map(|mh| derivation_space(alg, mh)).collect::<Result<Vec<_>>>()?;
    let levels = spaces.iter().map(|s| s.group().clone()).collect();
    let basis: Vec<_> = spaces.iter().map(|s| s.basis()).collect();
    let functor = fam.assemble(levels, &basis, |h, d| spaces[h].coords_of(d))?;
    Ok(DerivationMackey { functor: Arc::new(functor), spaces })
}
