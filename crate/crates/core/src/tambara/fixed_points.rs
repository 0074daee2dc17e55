//! Fixed-point Tambara functors of commutative rings with a G-action.

use std::sync::Arc;

use super::functor::{Bilinear, TambaraFunctor};
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, SubgroupId};
use crate::mackey::MackeyFunctor;
use crate::report::Report;
use crate::zmod::{ints, unit_vec, AbHom, Int, Matrix, PresentedAb};

/// A commutative ring, finitely generated as an abelian group, with a G-action.
#[derive(Clone, Debug)]
pub struct RingWithAction {
    pub group: Arc<FiniteGroup>,
    pub additive: PresentedAb,
    pub mul: Bilinear,
    pub unit: Vec<Int>,
    /// `action[g]`: the additive matrix of `g`.
    pub action: Vec<Matrix>,
}

const RING: &str = "commutative ring with action by ring automorphisms";

impl RingWithAction {
    pub fn validate(&self) -> Report {
        let mut rep = Report::new();
        let a = &self.additive;
        let n = a.ngens();
        let g = &self.group;
        let e = |i| unit_vec(n, i);
        rep.declare("ring.axioms", RING);
        let shapes_ok = self.unit.len() == n
            && self.mul.mats.len() == n
            && self.mul.mats.iter().all(|m| m.shape() == (n, n))
            && self.action.len() == g.order()
            && self.action.iter().all(|m| m.shape() == (n, n));
        rep.record("ring.axioms", RING, shapes_ok, || "table sizes do not match the additive group".into());
        if !shapes_ok {
            return rep;
        }
        for m in &self.mul.mats {
            rep.record("ring.axioms", RING, a.accepts_map_from(a, m), || "product is not well defined".into());
        }
        for col in a.relations().columns() {
            let ok = a.same_map(&self.mul.left(&col), &Matrix::zeros(n, n));
            rep.record("ring.axioms", RING, ok, || "a relation does not multiply to zero".into());
        }
        for i in 0..n {
            rep.record("ring.axioms", RING, a.eq_elements(&self.mul.apply(&self.unit, &e(i)), &e(i)), || {
                format!("unit law fails on generator {i}")
            });
            for j in 0..n {
                let ab = self.mul.apply(&e(i), &e(j));
                rep.record("ring.axioms", RING, a.eq_elements(&ab, &self.mul.apply(&e(j), &e(i))), || {
                    format!("generators {i}, {j} do not commute")
                });
                for k in 0..n {
                    let l = self.mul.apply(&ab, &e(k));
                    let r = self.mul.apply(&e(i), &self.mul.apply(&e(j), &e(k)));
                    rep.record("ring.axioms", RING, a.eq_elements(&l, &r), || {
                        format!("associativity fails on generators {i}, {j}, {k}")
                    });
                }
            }
        }
        rep.declare("ring.action", RING);
        for x in g.elements() {
            let rho = &self.action[x];
            rep.record("ring.action", RING, a.accepts_map_from(a, rho), || {
                format!("{} does not act additively", g.element_name(x))
            });
            rep.record("ring.action", RING, a.eq_elements(&rho.mul_vec(&self.unit), &self.unit), || {
                format!("{} moves the unit", g.element_name(x))
            });
            for y in g.elements() {
                let ok = a.same_map(&(rho * &self.action[y]), &self.action[g.mul(x, y)]);
                rep.record("ring.action", RING, ok, || {
                    format!("action of {} and {} does not compose", g.element_name(x), g.element_name(y))
                });
            }
            for i in 0..n {
                for j in 0..n {
                    let l = rho.mul_vec(&self.mul.apply(&e(i), &e(j)));
                    let r = self.mul.apply(&rho.mul_vec(&e(i)), &rho.mul_vec(&e(j)));
                    rep.record("ring.action", RING, a.eq_elements(&l, &r), || {
                        format!("{} is not multiplicative", g.element_name(x))
                    });
                }
            }
        }
        let id_ok = a.same_map(&self.action[g.identity()], &Matrix::identity(n));
        rep.record("ring.action", RING, id_ok, || "identity acts nontrivially".into());
        rep
    }

    /// `Z` (or `Z/m` when `modulus > 0`) with trivial action.
    pub fn integers(group: &Arc<FiniteGroup>, modulus: i64) -> Self {
        let additive = if modulus == 0 { PresentedAb::free(1) } else { PresentedAb::cyclic(modulus) };
        Self {
            group: group.clone(),
            additive,
            mul: Bilinear { mats: vec![Matrix::identity(1)] },
            unit: ints(&[1]),
            action: vec![Matrix::identity(1); group.order()],
        }
    }

    /// Functions `X → Z` (or `Z/m`) on a finite G-set given by its action table, with
    /// pointwise product and `(g·f)(x) = f(g^-1 x)`.
    pub fn functions_on(group: &Arc<FiniteGroup>, action: &[Vec<usize>], modulus: i64) -> Self {
        let n = action[0].len();
        let additive = if modulus == 0 { PresentedAb::free(n) } else { PresentedAb::from_orders(&vec![modulus; n]) };
        let mul = Bilinear::from_fn(n, n, n, |i, j| if i == j { unit_vec(n, i) } else { vec![Int::from(0); n] });
        let unit = vec![Int::from(1); n];
        // indicator of x goes to indicator of g·x
        let act = group
            .elements()
            .map(|g| Matrix::from_columns(n, &(0..n).map(|x| unit_vec(n, action[g][x])).collect::<Vec<_>>()))
            .collect();
        Self { group: group.clone(), additive, mul, unit, action: act }
    }

    /// The same ring with coefficients reduced mod `m`.
    pub fn modulo(mut self, m: i64) -> Self {
        self.additive = PresentedAb::from_orders(&vec![m; self.additive.ngens()]);
        self
    }

    /// `Z[x]/(x^2 - d)` with `g` acting by `x ↦ sign(g)·x`, where `sign` is a homomorphism to `±1`.
    pub fn quadratic(group: &Arc<FiniteGroup>, d: i64, sign: impl Fn(usize) -> i64) -> Self {
        let additive = PresentedAb::free(2);
        let mul = Bilinear { mats: vec![Matrix::identity(2), Matrix::from_i64_rows(&[vec![0, d], vec![1, 0]])] };
        let action = group.elements().map(|g| Matrix::from_i64_rows(&[vec![1, 0], vec![0, sign(g)]])).collect();
        Self { group: group.clone(), additive, mul, unit: ints(&[1, 0]), action }
    }
}

/// Levelwise fixed points `A^H` with inclusions as restrictions, orbit sums as transfers and
/// orbit products as norms.
pub fn fixed_points(ring: &RingWithAction) -> Result<TambaraFunctor> {
    let rep = ring.validate();
    if !rep.passed() {
        let w = rep.failures().next().and_then(|c| c.witness.clone()).unwrap_or_default();
        return Err(Error::Invalid(format!("ring with action: {w}")));
    }
    let g = &ring.group;
    let a = &ring.additive;
    let n = a.ngens();
    let ns = g.num_subgroups();
    // A^H = ker(x ↦ (ρ(h)x - x)_h)
    let mut levels = Vec::with_capacity(ns);
    let mut incl = Vec::with_capacity(ns);
    for h in 0..ns {
        let elems = &g.subgroup(h).elements;
        let blocks: Vec<Matrix> = elems.iter().map(|&x| &ring.action[x] - &Matrix::identity(n)).collect();
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let stacked = Matrix::vstack(n, &refs);
        let parts: Vec<&PresentedAb> = elems.iter().map(|_| a).collect();
        let target = PresentedAb::direct_sum(&parts);
        let (k, i) = AbHom::new(a.clone(), target, stacked).expect("action is additive").kernel();
        levels.push(k);
        incl.push(i);
    }
    let lift = |h: SubgroupId, y: &[Int]| -> Vec<Int> { a.solve_in_span(&incl[h], y).expect("element is fixed") };
    let lift_matrix = |h: SubgroupId, m: &Matrix| -> Matrix {
        let cols: Vec<Vec<Int>> = m.columns().iter().map(|c| lift(h, c)).collect();
        Matrix::from_columns(levels[h].ngens(), &cols)
    };
    let mackey = MackeyFunctor::from_fn(
        g,
        levels.clone(),
        |k, h| lift_matrix(h, &incl[k]),
        |k, h| {
            let mut sum = Matrix::zeros(n, levels[h].ngens());
            for x in g.left_coset_reps(k, h) {
                sum = &sum + &(&ring.action[x] * &incl[h]);
            }
            lift_matrix(k, &sum)
        },
        |x, h| lift_matrix(g.conj_subgroup(x, h), &(&ring.action[x] * &incl[h])),
    )?;
    let mul: Vec<Bilinear> = (0..ns)
        .map(|h| {
            let r = levels[h].ngens();
            Bilinear::from_fn(r, r, r, |i, j| lift(h, &ring.mul.apply(&incl[h].column(i), &incl[h].column(j))))
        })
        .collect();
    let unit: Vec<Vec<Int>> = (0..ns).map(|h| lift(h, &ring.unit)).collect();
    TambaraFunctor::from_norm_fn(Arc::new(mackey), mul, Some(unit), |k, h, x| {
        let v = incl[h].mul_vec(x);
        let mut acc = ring.unit.clone();
        for c in g.left_coset_reps(k, h) {
            acc = ring.mul.apply(&acc, &ring.action[c].mul_vec(&v));
        }
        lift(k, &acc)
    })
}
