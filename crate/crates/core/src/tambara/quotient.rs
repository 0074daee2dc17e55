//! Quotients of Tambara functors by ideals: reduction mod `p` and localization at a top-level element.

use std::sync::Arc;

use super::functor::{Bilinear, TambaraFunctor};
use super::hom::TambaraHom;
use crate::error::{Error, Result};
use crate::mackey::{generated_spans, quotient, MackeyHom};
use crate::poly::{simplex_points, to_ints};
use crate::zmod::{unit_vec, AbHom, Int, Matrix};

/// The smallest Tambara ideal containing the columns of `gens[h]`: closed under restriction,
/// transfer, conjugation, multiplication by `R` and norms.
///
/// The norms of a span `J(H)` span the same group as the norms of its grid points
/// `Σ c_i j_i`, `c` on the simplex of degree `[K:H]`.
pub fn ideal_closure(r: &TambaraFunctor, gens: &[Matrix]) -> Vec<Matrix> {
    let g = r.group().clone();
    let n = g.num_subgroups();
    let mut spans = generated_spans(r.mackey(), gens);
    loop {
        let mut extra: Vec<Vec<Vec<Int>>> = vec![Vec::new(); n];
        for h in 0..n {
            let cols = spans[h].columns();
            for i in 0..r.ngens(h) {
                for c in &cols {
                    extra[h].push(r.mul(h, &unit_vec(r.ngens(h), i), c));
                }
            }
            for k in 0..n {
                if k == h || !g.is_subgroup_of(h, k) || cols.is_empty() {
                    continue;
                }
                for p in simplex_points(cols.len(), g.index(h, k)) {
                    let x = spans[h].mul_vec(&to_ints(&p));
                    extra[k].push(r.norm(k, h, &x));
                }
            }
        }
        let mut grown = false;
        let mut next = Vec::with_capacity(n);
        for h in 0..n {
            let add = Matrix::from_columns(r.ngens(h), &extra[h]);
            if !r.level(h).span_contains(&spans[h], &add) {
                grown = true;
            }
            next.push(Matrix::hstack(r.ngens(h), &[&spans[h], &add]));
        }
        if !grown {
            return spans;
        }
        spans = generated_spans(r.mackey(), &next).iter().enumerate().map(|(h, m)| r.level(h).subgroup(m).1).collect();
    }
}

/// `R / J` for the Tambara ideal `J` generated by the columns of `gens`, with the projection.
pub fn quotient_tambara(r: &Arc<TambaraFunctor>, gens: &[Matrix]) -> Result<(Arc<TambaraFunctor>, TambaraHom)> {
    let g = r.group().clone();
    let n = g.num_subgroups();
    let spans = ideal_closure(r, gens);
    let (q, proj) = quotient(r.mackey(), &spans);
    let lift = |h: usize, y: &[Int]| -> Vec<Int> {
        q.level(h).solve_in_span(proj.map(h), y).expect("projection is surjective")
    };
    let mul: Vec<Bilinear> = (0..n)
        .map(|h| {
            let m = q.level(h).ngens();
            let pre: Vec<Vec<Int>> = (0..m).map(|i| lift(h, &unit_vec(m, i))).collect();
            Bilinear::from_fn(m, m, m, |i, j| proj.apply(h, &r.mul(h, &pre[i], &pre[j])))
        })
        .collect();
    let unit = (0..n).map(|h| r.unit(h).map(|u| proj.apply(h, u))).collect::<Option<Vec<_>>>();
    let t = TambaraFunctor::from_norm_fn(q.clone(), mul, unit, |k, h, x| proj.apply(k, &r.norm(k, h, &lift(h, x))))?;
    let t = Arc::new(t);
    let hom =
        TambaraHom { source: r.clone(), target: t.clone(), mackey: MackeyHom::new(r.mackey().clone(), q, proj.maps) };
    Ok((t, hom))
}

/// `R / pR`.
pub fn reduce_mod(r: &Arc<TambaraFunctor>, p: i64) -> Result<(Arc<TambaraFunctor>, TambaraHom)> {
    if p <= 0 {
        return Err(Error::Invalid(format!("modulus {p} must be positive")));
    }
    let gens: Vec<Matrix> =
        (0..r.group().num_subgroups()).map(|h| Matrix::identity(r.ngens(h)).scale(&Int::from(p))).collect();
    quotient_tambara(r, &gens)
}

/// The image of `R` in the colimit `R →s R →s ⋯`, i.e. `R / ker(s^∞)` with `s` acting by `res(s)`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub functor: Arc<TambaraFunctor>,
    pub map: TambaraHom,
    /// Least `n` with `ker(s^n) = ker(s^{n+1})` at every level.
    pub depth: usize,
    /// Whether `s` acts invertibly on every level, so that the colimit is `functor` itself.
    pub exact: bool,
}

pub const DEFAULT_DEPTH: usize = 8;

fn power_kernel(r: &TambaraFunctor, h: usize, s: &[Int], n: usize) -> Matrix {
    let a = r.level(h);
    let mul = r.mul_table(h).left(s);
    let mut m = Matrix::identity(a.ngens());
    for _ in 0..n {
        m = &mul * &m;
    }
    AbHom::new(a.clone(), a.clone(), m).expect("multiplication is well defined").kernel().1
}

/// Localization at `s ∈ R(G/G)`; `Err(Undecided)` when the kernel chain has not stabilized by `depth`.
pub fn localize(r: &Arc<TambaraFunctor>, s: &[Int], depth: usize) -> Result<Localization> {
    let g = r.group().clone();
    let top = g.whole_group();
    if s.len() != r.ngens(top) {
        return Err(Error::Shape("the element must live at the top level".into()));
    }
    let n = g.num_subgroups();
    let s_at: Vec<Vec<Int>> = (0..n).map(|h| r.res(top, h, s)).collect();
    let mut stable = None;
    for d in 0..=depth {
        let same = (0..n).all(|h| {
            let (a, b) = (power_kernel(r, h, &s_at[h], d), power_kernel(r, h, &s_at[h], d + 1));
            r.level(h).span_contains(&a, &b)
        });
        if same {
            stable = Some(d);
            break;
        }
    }
    let depth = stable.ok_or_else(|| Error::Undecided(format!("kernel chain of s not stable at depth {depth}")))?;
    let gens: Vec<Matrix> = (0..n).map(|h| power_kernel(r, h, &s_at[h], depth)).collect();
    let (functor, map) = quotient_tambara(r, &gens)?;
    let exact = (0..n).all(|h| {
        let sh = map.apply(h, &s_at[h]);
        let lv = functor.level(h);
        AbHom::new(lv.clone(), lv.clone(), functor.mul_table(h).left(&sh)).expect("well defined").is_isomorphism()
    });
    Ok(Localization { functor, map, depth, exact })
}
