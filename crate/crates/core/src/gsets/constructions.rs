//! Pullbacks, dependent products and the diagrams built from them.

use std::collections::HashMap;
use std::sync::Arc;

use super::group::{FiniteGroup, SubgroupId};
use super::gset::{GMap, GSet};
use crate::error::{Error, Result};
use crate::zmod::enum_cap;

/// `X ×_Z Y` with points `(x, y)` in lexicographic order, and the two projections.
pub fn pullback(f: &GMap, g: &GMap) -> Result<(GSet, GMap, GMap)> {
    if f.target() != g.target() {
        return Err(Error::NotComposable("pullback of maps with different targets".into()));
    }
    let (x, y) = (f.source(), g.source());
    let mut pairs = Vec::new();
    let mut index = HashMap::new();
    for a in 0..x.len() {
        for b in 0..y.len() {
            if f.apply(a) == g.apply(b) {
                index.insert((a, b), pairs.len());
                pairs.push((a, b));
            }
        }
    }
    let p = GSet::from_fn(x.group(), pairs.len(), |k, i| {
        let (a, b) = pairs[i];
        index[&(x.act(k, a), y.act(k, b))]
    });
    let p1 = GMap::raw(p.clone(), x.clone(), pairs.iter().map(|&(a, _)| a).collect());
    let p2 = GMap::raw(p.clone(), y.clone(), pairs.iter().map(|&(_, b)| b).collect());
    Ok((p, p1, p2))
}

/// The exponential diagram of `h: A → S` along `g: S → T`.
///
/// ```text
///   S <-g*- E = S ×_T Π --f'--> A
///   |g      |g'
///   T <-h'- Π = Π_g A
/// ```
#[derive(Clone, Debug)]
pub struct ExponentialDiagram {
    pub g: GMap,
    pub h: GMap,
    pub dependent_product: GSet,
    /// For each point of `Π`, its base point `t` and the section values on `g^-1(t)` (in fiber order).
    pub sections: Vec<(usize, Vec<usize>)>,
    pub h_prime: GMap,
    pub pullback: GSet,
    /// `E → S`
    pub e_to_s: GMap,
    pub f_prime: GMap,
    pub g_prime: GMap,
}

/// `Π_g A` alone: the G-set of pairs `(t, σ)` and its map to `T`.
#[derive(Clone, Debug)]
pub struct DependentProduct {
    pub object: GSet,
    pub sections: Vec<(usize, Vec<usize>)>,
    pub to_base: GMap,
    pos_in_fiber: Vec<usize>,
}

/// Builds `Π_g A = {(t, σ) | σ a section of h over g^-1(t)}` with the conjugation action.
pub fn dependent_product_object(h: &GMap, g: &GMap) -> Result<DependentProduct> {
    if h.target() != g.source() {
        return Err(Error::NotComposable("dependent product needs h: A -> S and g: S -> T".into()));
    }
    let (s, t) = (g.source(), g.target());
    let group = s.group();
    let fibers: Vec<Vec<usize>> = (0..t.len()).map(|b| g.fiber(b)).collect();
    let mut pos_in_fiber = vec![0usize; s.len()];
    for fib in &fibers {
        for (i, &x) in fib.iter().enumerate() {
            pos_in_fiber[x] = i;
        }
    }
    let choices: Vec<Vec<usize>> = (0..s.len()).map(|x| h.fiber(x)).collect();
    let total: f64 = fibers.iter().map(|fib| fib.iter().map(|&x| choices[x].len() as f64).product::<f64>()).sum();
    if total > enum_cap() as f64 {
        return Err(Error::Infinite(format!("dependent product would have about {total:.0} points")));
    }
    let mut sections: Vec<(usize, Vec<usize>)> = Vec::new();
    for (b, fib) in fibers.iter().enumerate() {
        let opts: Vec<&Vec<usize>> = fib.iter().map(|&x| &choices[x]).collect();
        for sigma in cartesian(&opts) {
            sections.push((b, sigma));
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> =
        sections.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let a = h.source();
    let pi = GSet::from_fn(group, sections.len(), |k, i| {
        let (b, sigma) = &sections[i];
        let kb = t.act(k, *b);
        let kinv = group.inv(k);
        let moved: Vec<usize> = fibers[kb].iter().map(|&x| a.act(k, sigma[pos_in_fiber[s.act(kinv, x)]])).collect();
        index[&(kb, moved)]
    });
    let to_base = GMap::raw(pi.clone(), t.clone(), sections.iter().map(|(b, _)| *b).collect());
    Ok(DependentProduct { object: pi, sections, to_base, pos_in_fiber })
}

/// The full exponential diagram of `h` along `g`.
pub fn dependent_product(h: &GMap, g: &GMap) -> Result<ExponentialDiagram> {
    let dp = dependent_product_object(h, g)?;
    let (e, e_to_s, g_prime) = pullback(g, &dp.to_base)?;
    let f_prime = GMap::raw(
        e.clone(),
        h.source().clone(),
        (0..e.len()).map(|z| dp.sections[g_prime.apply(z)].1[dp.pos_in_fiber[e_to_s.apply(z)]]).collect(),
    );
    Ok(ExponentialDiagram {
        g: g.clone(),
        h: h.clone(),
        dependent_product: dp.object,
        sections: dp.sections,
        h_prime: dp.to_base,
        pullback: e,
        e_to_s,
        f_prime,
        g_prime,
    })
}

fn cartesian(opts: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for o in opts {
        let mut next = Vec::with_capacity(out.len() * o.len());
        for prefix in &out {
            for &c in o.iter() {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Restricts `f` to invariant subsets `xs ⊂ source` and `ys ⊂ target` (given with their inclusions).
fn restrict(f: &GMap, xs: &GMap, ys: &GMap) -> GMap {
    let mut pos = vec![usize::MAX; ys.target().len()];
    for (i, &y) in ys.graph().iter().enumerate() {
        pos[y] = i;
    }
    let map = xs.graph().iter().map(|&x| pos[f.apply(x)]).collect();
    GMap::raw(xs.source().clone(), ys.source().clone(), map)
}

/// One graded piece of the norm-of-sum diagram.
#[derive(Clone, Debug)]
pub struct NormSumPiece {
    pub k: usize,
    /// `T_k` and its inclusion into the dependent product.
    pub t: GSet,
    pub t_incl: GMap,
    /// `T_k → G/K`, the transfer leg.
    pub f: GMap,
    /// The part of `G/H ×_{G/K} T_k` inside the pullback.
    pub e: GSet,
    /// `E_k → T_k`, the norm leg.
    pub g: GMap,
    /// `E_k → G/H ⊔ G/H`, the restriction leg.
    pub h: GMap,
    /// `T'_k = {(x, f) | f(x) = 1}` and its projection to `T_k`.
    pub cover: GSet,
    pub cover_map: GMap,
}

/// The diagram computing `N_H^K(a + b)`, graded by the number of points sent to the second summand.
#[derive(Clone, Debug)]
pub struct NormSumDiagram {
    pub h: SubgroupId,
    pub k: SubgroupId,
    pub exp: ExponentialDiagram,
    /// Degree of each point of the dependent product.
    pub degree: Vec<usize>,
    pub pieces: Vec<NormSumPiece>,
}

impl NormSumDiagram {
    /// `ε(x, f) = (x, f(x))` viewed as a map to `G/H ⊔ G/H`.
    pub fn epsilon(&self) -> &GMap {
        &self.exp.f_prime
    }

    /// The value `f(x)` of a point of the dependent product at `x ∈ G/H` (over the right base point).
    pub fn value(&self, f: usize, x: usize) -> Option<usize> {
        let n = self.exp.h.target().len();
        let fib = self.exp.g.fiber(self.exp.sections[f].0);
        fib.iter().position(|&y| y == x).map(|i| self.exp.sections[f].1[i] / n)
    }
}

/// `F_{G/K}(G/H, {0,1}) = Π_π ∇` for `π: G/H → G/K`, with its grading and covers.
pub fn norm_sum_diagram(group: &Arc<FiniteGroup>, h: SubgroupId, k: SubgroupId) -> Result<NormSumDiagram> {
    if !group.is_subgroup_of(h, k) {
        return Err(Error::Invalid(format!(
            "{} is not a subgroup of {}",
            group.subgroup_label(h),
            group.subgroup_label(k)
        )));
    }
    let gh = GSet::coset_space(group, h);
    let n = gh.len();
    let fold = GMap::fold(&gh, 2);
    let proj = GMap::projection(group, h, k);
    let exp = dependent_product(&fold, &proj)?;
    let degree: Vec<usize> = exp.sections.iter().map(|(_, s)| s.iter().filter(|&&v| v >= n).count()).collect();
    let index = group.index(h, k);
    let mut pieces = Vec::with_capacity(index + 1);
    for deg in 0..=index {
        let pts: Vec<usize> = (0..degree.len()).filter(|&p| degree[p] == deg).collect();
        let (t, t_incl) = exp.dependent_product.subset(&pts)?;
        let f = t_incl.then(&exp.h_prime)?;
        let epts: Vec<usize> = (0..exp.pullback.len()).filter(|&z| degree[exp.g_prime.apply(z)] == deg).collect();
        let (e, e_incl) = exp.pullback.subset(&epts)?;
        let g = restrict(&exp.g_prime, &e_incl, &t_incl);
        let hmap = e_incl.then(&exp.f_prime)?;
        let cpts: Vec<usize> = epts.iter().copied().filter(|&z| exp.f_prime.apply(z) >= n).collect();
        let (cover, c_incl) = exp.pullback.subset(&cpts)?;
        let cover_map = restrict(&exp.g_prime, &c_incl, &t_incl);
        pieces.push(NormSumPiece { k: deg, t, t_incl, f, e, g, h: hmap, cover, cover_map });
    }
    Ok(NormSumDiagram { h, k, exp, degree, pieces })
}

/// `D = G/H ×_{G/K} G/H − Δ` with its two projections to `G/H`.
#[derive(Clone, Debug)]
pub struct OffDiagonal {
    /// The concrete subgroup of `K` used for `H`.
    pub h: SubgroupId,
    pub k: SubgroupId,
    pub d: GSet,
    pub d1: GMap,
    pub d2: GMap,
}

/// If `h ≤ k` it is used as is; otherwise the least conjugate of `h` inside `k`.
pub fn off_diagonal(group: &Arc<FiniteGroup>, h: SubgroupId, k: SubgroupId) -> Result<OffDiagonal> {
    let h = if group.is_subgroup_of(h, k) {
        h
    } else {
        group
            .containment_witness(h, k)
            .ok_or_else(|| {
                Error::Invalid(format!(
                    "{} is not subconjugate to {}",
                    group.subgroup_label(h),
                    group.subgroup_label(k)
                ))
            })?
            .0
    };
    let proj = GMap::projection(group, h, k);
    let (sq, p1, p2) = pullback(&proj, &proj)?;
    let pts: Vec<usize> = (0..sq.len()).filter(|&z| p1.apply(z) != p2.apply(z)).collect();
    let (d, incl) = sq.subset(&pts)?;
    let d1 = incl.then(&p1)?;
    let d2 = incl.then(&p2)?;
    Ok(OffDiagonal { h, k, d, d1, d2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_and_point(group: &Arc<FiniteGroup>) -> (GSet, GMap) {
        let free = GSet::coset_space(group, group.trivial_subgroup());
        let pi = GMap::to_point(&free);
        (free, pi)
    }

    #[test]
    fn pullback_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let (free, pi) = free_and_point(&c2);
        let (p, _, _) = pullback(&pi, &pi).unwrap();
        assert_eq!(p.len(), 4);
        let d = p.orbits();
        assert_eq!(d.orbits.len(), 2);
        assert!(d.orbits.iter().all(|o| o.stabilizer == c2.trivial_subgroup()));
        let (q, _, p2) = pullback(&GMap::identity(pi.target()), &pi).unwrap();
        assert!(q.is_isomorphic(&free));
        assert!(p2.is_bijective());
        let empty = GMap::to_point(&GSet::empty(&c2));
        assert!(pullback(&empty, &pi).unwrap().0.is_empty());
        assert!(pullback(&pi, &GMap::identity(&free)).is_err());
    }

    /// Brute-force cone check: every pair of maps agreeing on Z factors uniquely.
    #[test]
    fn pullback_universal_property() {
        let s3 = FiniteGroup::symmetric(3);
        let c3 = s3.classes()[2].representative;
        let f = GMap::projection(&s3, 0, c3);
        let g = GMap::projection(&s3, 0, c3);
        let (p, p1, p2) = pullback(&f, &g).unwrap();
        let w = GSet::coset_space(&s3, 0);
        for a in 0..f.source().len() {
            for b in 0..g.source().len() {
                if f.apply(a) != g.apply(b) {
                    continue;
                }
                let d = w.orbits();
                let u = GMap::extend_from_orbits(&w, f.source(), &d, &[a]).unwrap();
                let v = GMap::extend_from_orbits(&w, g.source(), &d, &[b]).unwrap();
                let factor: Vec<usize> = (0..p.len()).filter(|&z| p1.apply(z) == a && p2.apply(z) == b).collect();
                assert_eq!(factor.len(), 1);
                let m = GMap::extend_from_orbits(&w, &p, &d, &factor).unwrap();
                assert_eq!(m.then(&p1).unwrap(), u);
                assert_eq!(m.then(&p2).unwrap(), v);
            }
        }
    }

    #[test]
    fn norm_of_sum_dependent_product() {
        let c2 = FiniteGroup::cyclic(2);
        let (free, pi) = free_and_point(&c2);
        let exp = dependent_product(&GMap::fold(&free, 2), &pi).unwrap();
        let d = exp.dependent_product.orbits();
        assert_eq!(exp.dependent_product.len(), 4);
        assert_eq!(d.summary(&c2), vec![(0, 1), (1, 2)]);
        let id = dependent_product(&GMap::identity(&free), &pi).unwrap();
        assert_eq!(id.dependent_product.len(), 1);
        let none = GMap::new(GSet::empty(&c2), free.clone(), vec![]).unwrap();
        assert!(dependent_product(&none, &pi).unwrap().dependent_product.is_empty());
    }

    /// `#Hom_{/B}(X, A)` counted orbit by orbit.
    fn count_maps_over(x: &GMap, a: &GMap) -> usize {
        let src = x.source();
        let group = src.group();
        src.orbits()
            .orbits
            .iter()
            .map(|o| {
                (0..a.source().len())
                    .filter(|&y| {
                        a.apply(y) == x.apply(o.rep)
                            && group.subgroup(o.stabilizer).elements.iter().all(|&s| a.source().act(s, y) == y)
                    })
                    .count()
            })
            .product()
    }

    #[test]
    fn dependent_product_adjunction() {
        for group in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
            let subs: Vec<SubgroupId> = group.classes().iter().map(|c| c.representative).collect();
            let top = group.whole_group();
            for &hs in &subs {
                let g = GMap::projection(&group, hs, top);
                let s = g.source().clone();
                for &ha in &subs {
                    // A = G/ha ⊔ S over S, h = [any map G/ha → S (if one exists), id]
                    let to_s = match group.containment_witness(ha, hs) {
                        Some((c, x)) if c == ha && x == group.identity() => GMap::projection(&group, ha, hs),
                        _ => continue,
                    };
                    let h = to_s.copair(&GMap::identity(&s)).unwrap();
                    let exp = dependent_product(&h, &g).unwrap();
                    for &hy in &subs {
                        let y = GMap::to_point(&GSet::coset_space(&group, hy));
                        if y.source().len() * s.len() > 64 {
                            continue;
                        }
                        let (_, gy_to_s, _) = pullback(&g, &y).unwrap();
                        let lhs = count_maps_over(&gy_to_s, &h);
                        let rhs = count_maps_over(&y, &exp.h_prime);
                        assert_eq!(lhs, rhs, "{} {hs} {ha} {hy}", group.name());
                    }
                }
            }
        }
    }

    #[test]
    fn norm_sum_grading() {
        let c2 = FiniteGroup::cyclic(2);
        let nsd = norm_sum_diagram(&c2, 0, c2.whole_group()).unwrap();
        let sizes: Vec<usize> = nsd.pieces.iter().map(|p| p.t.len()).collect();
        assert_eq!(sizes, [1, 2, 1]);
        assert!(nsd.pieces[1].cover_map.is_bijective());
        let p2 = &nsd.pieces[2];
        assert_eq!(p2.cover.len(), 2);
        assert_eq!(p2.cover_map.fiber(0).len(), 2);

        let c3 = FiniteGroup::cyclic(3);
        let nsd = norm_sum_diagram(&c3, 0, c3.whole_group()).unwrap();
        let t1 = &nsd.pieces[1].t;
        assert_eq!(t1.len(), 3);
        let d = t1.orbits();
        assert_eq!(d.orbits.len(), 1);
        assert_eq!(d.orbits[0].stabilizer, 0);
        assert_eq!(nsd.pieces.iter().map(|p| p.t.len()).sum::<usize>(), 8);

        let whole = norm_sum_diagram(&c3, c3.whole_group(), c3.whole_group()).unwrap();
        assert_eq!(whole.pieces.len(), 2);
        assert!(whole.pieces.iter().all(|p| p.t.len() == 1));
    }

    #[test]
    fn norm_sum_invariants() {
        for group in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
            for c in group.classes() {
                let nsd = norm_sum_diagram(&group, c.representative, group.whole_group()).unwrap();
                let idx = group.index(c.representative, group.whole_group());
                let total: usize = nsd.pieces.iter().map(|p| p.t.len()).sum();
                assert_eq!(total, 1 << idx);
                let pi = &nsd.exp.dependent_product;
                for f in 0..pi.len() {
                    for g in group.elements() {
                        assert_eq!(nsd.degree[pi.act(g, f)], nsd.degree[f]);
                    }
                }
                for p in &nsd.pieces {
                    for y in 0..p.t.len() {
                        assert_eq!(p.cover_map.fiber(y).len(), p.k);
                    }
                }
                // epsilon(x, f) = (x, f(x))
                let eps = nsd.epsilon();
                let n = idx;
                for z in 0..nsd.exp.pullback.len() {
                    let x = nsd.exp.e_to_s.apply(z);
                    let f = nsd.exp.g_prime.apply(z);
                    assert_eq!(eps.apply(z), x + n * nsd.value(f, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn off_diagonal_examples() {
        let c2 = FiniteGroup::cyclic(2);
        let od = off_diagonal(&c2, 0, c2.whole_group()).unwrap();
        assert_eq!(od.d.len(), 2);
        assert_eq!(od.d.orbits().orbits.len(), 1);
        assert!(od.d1.is_bijective() && od.d2.is_bijective());
        assert_ne!(od.d1, od.d2);
        assert!(off_diagonal(&c2, 1, 1).unwrap().d.is_empty());

        let c3 = FiniteGroup::cyclic(3);
        let od = off_diagonal(&c3, 0, c3.whole_group()).unwrap();
        assert_eq!(od.d.len(), 6);
        let d = od.d.orbits();
        assert_eq!(d.orbits.len(), 2);
        assert!(d.orbits.iter().all(|o| o.stabilizer == 0));

        let s3 = FiniteGroup::symmetric(3);
        let c2 = s3.classes()[1].representative;
        let c3 = s3.classes()[2].representative;
        assert!(off_diagonal(&s3, c2, c3).is_err());
    }
}
