//! Random composable words in the generators `R_f`, `N_f`, `T_f`, and the functoriality check
//! `eval(p ∘ q) = eval(p) ∘ eval(q)`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Bispan, Generator};
use crate::error::Result;
use crate::gsets::{FiniteGroup, GMap, GSet, SubgroupId};
use crate::report::Report;
use crate::tambara::TambaraFunctor;
use crate::zmod::Int;

#[derive(Clone, Copy, Debug)]
pub struct WordConfig {
    pub min_len: usize,
    pub max_len: usize,
    pub max_orbits: usize,
    /// Largest orbit `G/H` used, by number of points.
    pub max_index: usize,
    /// Coefficients of test elements are drawn from `-coeff..=coeff`.
    pub coeff: i64,
}

impl Default for WordConfig {
    fn default() -> Self {
        Self { min_len: 2, max_len: 3, max_orbits: 2, max_index: 4, coeff: 2 }
    }
}

fn allowed(g: &FiniteGroup, cfg: &WordConfig) -> Vec<SubgroupId> {
    (0..g.num_subgroups()).filter(|&h| g.index(h, g.whole_group()) <= cfg.max_index).collect()
}

fn union_of_orbits(g: &Arc<FiniteGroup>, subgroups: &[SubgroupId]) -> (GSet, Vec<usize>) {
    let parts: Vec<GSet> = subgroups.iter().map(|&h| GSet::coset_space(g, h)).collect();
    let refs: Vec<&GSet> = parts.iter().collect();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for p in &parts {
        offsets.push(acc);
        acc += p.len();
    }
    (GSet::disjoint_union(g, &refs).0, offsets)
}

fn random_gset<R: Rng>(g: &Arc<FiniteGroup>, rng: &mut R, cfg: &WordConfig) -> GSet {
    let pool = allowed(g, cfg);
    let k = rng.gen_range(1..=cfg.max_orbits);
    let hs: Vec<SubgroupId> = (0..k).map(|_| *pool.choose(rng).expect("G/G is always allowed")).collect();
    union_of_orbits(g, &hs).0
}

/// A random map out of `x`: each orbit `G/H` goes to some `G/K` with `K ≥ H`, orbits sometimes merging.
fn map_out<R: Rng>(x: &GSet, rng: &mut R, cfg: &WordConfig) -> GMap {
    let g = x.group().clone();
    let pool = allowed(&g, cfg);
    let d = x.orbits();
    let mut targets: Vec<SubgroupId> = Vec::new();
    let mut which = Vec::with_capacity(d.orbits.len());
    for o in &d.orbits {
        let over: Vec<SubgroupId> =
            pool.iter().copied().filter(|&k| k != o.stabilizer && g.is_subgroup_of(o.stabilizer, k)).collect();
        let k = match over.choose(rng) {
            Some(&k) if rng.gen_bool(0.7) => k,
            _ => o.stabilizer,
        };
        match targets.iter().position(|&t| t == k) {
            Some(i) if rng.gen_bool(0.5) => which.push(i),
            _ => {
                targets.push(k);
                which.push(targets.len() - 1);
            }
        }
    }
    let (y, offsets) = union_of_orbits(&g, &targets);
    let images: Vec<usize> = which.iter().map(|&i| offsets[i]).collect();
    GMap::extend_from_orbits(x, &y, &d, &images).expect("eK is fixed by H <= K")
}

/// A random map into `x` from a union of orbits `G/L` sent to points whose stabilizers contain `L`.
fn map_in<R: Rng>(x: &GSet, rng: &mut R, cfg: &WordConfig) -> GMap {
    let g = x.group().clone();
    let pool = allowed(&g, cfg);
    let k = rng.gen_range(1..=cfg.max_orbits);
    let mut subs = Vec::with_capacity(k);
    let mut images = Vec::with_capacity(k);
    for _ in 0..k {
        let p = rng.gen_range(0..x.len());
        let stab = x.stabilizer(p);
        let under: Vec<SubgroupId> = pool.iter().copied().filter(|&l| g.is_subgroup_of(l, stab)).collect();
        let pick = if rng.gen_bool(0.5) {
            under.iter().copied().filter(|&l| l != stab).collect::<Vec<_>>().choose(rng).copied()
        } else {
            None
        };
        match pick.or_else(|| under.choose(rng).copied()).as_ref() {
            Some(&l) => {
                subs.push(l);
                images.push(p);
            }
            None => continue,
        }
    }
    if subs.is_empty() {
        return GMap::identity(x);
    }
    let (s, _) = union_of_orbits(&g, &subs);
    let d = s.orbits();
    GMap::extend_from_orbits(&s, x, &d, &images).expect("stabilizers contain L")
}

/// A composable word `w[0], w[1], …`, applied in that order.
pub fn random_word<R: Rng>(g: &Arc<FiniteGroup>, rng: &mut R, cfg: &WordConfig) -> Vec<Bispan> {
    let mut cur = random_gset(g, rng, cfg);
    let len = rng.gen_range(cfg.min_len..=cfg.max_len);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let kind = *[Generator::R, Generator::N, Generator::T].choose(rng).expect("nonempty");
        let f = match kind {
            Generator::R => map_in(&cur, rng, cfg),
            _ => map_out(&cur, rng, cfg),
        };
        let b = Bispan::generator(kind, &f);
        cur = b.t().clone();
        out.push(b);
    }
    out
}

const FUNCTORIAL: &str = "evaluation is functorial on bispans";

/// Compares the composite of `word` with stepwise evaluation on a random element.
pub fn check_functoriality<R: Rng>(
    r: &TambaraFunctor,
    word: &[Bispan],
    rng: &mut R,
    cfg: &WordConfig,
) -> Result<Report> {
    let mut rep = Report::new();
    rep.declare("bispan.functoriality", FUNCTORIAL);
    let mut composite = word[0].clone();
    for q in &word[1..] {
        composite = q.compose(&composite)?;
    }
    let n = r.eval(word[0].s()).ngens();
    let x: Vec<Int> = (0..n).map(|_| Int::from(rng.gen_range(-cfg.coeff..=cfg.coeff))).collect();
    let mut stepwise = x.clone();
    for p in word {
        stepwise = r.eval_bispan(p, &stepwise)?;
    }
    let direct = r.eval_bispan(&composite, &x)?;
    let ok = r.eval(composite.t()).eq_elements(&direct, &stepwise);
    rep.record("bispan.functoriality", FUNCTORIAL, ok, || {
        let kinds: Vec<String> = word.iter().map(|b| format!("{:?}", b)).collect();
        format!("word {} at x = {:?}: composite gives {:?}, stepwise {:?}", kinds.join(" ; "), x, direct, stepwise)
    });
    Ok(rep)
}
