//! Hom sets between augmented Tambara functors as a coefficient system over the subgroups.

use std::sync::Arc;

use super::change::SubgroupRestriction;
use super::hom::TambaraHom;
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, SubgroupId};
use crate::mackey::{hom_space, MackeyHom};
use crate::zmod::{enum_cap, Matrix};

/// Augmented objects `C → R` under an optional base `S → C`.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub augmentation: TambaraHom,
    pub structure: Option<TambaraHom>,
}

/// `H ↦ Hom_{S-Tamb/R}(i_H^* C, i_H^* B)` with restriction maps.
#[derive(Clone, Debug)]
pub struct HomCoefficientSystem {
    pub group: Arc<FiniteGroup>,
    /// Per subgroup of `G`: the enumerated maps, as Mackey maps between the restricted functors.
    pub values: Vec<Vec<MackeyHom>>,
    /// `restriction[k][h][i]`: index in `values[h]` of the restriction of `values[k][i]`, for `H ≤ K`.
    pub restriction: Vec<Vec<Option<Vec<usize>>>>,
}

impl HomCoefficientSystem {
    pub fn cardinality(&self, h: SubgroupId) -> usize {
        self.values[h].len()
    }
}

fn restrict_hom(s: &SubgroupRestriction, f: &TambaraHom) -> TambaraHom {
    let src = Arc::new(s.tambara(&f.source));
    let tgt = Arc::new(s.tambara(&f.target));
    s.tambara_hom(f, &src, &tgt)
}

/// Enumerates every Tambara map `C → B` over `R` (and `S`) at each level; all levels of `C` and
/// `B` must be finite.
pub fn hom_tambara(c: &Augmented, b: &Augmented, grid_bound: Option<usize>) -> Result<HomCoefficientSystem> {
    let g = c.augmentation.source.group().clone();
    let n = g.num_subgroups();
    let (cf, bf) = (&c.augmentation.source, &b.augmentation.source);
    for h in 0..n {
        if !cf.level(h).is_finite() || !bf.level(h).is_finite() {
            return Err(Error::Infinite(format!(
                "level {} is infinite; hom sets are enumerated exactly only for finite levels",
                g.subgroup_label(h)
            )));
        }
    }
    let cap = enum_cap();
    let mut values = Vec::with_capacity(n);
    let mut restrictions = Vec::with_capacity(n);
    for h in 0..n {
        let s = SubgroupRestriction::new(&g, h);
        let (ce, be) = (restrict_hom(&s, &c.augmentation), restrict_hom(&s, &b.augmentation));
        let base = match (&c.structure, &b.structure) {
            (Some(x), Some(y)) => Some((restrict_hom(&s, x), restrict_hom(&s, y))),
            (None, None) => None,
            _ => return Err(Error::Invalid("either both or neither object carry a base".into())),
        };
        let homs = hom_space(ce.source.mackey(), be.source.mackey());
        let mut found = Vec::new();
        for coords in homs.group().elements(cap)? {
            let f = TambaraHom::new(ce.source.clone(), be.source.clone(), homs.hom(&coords).maps);
            if !f.then(&be).same_as(&ce) {
                continue;
            }
            if let Some((sc, sb)) = &base {
                if !sc.then(&f).same_as(sb) {
                    continue;
                }
            }
            if f.check(grid_bound).passed() {
                found.push(f.mackey);
            }
        }
        values.push(found);
        restrictions.push(s);
    }
    let mut restriction = vec![vec![None; n]; n];
    for k in 0..n {
        for h in g.subgroups_of(k) {
            let (sk, sh) = (&restrictions[k], &restrictions[h]);
            let pos: Vec<usize> = sh
                .levels
                .iter()
                .map(|l| sk.levels.iter().position(|m| m == l).expect("subgroups of H lie in K"))
                .collect();
            let mut idx = Vec::with_capacity(values[k].len());
            for f in &values[k] {
                let maps: Vec<Matrix> = pos.iter().map(|&p| f.map(p).clone()).collect();
                let i = values[h]
                    .iter()
                    .position(|x| maps.iter().enumerate().all(|(l, m)| x.target.level(l).same_map(x.map(l), m)));
                match i {
                    Some(i) => idx.push(i),
                    None => return Err(Error::Invalid("restriction of a map over R is not a map over R".into())),
                }
            }
            restriction[k][h] = Some(idx);
        }
    }
    Ok(HomCoefficientSystem { group: g, values, restriction })
}
