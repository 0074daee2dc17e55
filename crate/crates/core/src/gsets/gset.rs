//! Finite G-sets as explicit action tables, and equivariant maps between them.

use std::fmt;
use std::sync::Arc;

use super::group::{FiniteGroup, SubgroupId};
use crate::error::{Error, Result};

/// A finite G-set on points `0..len`; `action[g][x]` is `g·x`.
#[derive(Clone)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    action: Arc<Vec<Vec<usize>>>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.orbits();
        let parts: Vec<String> =
            d.orbits.iter().map(|o| format!("G/{}", self.group.subgroup_label(o.stabilizer))).collect();
        write!(f, "GSet[{}]({})", self.len(), parts.join(" + "))
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group) && self.action == other.action
    }
}

impl Eq for GSet {}

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Least point of the orbit.
    pub rep: usize,
    pub stabilizer: SubgroupId,
    pub points: Vec<usize>,
}

/// Orbits sorted by least point, with `transporter[x] · rep(orbit_of[x]) == x`.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
    pub orbit_of: Vec<usize>,
    pub transporter: Vec<usize>,
}

impl OrbitDecomposition {
    /// `(class index, multiplicity)` pairs, sorted by class index.
    pub fn summary(&self, group: &FiniteGroup) -> Vec<(usize, usize)> {
        let mut counts = vec![0usize; group.classes().len()];
        for o in &self.orbits {
            counts[group.class_index(o.stabilizer)] += 1;
        }
        counts.into_iter().enumerate().filter(|&(_, m)| m > 0).collect()
    }
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        if action.len() != n {
            return Err(Error::InvalidGSet(format!("action table has {} rows, group has order {n}", action.len())));
        }
        let len = action[0].len();
        if action.iter().any(|r| r.len() != len || r.iter().any(|&y| y >= len)) {
            return Err(Error::InvalidGSet("action table is ragged or leaves the point set".into()));
        }
        let e = group.identity();
        if (0..len).any(|x| action[e][x] != x) {
            return Err(Error::InvalidGSet("identity does not act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                if let Some(x) = (0..len).find(|&x| action[gh][x] != action[g][action[h][x]]) {
                    return Err(Error::InvalidGSet(format!(
                        "compatibility fails: ({}{})·{x} != {}·({}·{x})",
                        group.element_name(g),
                        group.element_name(h),
                        group.element_name(g),
                        group.element_name(h)
                    )));
                }
            }
        }
        Ok(Self { group, action: Arc::new(action) })
    }

    fn raw(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Self {
        debug_assert!(GSet::new(group.clone(), action.clone()).is_ok());
        Self { group, action: Arc::new(action) }
    }

    /// Builds a G-set from a point-level action function.
    pub fn from_fn(group: &Arc<FiniteGroup>, len: usize, act: impl Fn(usize, usize) -> usize) -> Self {
        let action = group.elements().map(|g| (0..len).map(|x| act(g, x)).collect()).collect();
        Self::raw(group.clone(), action)
    }

    pub fn empty(group: &Arc<FiniteGroup>) -> Self {
        Self::from_fn(group, 0, |_, x| x)
    }

    /// The one-point G-set `G/G`.
    pub fn point(group: &Arc<FiniteGroup>) -> Self {
        Self::from_fn(group, 1, |_, x| x)
    }

    /// `n` fixed points.
    pub fn trivial(group: &Arc<FiniteGroup>, n: usize) -> Self {
        Self::from_fn(group, n, |_, x| x)
    }

    /// `G/H`; point 0 is the coset `eH`, the rest ordered by least element.
    pub fn coset_space(group: &Arc<FiniteGroup>, h: SubgroupId) -> Self {
        let (_, coset_of) = coset_table(group, h);
        let reps = group.left_coset_reps(group.whole_group(), h);
        Self::from_fn(group, reps.len(), |g, x| coset_of[group.mul(g, reps[x])])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.action[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn stabilizer(&self, x: usize) -> SubgroupId {
        let e: Vec<usize> = self.group.elements().filter(|&g| self.act(g, x) == x).collect();
        self.group.subgroup_id(&e).expect("stabilizers are subgroups")
    }

    pub fn orbits(&self) -> OrbitDecomposition {
        let n = self.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut transporter = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            let mut points = Vec::new();
            for g in self.group.elements() {
                let y = self.act(g, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = idx;
                    transporter[y] = g;
                    points.push(y);
                }
            }
            points.sort_unstable();
            orbits.push(Orbit { rep: x, stabilizer: self.stabilizer(x), points });
        }
        OrbitDecomposition { orbits, orbit_of, transporter }
    }

    /// The standard form `⨿ G/Stab(rep_i)` and an isomorphism onto it.
    pub fn standard_form(&self) -> (GSet, GMap) {
        let d = self.orbits();
        let parts: Vec<GSet> = d.orbits.iter().map(|o| GSet::coset_space(&self.group, o.stabilizer)).collect();
        let refs: Vec<&GSet> = parts.iter().collect();
        let (sum, inj) = GSet::disjoint_union(&self.group, &refs);
        let images: Vec<usize> = inj.iter().map(|i| i.apply(0)).collect();
        let iso = GMap::extend_from_orbits(self, &sum, &d, &images).expect("rep has the stabilizer of eH");
        (sum, iso)
    }

    pub fn disjoint_union(group: &Arc<FiniteGroup>, parts: &[&GSet]) -> (GSet, Vec<GMap>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0;
        for p in parts {
            offsets.push(total);
            total += p.len();
        }
        let action = group
            .elements()
            .map(|g| {
                parts.iter().zip(&offsets).flat_map(|(p, &o)| (0..p.len()).map(move |x| o + p.act(g, x))).collect()
            })
            .collect();
        let sum = GSet::raw(group.clone(), action);
        let inj = parts
            .iter()
            .zip(&offsets)
            .map(|(p, &o)| GMap::raw((*p).clone(), sum.clone(), (0..p.len()).map(|x| o + x).collect()))
            .collect();
        (sum, inj)
    }

    /// The underlying `H`-set, for `H` given as a group with its embedding into `G`.
    pub fn restrict_group(&self, group: &Arc<FiniteGroup>, embedding: &[usize]) -> GSet {
        GSet::from_fn(group, self.len(), |h, x| self.act(embedding[h], x))
    }

    /// `X × Y` with points `(x, y) ↦ x * |Y| + y`.
    pub fn product(&self, other: &GSet) -> (GSet, GMap, GMap) {
        let m = other.len();
        let p = GSet::from_fn(&self.group, self.len() * m, |g, z| self.act(g, z / m) * m + other.act(g, z % m));
        let p1 = GMap::raw(p.clone(), self.clone(), (0..p.len()).map(|z| z / m).collect());
        let p2 = GMap::raw(p.clone(), other.clone(), (0..p.len()).map(|z| z % m).collect());
        (p, p1, p2)
    }

    /// The sub-G-set on `points` (in the given order) with its inclusion.
    pub fn subset(&self, points: &[usize]) -> Result<(GSet, GMap)> {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in points.iter().enumerate() {
            pos[x] = i;
        }
        let mut action = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let mut row = Vec::with_capacity(points.len());
            for &x in points {
                let y = pos[self.act(g, x)];
                if y == usize::MAX {
                    return Err(Error::InvalidGSet("subset is not closed under the action".into()));
                }
                row.push(y);
            }
            action.push(row);
        }
        let sub = GSet::raw(self.group.clone(), action);
        let incl = GMap::raw(sub.clone(), self.clone(), points.to_vec());
        Ok((sub, incl))
    }

    /// Some isomorphism `self → other`, if one exists.
    pub fn find_isomorphism(&self, other: &GSet) -> Option<GMap> {
        if self.len() != other.len() {
            return None;
        }
        let d = self.orbits();
        let od = other.orbits();
        let mut used = vec![false; od.orbits.len()];
        let mut images = Vec::with_capacity(d.orbits.len());
        for o in &d.orbits {
            let mut found = None;
            for (j, p) in od.orbits.iter().enumerate() {
                if used[j] {
                    continue;
                }
                if let Some(&y) = p.points.iter().find(|&&y| other.stabilizer(y) == o.stabilizer) {
                    found = Some((j, y));
                    break;
                }
            }
            let (j, y) = found?;
            used[j] = true;
            images.push(y);
        }
        GMap::extend_from_orbits(self, other, &d, &images).ok()
    }

    pub fn is_isomorphic(&self, other: &GSet) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

/// Coset reps of `G/H` (identity first) and, for each element, the index of its coset.
pub(crate) fn coset_table(group: &FiniteGroup, h: SubgroupId) -> (Vec<usize>, Vec<usize>) {
    let reps = group.left_coset_reps(group.whole_group(), h);
    let mut coset_of = vec![usize::MAX; group.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &b in &group.subgroup(h).elements {
            coset_of[group.mul(r, b)] = i;
        }
    }
    (reps, coset_of)
}

/// An equivariant map of finite G-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    source: GSet,
    target: GSet,
    map: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<Self> {
        if !Arc::ptr_eq(source.group(), target.group()) && **source.group() != **target.group() {
            return Err(Error::NotEquivariant("source and target are over different groups".into()));
        }
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::NotEquivariant("graph does not define a function between the point sets".into()));
        }
        for g in source.group().elements() {
            for x in 0..source.len() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!(
                        "f({}·{x}) != {}·f({x})",
                        source.group().element_name(g),
                        source.group().element_name(g)
                    )));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub(crate) fn raw(source: GSet, target: GSet, map: Vec<usize>) -> Self {
        debug_assert!(GMap::new(source.clone(), target.clone(), map.clone()).is_ok());
        Self { source, target, map }
    }

    /// The equivariant map sending orbit representative `i` of `source` to `images[i]`.
    pub fn extend_from_orbits(source: &GSet, target: &GSet, d: &OrbitDecomposition, images: &[usize]) -> Result<Self> {
        let g = source.group();
        for (o, &y) in d.orbits.iter().zip(images) {
            if g.subgroup(o.stabilizer).elements.iter().any(|&s| target.act(s, y) != y) {
                return Err(Error::NotEquivariant(format!(
                    "image of orbit rep {} is not fixed by its stabilizer",
                    o.rep
                )));
            }
        }
        let map = (0..source.len()).map(|x| target.act(d.transporter[x], images[d.orbit_of[x]])).collect();
        Ok(Self::raw(source.clone(), target.clone(), map))
    }

    pub fn identity(x: &GSet) -> Self {
        Self::raw(x.clone(), x.clone(), (0..x.len()).collect())
    }

    /// The unique map to the one-point G-set.
    pub fn to_point(x: &GSet) -> Self {
        Self::raw(x.clone(), GSet::point(x.group()), vec![0; x.len()])
    }

    /// The map `G/H → G/K` sending `eH ↦ eK`, for `H ≤ K`.
    pub fn projection(group: &Arc<FiniteGroup>, h: SubgroupId, k: SubgroupId) -> Self {
        assert!(group.is_subgroup_of(h, k), "projection needs H <= K");
        let gh = GSet::coset_space(group, h);
        let gk = GSet::coset_space(group, k);
        let (reps, _) = coset_table(group, h);
        let (_, kof) = coset_table(group, k);
        Self::raw(gh, gk, reps.iter().map(|&r| kof[r]).collect())
    }

    /// The isomorphism `G/H → G/gHg^-1`, `xH ↦ xg^-1·gHg^-1`.
    pub fn conjugation(group: &Arc<FiniteGroup>, g: usize, h: SubgroupId) -> Self {
        let src = GSet::coset_space(group, h);
        let tgt = GSet::coset_space(group, group.conj_subgroup(g, h));
        let y = tgt.act(group.inv(g), 0);
        let d = src.orbits();
        Self::extend_from_orbits(&src, &tgt, &d, &[y]).expect("conjugation is equivariant")
    }

    /// `id_T × f: T × X → T × Y`.
    pub fn product_with(t: &GSet, f: &GMap) -> Self {
        let (src, _, _) = t.product(f.source());
        let (tgt, _, _) = t.product(f.target());
        let (m, n) = (f.source().len(), f.target().len());
        Self::raw(src, tgt, (0..t.len() * m).map(|z| (z / m) * n + f.apply(z % m)).collect())
    }

    /// `f × id_X: T × X → T' × X`.
    pub fn times(&self, x: &GSet) -> Self {
        let (src, _, _) = self.source.product(x);
        let (tgt, _, _) = self.target.product(x);
        let m = x.len();
        Self::raw(src, tgt, (0..self.source.len() * m).map(|z| self.apply(z / m) * m + z % m).collect())
    }

    /// The same map between the restricted `H`-sets.
    pub fn restrict_group(&self, group: &Arc<FiniteGroup>, embedding: &[usize]) -> Self {
        Self::raw(
            self.source.restrict_group(group, embedding),
            self.target.restrict_group(group, embedding),
            self.map.clone(),
        )
    }

    /// The fold map `X ⊔ X ⊔ ... → X` with `copies` summands.
    pub fn fold(x: &GSet, copies: usize) -> Self {
        let parts: Vec<&GSet> = std::iter::repeat_n(x, copies).collect();
        let (sum, _) = GSet::disjoint_union(x.group(), &parts);
        let n = x.len();
        Self::raw(sum, x.clone(), (0..n * copies).map(|z| z % n).collect())
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn graph(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GMap) -> Result<GMap> {
        if self.target != other.source {
            return Err(Error::NotComposable("target of the first map is not the source of the second".into()));
        }
        Ok(Self::raw(self.source.clone(), other.target.clone(), self.map.iter().map(|&y| other.map[y]).collect()))
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&x| self.map[x] == y).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(Self::raw(self.target.clone(), self.source.clone(), inv))
    }

    /// `self ⊔ other : X ⊔ X' → Y ⊔ Y'`.
    pub fn coproduct(&self, other: &GMap) -> GMap {
        let group = self.source.group();
        let (s, _) = GSet::disjoint_union(group, &[&self.source, &other.source]);
        let (t, _) = GSet::disjoint_union(group, &[&self.target, &other.target]);
        let off = self.target.len();
        let map = self.map.iter().copied().chain(other.map.iter().map(|&y| y + off)).collect();
        Self::raw(s, t, map)
    }

    /// `[self, other] : X ⊔ X' → Y`.
    pub fn copair(&self, other: &GMap) -> Result<GMap> {
        if self.target != other.target {
            return Err(Error::NotComposable("copairing needs a common target".into()));
        }
        let (s, _) = GSet::disjoint_union(self.source.group(), &[&self.source, &other.source]);
        let map = self.map.iter().chain(&other.map).copied().collect();
        Ok(Self::raw(s, self.target.clone(), map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_space_is_transitive() {
        let s3 = FiniteGroup::symmetric(3);
        for h in 0..s3.num_subgroups() {
            let x = GSet::coset_space(&s3, h);
            let d = x.orbits();
            assert_eq!(d.orbits.len(), 1);
            assert_eq!(d.orbits[0].stabilizer, h);
            assert_eq!(x.len(), s3.index(h, s3.whole_group()));
        }
    }

    #[test]
    fn functions_on_c2_orbits() {
        // F(C2, {0,1}) with (g·f)(x) = f(g^-1 x); f encoded as bitmask over C2 = {0, 1}
        let c2 = FiniteGroup::cyclic(2);
        let x = GSet::from_fn(&c2, 4, |g, f| if g == 0 { f } else { ((f & 1) << 1) | (f >> 1) });
        let d = x.orbits();
        let summary = d.summary(&c2);
        // class 0 = e, class 1 = C2
        assert_eq!(summary, vec![(0, 1), (1, 2)]);
        assert!(GSet::empty(&c2).orbits().orbits.is_empty());
    }

    #[test]
    fn standard_form_is_iso() {
        let s3 = FiniteGroup::symmetric(3);
        let c2 = s3.classes()[1].representative;
        let (x, _, _) = GSet::coset_space(&s3, c2).product(&GSet::coset_space(&s3, c2));
        let (std, iso) = x.standard_form();
        assert!(iso.is_bijective());
        assert_eq!(std.len(), 9);
        assert!(x.is_isomorphic(&std));
    }

    #[test]
    fn non_equivariant_map_rejected() {
        let c2 = FiniteGroup::cyclic(2);
        let free = GSet::coset_space(&c2, 0);
        let two = GSet::trivial(&c2, 2);
        assert!(GMap::new(free.clone(), two, vec![0, 1]).is_err());
        assert!(GMap::new(free.clone(), free, vec![1, 0]).is_ok());
    }

    #[test]
    fn bad_action_rejected() {
        let c3 = FiniteGroup::cyclic(3);
        let err = GSet::new(c3, vec![vec![0, 1], vec![1, 0], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("compatibility"), "{err}");
    }
}
