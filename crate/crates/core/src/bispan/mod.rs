//! Bispans `S ← U → V → T`: composition in normal form and isomorphism testing.

use std::fmt;

use crate::error::{Error, Result};
use crate::gsets::{dependent_product, pullback, GMap, GSet};

mod random;

pub use random::{check_functoriality, random_word, WordConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    R,
    N,
    T,
}

/// A bispan `S ←f− U −g→ V −h→ T`, read as `T_h ∘ N_g ∘ R_f` from `S` to `T`.
#[derive(Clone, PartialEq, Eq)]
pub struct Bispan {
    pub f: GMap,
    pub g: GMap,
    pub h: GMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubcatFlags {
    pub iso: bool,
    pub epi: bool,
    pub gr: bool,
}

impl fmt::Debug for Bispan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} <- {:?} -> {:?} -> {:?}]", self.s(), self.u(), self.v(), self.t())
    }
}

impl Bispan {
    pub fn new(f: GMap, g: GMap, h: GMap) -> Result<Self> {
        if f.source() != g.source() {
            return Err(Error::NotComposable("f and g must share the source U".into()));
        }
        if g.target() != h.source() {
            return Err(Error::NotComposable("g must land in the source of h".into()));
        }
        Ok(Self { f, g, h })
    }

    pub fn generator(kind: Generator, f: &GMap) -> Self {
        let s = f.source();
        let t = f.target();
        let (id_s, id_t) = (GMap::identity(s), GMap::identity(t));
        match kind {
            Generator::R => Self { f: f.clone(), g: id_s.clone(), h: id_s },
            Generator::N => Self { f: id_s, g: f.clone(), h: id_t },
            Generator::T => Self { f: id_s.clone(), g: id_s, h: f.clone() },
        }
    }

    pub fn identity(x: &GSet) -> Self {
        let id = GMap::identity(x);
        Self { f: id.clone(), g: id.clone(), h: id }
    }

    pub fn s(&self) -> &GSet {
        self.f.target()
    }

    pub fn u(&self) -> &GSet {
        self.f.source()
    }

    pub fn v(&self) -> &GSet {
        self.h.source()
    }

    pub fn t(&self) -> &GSet {
        self.h.target()
    }

    /// `self ∘ q`: first `q`, then `self`.
    pub fn compose(&self, q: &Bispan) -> Result<Bispan> {
        let h1 = if q.t() == self.s() {
            q.h.clone()
        } else {
            let iso = q.t().find_isomorphism(self.s()).ok_or_else(|| {
                Error::NotComposable("target of the first bispan is not isomorphic to the source of the second".into())
            })?;
            q.h.then(&iso)?
        };
        // R_{f2} T_{h1} = T_b R_a
        let (_p, a, b) = pullback(&h1, &self.f)?;
        // R_a N_{g1} = N_{q2} R_{q1}
        let (_s1, q1, q2) = pullback(&q.g, &a)?;
        // N_{g2} T_b = T_{h'} N_{g'} R_{f'}
        let exp = dependent_product(&b, &self.g)?;
        // R_{f'} N_{q2} = N_{e2} R_{e1}
        let (_e, e1, e2) = pullback(&q2, &exp.f_prime)?;
        let f = e1.then(&q1)?.then(&q.f)?;
        let g = e2.then(&exp.g_prime)?;
        let h = exp.h_prime.then(&self.h)?;
        Bispan::new(f, g, h)
    }

    pub fn flags(&self) -> SubcatFlags {
        let g = &self.g;
        let iso = g.is_bijective();
        let epi = g.is_surjective();
        let gr = (0..g.source().len()).all(|x| g.source().stabilizer(x) == g.target().stabilizer(g.apply(x)));
        SubcatFlags { iso, epi, gr }
    }

    /// Whether there are isomorphisms `U ≅ U'`, `V ≅ V'` commuting with all three legs.
    pub fn iso_equal(&self, other: &Bispan) -> bool {
        if self.s() != other.s() || self.t() != other.t() {
            return false;
        }
        if self.u().len() != other.u().len() || self.v().len() != other.v().len() {
            return false;
        }
        let dv = self.v().orbits();
        let mut images = vec![usize::MAX; dv.orbits.len()];
        let mut used = vec![false; other.v().orbits().orbits.len()];
        self.search_v(other, &dv, 0, &mut images, &mut used)
    }

    fn search_v(
        &self,
        other: &Bispan,
        dv: &crate::gsets::OrbitDecomposition,
        i: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == dv.orbits.len() {
            let beta = GMap::extend_from_orbits(self.v(), other.v(), dv, images).expect("stabilizers match");
            return self.u_matches(other, &beta);
        }
        let o = &dv.orbits[i];
        let ov = other.v();
        let od = ov.orbits();
        for y in 0..ov.len() {
            let j = od.orbit_of[y];
            if used[j] || ov.stabilizer(y) != o.stabilizer || other.h.apply(y) != self.h.apply(o.rep) {
                continue;
            }
            used[j] = true;
            images[i] = y;
            if self.search_v(other, dv, i + 1, images, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }

    /// Decides whether `U` and `U'` are isomorphic over `S × V'` (via `beta` on `V`).
    fn u_matches(&self, other: &Bispan, beta: &GMap) -> bool {
        let du = self.u().orbits();
        let ou = other.u();
        let dou = ou.orbits();
        let n = du.orbits.len();
        let adj: Vec<Vec<usize>> = du
            .orbits
            .iter()
            .map(|o| {
                let (fs, gv) = (self.f.apply(o.rep), beta.apply(self.g.apply(o.rep)));
                let mut js: Vec<usize> = (0..ou.len())
                    .filter(|&y| ou.stabilizer(y) == o.stabilizer && other.f.apply(y) == fs && other.g.apply(y) == gv)
                    .map(|y| dou.orbit_of[y])
                    .collect();
                js.sort_unstable();
                js.dedup();
                js
            })
            .collect();
        n == dou.orbits.len() && perfect_matching(&adj, dou.orbits.len())
    }
}

/// Kuhn's augmenting-path bipartite matching; true iff every left vertex is matched.
fn perfect_matching(adj: &[Vec<usize>], nright: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v] == usize::MAX || augment(owner[v], adj, seen, owner) {
                owner[v] = u;
                return true;
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; nright];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; nright], &mut owner))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsets::FiniteGroup;

    fn c2_setup() -> (GSet, GMap, GMap) {
        let c2 = FiniteGroup::cyclic(2);
        let free = GSet::coset_space(&c2, 0);
        let pi = GMap::to_point(&free);
        let fold = GMap::fold(&free, 2);
        (free, pi, fold)
    }

    #[test]
    fn generators_have_the_right_shape() {
        let (free, pi, _) = c2_setup();
        let t = Bispan::generator(Generator::T, &pi);
        assert_eq!(t.u(), &free);
        assert_eq!(t.v(), &free);
        assert_eq!(t.t().len(), 1);
        let n = Bispan::generator(Generator::N, &pi);
        assert_eq!(n.v().len(), 1);
        let r = Bispan::generator(Generator::R, &GMap::identity(&free));
        assert!(r.iso_equal(&Bispan::identity(&free)));
    }

    #[test]
    fn restriction_of_transfer() {
        let (free, pi, _) = c2_setup();
        let r = Bispan::generator(Generator::R, &pi);
        let t = Bispan::generator(Generator::T, &pi);
        let rt = r.compose(&t).unwrap();
        assert_eq!(rt.u().len(), 4);
        assert!(rt.flags().iso);
        // sum of identity and conjugation: T_fold R_{[id, c]}
        let group = free.group().clone();
        let swap = GMap::new(free.clone(), free.clone(), vec![1, 0]).unwrap();
        let both = GMap::identity(&free).copair(&swap).unwrap();
        let fold = GMap::fold(&free, 2);
        let expected = Bispan::new(both, GMap::identity(fold.source()), fold).unwrap();
        assert!(rt.iso_equal(&expected));
        assert_eq!(group.order(), 2);
    }

    #[test]
    fn norm_of_sum_bispan() {
        let (free, pi, fold) = c2_setup();
        let n = Bispan::generator(Generator::N, &pi);
        let t = Bispan::generator(Generator::T, &fold);
        let nt = n.compose(&t).unwrap();
        // middle set is F(C2/e, {0,1}): 4 points
        assert_eq!(nt.v().len(), 4);
        assert_eq!(nt.u().len(), 8);
        assert_eq!(nt.s(), fold.source());
        assert!(!free.is_empty());
    }

    #[test]
    fn unit_laws() {
        let (free, pi, fold) = c2_setup();
        for p in [
            Bispan::generator(Generator::N, &pi),
            Bispan::generator(Generator::T, &fold),
            Bispan::generator(Generator::R, &pi),
        ] {
            assert!(Bispan::identity(p.t()).compose(&p).unwrap().iso_equal(&p));
            assert!(p.compose(&Bispan::identity(p.s())).unwrap().iso_equal(&p));
        }
        assert!(!Bispan::generator(Generator::N, &pi).iso_equal(&Bispan::generator(Generator::T, &pi)));
        assert_eq!(free.len(), 2);
    }

    #[test]
    fn flags() {
        let (_, pi, fold) = c2_setup();
        let f = Bispan::generator(Generator::T, &pi).flags();
        assert!(f.iso && f.epi && f.gr);
        let f = Bispan::generator(Generator::N, &pi).flags();
        assert_eq!(f, SubcatFlags { iso: false, epi: true, gr: false });
        let f = Bispan::generator(Generator::N, &fold).flags();
        assert_eq!(f, SubcatFlags { iso: false, epi: true, gr: true });
    }

    #[test]
    fn decomposes_into_generators() {
        let (_, pi, fold) = c2_setup();
        let p = Bispan::generator(Generator::N, &pi).compose(&Bispan::generator(Generator::T, &fold)).unwrap();
        let rebuilt = Bispan::generator(Generator::T, &p.h)
            .compose(&Bispan::generator(Generator::N, &p.g).compose(&Bispan::generator(Generator::R, &p.f)).unwrap())
            .unwrap();
        assert!(rebuilt.iso_equal(&p));
    }
}

#[cfg(test)]
mod functoriality {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    use super::*;
    use crate::gsets::FiniteGroup;
    use crate::tambara::burnside;
    use crate::zmod::Int;

    #[test]
    fn evaluation_respects_composition() {
        for name in ["C2", "C3", "C4", "C2xC2", "S3"] {
            let g = FiniteGroup::by_name(name).unwrap();
            let a = burnside(&g);
            let cfg = WordConfig::default();
            let mut rng = StdRng::seed_from_u64(7);
            for _ in 0..200 {
                let w = random_word(&g, &mut rng, &cfg);
                let rep = check_functoriality(&a, &w, &mut rng, &cfg).unwrap();
                assert!(rep.passed(), "{name}: {:?}", rep.failures().next());
            }
        }
    }

    #[test]
    fn corrupted_norm_breaks_functoriality() {
        let g = FiniteGroup::cyclic(2);
        let bad = crate::poly::NewtonPoly::interpolate(1, 2, 2, |x| vec![Int::from(0), x[0].clone()]);
        let a = burnside(&g).with_norm(1, 0, bad);
        let cfg = WordConfig::default();
        let mut rng = StdRng::seed_from_u64(7);
        let failures = (0..200)
            .filter(|_| {
                let w = random_word(&g, &mut rng, &cfg);
                !check_functoriality(&a, &w, &mut rng, &cfg).unwrap().passed()
            })
            .count();
        assert!(failures > 0);
    }
}
