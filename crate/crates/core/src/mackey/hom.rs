//! Morphisms of Mackey functors, sub-functors, quotients and spaces of morphisms.

use std::sync::Arc;

use super::functor::MackeyFunctor;
use crate::gsets::SubgroupId;
use crate::report::Report;
use crate::zmod::{Int, LinearSystem, Matrix, PresentedAb, SolutionSpace};

#[derive(Clone, Debug)]
pub struct MackeyHom {
    pub source: Arc<MackeyFunctor>,
    pub target: Arc<MackeyFunctor>,
    /// `maps[h]: M(G/H) → N(G/H)`.
    pub maps: Vec<Matrix>,
}

const HOM: &str = "maps of Mackey functors";

impl MackeyHom {
    pub fn new(source: Arc<MackeyFunctor>, target: Arc<MackeyFunctor>, maps: Vec<Matrix>) -> Self {
        debug_assert_eq!(maps.len(), source.levels().len());
        Self { source, target, maps }
    }

    pub fn identity(m: &Arc<MackeyFunctor>) -> Self {
        let maps = m.levels().iter().map(|l| Matrix::identity(l.ngens())).collect();
        Self::new(m.clone(), m.clone(), maps)
    }

    pub fn zero(source: &Arc<MackeyFunctor>, target: &Arc<MackeyFunctor>) -> Self {
        let maps =
            source.levels().iter().zip(target.levels()).map(|(a, b)| Matrix::zeros(b.ngens(), a.ngens())).collect();
        Self::new(source.clone(), target.clone(), maps)
    }

    pub fn map(&self, h: SubgroupId) -> &Matrix {
        &self.maps[h]
    }

    pub fn apply(&self, h: SubgroupId, x: &[Int]) -> Vec<Int> {
        self.maps[h].mul_vec(x)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &MackeyHom) -> MackeyHom {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| b * a).collect();
        MackeyHom::new(self.source.clone(), other.target.clone(), maps)
    }

    pub fn add(&self, other: &MackeyHom) -> MackeyHom {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a + b).collect();
        MackeyHom::new(self.source.clone(), self.target.clone(), maps)
    }

    pub fn sub(&self, other: &MackeyHom) -> MackeyHom {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a - b).collect();
        MackeyHom::new(self.source.clone(), self.target.clone(), maps)
    }

    pub fn scale(&self, c: &Int) -> MackeyHom {
        let maps = self.maps.iter().map(|a| a.scale(c)).collect();
        MackeyHom::new(self.source.clone(), self.target.clone(), maps)
    }

    pub fn same_as(&self, other: &MackeyHom) -> bool {
        self.maps.iter().zip(&other.maps).enumerate().all(|(h, (a, b))| self.target.level(h).same_map(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().enumerate().all(|(h, a)| self.target.level(h).same_map(a, &Matrix::zeros(a.rows(), a.cols())))
    }

    /// Well-definedness and commutation with restriction, transfer and conjugation.
    pub fn check(&self) -> Report {
        let mut rep = Report::new();
        let (m, n) = (&self.source, &self.target);
        let g = m.group();
        let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
        rep.declare("mackey_hom.well_defined", HOM);
        rep.declare("mackey_hom.commutes", HOM);
        for h in 0..g.num_subgroups() {
            let ok = self.maps[h].shape() == (n.level(h).ngens(), m.level(h).ngens())
                && n.level(h).accepts_map_from(m.level(h), &self.maps[h]);
            rep.record("mackey_hom.well_defined", HOM, ok, || format!("level {}", lab(h)));
        }
        if !rep.passed() {
            return rep;
        }
        for k in 0..g.num_subgroups() {
            for h in g.subgroups_of(k) {
                let ok = n.level(h).same_map(&(&self.maps[h] * m.res(k, h)), &(n.res(k, h) * &self.maps[k]));
                rep.record("mackey_hom.commutes", HOM, ok, || format!("restriction {} -> {}", lab(k), lab(h)));
                let ok = n.level(k).same_map(&(&self.maps[k] * m.tr(k, h)), &(n.tr(k, h) * &self.maps[h]));
                rep.record("mackey_hom.commutes", HOM, ok, || format!("transfer {} -> {}", lab(h), lab(k)));
            }
        }
        for x in g.generators() {
            for h in 0..g.num_subgroups() {
                let xh = g.conj_subgroup(x, h);
                let ok = n.level(xh).same_map(&(&self.maps[xh] * m.conj(x, h)), &(n.conj(x, h) * &self.maps[h]));
                rep.record("mackey_hom.commutes", HOM, ok, || {
                    format!("conjugation by {} on {}", g.element_name(x), lab(h))
                });
            }
        }
        rep
    }

    pub fn is_injective(&self) -> bool {
        (0..self.maps.len()).all(|h| self.level_hom(h).is_injective())
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.maps.len()).all(|h| self.level_hom(h).is_surjective())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn level_hom(&self, h: SubgroupId) -> crate::zmod::AbHom {
        crate::zmod::AbHom::new(self.source.level(h).clone(), self.target.level(h).clone(), self.maps[h].clone())
            .expect("levelwise map is well defined")
    }

    /// Kernel with its inclusion.
    pub fn kernel(&self) -> (Arc<MackeyFunctor>, MackeyHom) {
        let spans: Vec<Matrix> = (0..self.maps.len()).map(|h| self.level_hom(h).kernel().1).collect();
        sub_functor(&self.source, &spans)
    }

    /// Image as a sub-functor of the target, with its inclusion.
    pub fn image(&self) -> (Arc<MackeyFunctor>, MackeyHom) {
        sub_functor(&self.target, &self.maps)
    }

    pub fn cokernel(&self) -> (Arc<MackeyFunctor>, MackeyHom) {
        quotient(&self.target, &self.maps)
    }

    /// The inverse of an isomorphism.
    pub fn inverse(&self) -> Option<MackeyHom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for h in 0..self.maps.len() {
            let (s, t) = (self.source.level(h), self.target.level(h));
            let mut cols = Vec::with_capacity(t.ngens());
            for j in 0..t.ngens() {
                let e = crate::zmod::unit_vec(t.ngens(), j);
                let pre = t.solve_in_span(&self.maps[h], &e)?;
                cols.push(pre);
            }
            maps.push(Matrix::from_columns(s.ngens(), &cols));
        }
        Some(MackeyHom::new(self.target.clone(), self.source.clone(), maps))
    }
}

/// Smallest sub-functor containing the columns of `gens[h]` at each level.
pub fn generated_spans(m: &MackeyFunctor, gens: &[Matrix]) -> Vec<Matrix> {
    let g = m.group();
    let n = g.num_subgroups();
    let mut spans: Vec<Matrix> = gens.to_vec();
    loop {
        let mut grown = false;
        let snapshot = spans.clone();
        for k in 0..n {
            let mut new_cols: Vec<Matrix> = vec![snapshot[k].clone()];
            for h in 0..n {
                if h != k && g.is_subgroup_of(k, h) {
                    new_cols.push(m.res(h, k) * &snapshot[h]);
                }
                if h != k && g.is_subgroup_of(h, k) {
                    new_cols.push(m.tr(k, h) * &snapshot[h]);
                }
            }
            for x in g.generators() {
                let src = g.conj_subgroup(g.inv(x), k);
                new_cols.push(m.conj(x, src) * &snapshot[src]);
            }
            let refs: Vec<&Matrix> = new_cols.iter().collect();
            let all = Matrix::hstack(m.level(k).ngens(), &refs);
            if !m.level(k).span_contains(&spans[k], &all) {
                grown = true;
                spans[k] = m.level(k).subgroup(&all).1;
            }
        }
        if !grown {
            return spans;
        }
    }
}

/// The sub-functor spanned levelwise by `spans` (assumed closed), and its inclusion.
pub fn sub_functor(m: &Arc<MackeyFunctor>, spans: &[Matrix]) -> (Arc<MackeyFunctor>, MackeyHom) {
    let g = m.group();
    let n = g.num_subgroups();
    let mut levels = Vec::with_capacity(n);
    let mut incl = Vec::with_capacity(n);
    for h in 0..n {
        let (sub, i) = m.level(h).subgroup(&spans[h]);
        let s = sub.simplified();
        incl.push(&i * &s.from);
        levels.push(s.group);
    }
    // structure maps: pull back along the inclusions
    let lift = |target: SubgroupId, images: Matrix| -> Matrix {
        let cols: Vec<Vec<Int>> = images
            .columns()
            .iter()
            .map(|c| m.level(target).solve_in_span(&incl[target], c).expect("spans are closed under structure maps"))
            .collect();
        Matrix::from_columns(levels[target].ngens(), &cols)
    };
    let sub = MackeyFunctor::from_fn(
        g,
        levels.clone(),
        |k, h| lift(h, m.res(k, h) * &incl[k]),
        |k, h| lift(k, m.tr(k, h) * &incl[h]),
        |x, h| lift(g.conj_subgroup(x, h), m.conj(x, h) * &incl[h]),
    )
    .expect("sub-functor shapes");
    let sub = Arc::new(sub);
    (sub.clone(), MackeyHom::new(sub, m.clone(), incl))
}

/// `M / spans` (spans assumed closed), simplified, with the projection.
pub fn quotient(m: &Arc<MackeyFunctor>, spans: &[Matrix]) -> (Arc<MackeyFunctor>, MackeyHom) {
    let n = m.group().num_subgroups();
    let mut levels = Vec::with_capacity(n);
    let mut to = Vec::with_capacity(n);
    let mut from = Vec::with_capacity(n);
    for h in 0..n {
        let q = m.level(h).quotient(&spans[h]).simplified();
        levels.push(q.group);
        to.push(q.to);
        from.push(q.from);
    }
    let quo = Arc::new(m.transport(levels, &to, &from));
    (quo.clone(), MackeyHom::new(m.clone(), quo, to))
}

/// A simplified presentation of `m` with inverse isomorphisms `m → s` and `s → m`.
pub fn simplify(m: &Arc<MackeyFunctor>) -> (Arc<MackeyFunctor>, MackeyHom, MackeyHom) {
    let n = m.group().num_subgroups();
    let simp: Vec<_> = (0..n).map(|h| m.level(h).simplified()).collect();
    let levels = simp.iter().map(|s| s.group.clone()).collect();
    let to: Vec<Matrix> = simp.iter().map(|s| s.to.clone()).collect();
    let from: Vec<Matrix> = simp.iter().map(|s| s.from.clone()).collect();
    let s = Arc::new(m.transport(levels, &to, &from));
    (s.clone(), MackeyHom::new(m.clone(), s.clone(), to), MackeyHom::new(s, m.clone(), from))
}

/// Layout of unknown level matrices `maps[h]` (rows of target, columns of source) as one vector.
#[derive(Clone, Debug)]
pub struct MatrixUnknowns {
    pub shapes: Vec<(usize, usize)>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl MatrixUnknowns {
    pub fn new(shapes: Vec<(usize, usize)>) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in &shapes {
            offsets.push(total);
            total += r * c;
        }
        Self { shapes, offsets, total }
    }

    pub fn index(&self, h: usize, i: usize, j: usize) -> usize {
        self.offsets[h] + i * self.shapes[h].1 + j
    }

    pub fn unpack(&self, z: &[Int]) -> Vec<Matrix> {
        self.shapes
            .iter()
            .enumerate()
            .map(|(h, &(r, c))| {
                let rows = (0..r).map(|i| (0..c).map(|j| z[self.index(h, i, j)].clone()).collect()).collect();
                Matrix::from_rows(r, c, rows)
            })
            .collect()
    }

    pub fn pack(&self, maps: &[Matrix]) -> Vec<Int> {
        let mut z = vec![Int::from(0); self.total];
        for (h, m) in maps.iter().enumerate() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    z[self.index(h, i, j)] = m.get(i, j).clone();
                }
            }
        }
        z
    }

    /// Coefficient matrix of `X_h · v` (a vector of length rows_h) in the unknowns.
    pub fn times_vector(&self, h: usize, v: &[Int]) -> Matrix {
        let (r, c) = self.shapes[h];
        let mut m = Matrix::zeros(r, self.total);
        for i in 0..r {
            for j in 0..c {
                if v[j] != Int::from(0) {
                    m.set(i, self.index(h, i, j), v[j].clone());
                }
            }
        }
        m
    }

    /// Coefficient matrix of `A · X_h · v`.
    pub fn left_times_vector(&self, a: &Matrix, h: usize, v: &[Int]) -> Matrix {
        a * &self.times_vector(h, v)
    }
}

/// Adds the constraints making `maps` a Mackey morphism `m → n` (and identifies maps equal levelwise).
pub fn add_mackey_hom_constraints(sys: &mut LinearSystem, u: &MatrixUnknowns, m: &MackeyFunctor, n: &MackeyFunctor) {
    let g = m.group();
    let ns = g.num_subgroups();
    for h in 0..ns {
        let (mh, nh) = (m.level(h), n.level(h));
        for col in mh.relations().columns() {
            sys.constrain(u.times_vector(h, &col), nh);
        }
        // maps with every column in the target relations are zero
        for j in 0..mh.ngens() {
            for rel in nh.relations().columns() {
                let mut z = vec![Int::from(0); u.total];
                for i in 0..nh.ngens() {
                    z[u.index(h, i, j)] = rel[i].clone();
                }
                sys.identify_with_zero(z);
            }
        }
    }
    let basis = |k: usize| (0..m.level(k).ngens()).map(move |j| crate::zmod::unit_vec(m.level(k).ngens(), j));
    for (k, h) in g.covering_pairs() {
        for e in basis(k) {
            // X_h res(e) - res(X_k e)
            let c = &u.times_vector(h, &m.res(k, h).mul_vec(&e)) - &u.left_times_vector(n.res(k, h), k, &e);
            sys.constrain(c, n.level(h));
        }
        for e in basis(h) {
            let c = &u.times_vector(k, &m.tr(k, h).mul_vec(&e)) - &u.left_times_vector(n.tr(k, h), h, &e);
            sys.constrain(c, n.level(k));
        }
    }
    for x in g.generators() {
        for h in 0..ns {
            let xh = g.conj_subgroup(x, h);
            for e in basis(h) {
                let c = &u.times_vector(xh, &m.conj(x, h).mul_vec(&e)) - &u.left_times_vector(n.conj(x, h), h, &e);
                sys.constrain(c, n.level(xh));
            }
        }
    }
}

/// `Hom(M, N)` as a presented group with explicit morphisms.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Arc<MackeyFunctor>,
    pub target: Arc<MackeyFunctor>,
    pub unknowns: MatrixUnknowns,
    pub solutions: SolutionSpace,
}

impl HomSpace {
    pub fn group(&self) -> &PresentedAb {
        &self.solutions.group
    }

    pub fn hom(&self, coords: &[Int]) -> MackeyHom {
        let z = self.solutions.vector(coords);
        MackeyHom::new(self.source.clone(), self.target.clone(), self.unknowns.unpack(&z))
    }

    pub fn basis(&self) -> Vec<MackeyHom> {
        (0..self.solutions.ngens()).map(|i| self.hom(&crate::zmod::unit_vec(self.solutions.ngens(), i))).collect()
    }

    pub fn coords_of(&self, f: &MackeyHom) -> Option<Vec<Int>> {
        self.solutions.coords_of(&self.unknowns.pack(&f.maps))
    }
}

pub fn hom_space(m: &Arc<MackeyFunctor>, n: &Arc<MackeyFunctor>) -> HomSpace {
    let shapes = m.levels().iter().zip(n.levels()).map(|(a, b)| (b.ngens(), a.ngens())).collect();
    let u = MatrixUnknowns::new(shapes);
    let mut sys = LinearSystem::new(u.total);
    add_mackey_hom_constraints(&mut sys, &u, m, n);
    HomSpace { source: m.clone(), target: n.clone(), unknowns: u, solutions: sys.solve() }
}
