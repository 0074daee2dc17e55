//! Finite groups given by multiplication tables, with their subgroup lattices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a subgroup in [`FiniteGroup::subgroups`].
pub type SubgroupId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Sorted element indices.
    pub elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn new(elements: Vec<usize>, n: usize) -> Self {
        let mut mask = vec![false; n];
        for &e in &elements {
            mask[e] = true;
        }
        Self { elements, mask }
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask[g]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Canonical label, stable under re-enumeration of the same table.
    pub id: String,
    /// The least member (in subgroup order); this is the class representative.
    pub representative: SubgroupId,
    pub members: Vec<SubgroupId>,
    pub order: usize,
    /// `|N_G(H) / H|` for the representative.
    pub weyl_order: usize,
}

pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
    subgroups: Vec<Subgroup>,
    sub_index: HashMap<Vec<usize>, SubgroupId>,
    classes: Vec<SubgroupClass>,
    class_of: Vec<usize>,
    labels: Vec<String>,
    conj: Vec<Vec<SubgroupId>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.identity == other.identity
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates the table and builds the subgroup lattice.
    pub fn new(name: &str, names: Vec<String>, mul: Vec<Vec<usize>>, identity: usize) -> Result<Arc<Self>> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("group has no elements".into()));
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("closure: multiplication table is not n x n".into()));
        }
        if mul.iter().flatten().any(|&c| c >= n) {
            return Err(Error::InvalidGroup("closure: table entry outside the element list".into()));
        }
        if identity >= n {
            return Err(Error::InvalidGroup("identity: not an element".into()));
        }
        for a in 0..n {
            if mul[identity][a] != a || mul[a][identity] != a {
                return Err(Error::InvalidGroup(format!("identity law fails at {}", names[a])));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == identity && mul[b][a] == identity) {
                Some(b) => inv[a] = b,
                None => return Err(Error::InvalidGroup(format!("inverse law: {} has no inverse", names[a]))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            names,
            mul,
            identity,
            inv,
            subgroups: Vec::new(),
            sub_index: HashMap::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            labels: Vec::new(),
            conj: Vec::new(),
        };
        g.build_lattice();
        Ok(Arc::new(g))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn element_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element_by_name(&self, s: &str) -> Option<usize> {
        self.names.iter().position(|n| n == s)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// `g h g^-1`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    fn build_lattice(&mut self) {
        let n = self.order();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..n {
            found.insert(self.generate(&[g]));
        }
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut added = false;
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let mut gens = current[i].clone();
                    gens.extend(&current[j]);
                    if found.insert(self.generate(&gens)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        self.subgroups = subs.iter().map(|s| Subgroup::new(s.clone(), n)).collect();
        self.sub_index = subs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        self.conj = (0..n)
            .map(|g| {
                (0..self.subgroups.len())
                    .map(|h| {
                        let mut c: Vec<usize> =
                            self.subgroups[h].elements.iter().map(|&x| self.conjugate(g, x)).collect();
                        c.sort_unstable();
                        self.sub_index[&c]
                    })
                    .collect()
            })
            .collect();

        let nsub = self.subgroups.len();
        self.class_of = vec![usize::MAX; nsub];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for h in 0..nsub {
            if self.class_of[h] != usize::MAX {
                continue;
            }
            let mut members: Vec<SubgroupId> = (0..n).map(|g| self.conj[g][h]).collect();
            members.sort_unstable();
            members.dedup();
            let cid = classes.len();
            for &m in &members {
                self.class_of[m] = cid;
            }
            let order = self.subgroups[h].order();
            let normalizer = (0..n).filter(|&g| self.conj[g][h] == h).count();
            classes.push(SubgroupClass {
                id: String::new(),
                representative: h,
                members,
                order,
                weyl_order: normalizer / order,
            });
        }
        // labels: e, the group name, C<n> for cyclic, H<n> otherwise, lettered when ambiguous
        let base: Vec<String> = classes
            .iter()
            .map(|c| {
                let h = &self.subgroups[c.representative];
                if c.order == 1 {
                    "e".to_string()
                } else if c.order == n {
                    self.name.clone()
                } else if h.elements.iter().any(|&x| self.generate(&[x]).len() == c.order) {
                    format!("C{}", c.order)
                } else {
                    format!("H{}", c.order)
                }
            })
            .collect();
        for i in 0..classes.len() {
            let same: Vec<usize> = (0..classes.len()).filter(|&j| base[j] == base[i]).collect();
            classes[i].id = if same.len() > 1 {
                let k = same.iter().position(|&j| j == i).unwrap();
                format!("{}{}", base[i], (b'a' + k as u8) as char)
            } else {
                base[i].clone()
            };
        }
        classes.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.id.cmp(&b.id)));
        for (cid, c) in classes.iter().enumerate() {
            for &m in &c.members {
                self.class_of[m] = cid;
            }
        }
        self.labels = vec![String::new(); nsub];
        for c in &classes {
            for (k, &m) in c.members.iter().enumerate() {
                self.labels[m] = if k == 0 { c.id.clone() } else { format!("{}.{}", c.id, k) };
            }
        }
        self.classes = classes;
    }

    /// All subgroups, sorted by (order, element list).
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, h: SubgroupId) -> &Subgroup {
        &self.subgroups[h]
    }

    pub fn num_subgroups(&self) -> usize {
        self.subgroups.len()
    }

    pub fn subgroup_id(&self, elements: &[usize]) -> Option<SubgroupId> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        self.sub_index.get(&e).copied()
    }

    pub fn trivial_subgroup(&self) -> SubgroupId {
        0
    }

    pub fn whole_group(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    /// Label of a subgroup: the class id for representatives, `id.k` for other conjugates.
    pub fn subgroup_label(&self, h: SubgroupId) -> &str {
        &self.labels[h]
    }

    pub fn subgroup_by_label(&self, s: &str) -> Option<SubgroupId> {
        self.labels.iter().position(|l| l == s)
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class_of(&self, h: SubgroupId) -> &SubgroupClass {
        &self.classes[self.class_of[h]]
    }

    pub fn class_index(&self, h: SubgroupId) -> usize {
        self.class_of[h]
    }

    /// `g H g^-1`
    pub fn conj_subgroup(&self, g: usize, h: SubgroupId) -> SubgroupId {
        self.conj[g][h]
    }

    pub fn is_subgroup_of(&self, h: SubgroupId, k: SubgroupId) -> bool {
        self.subgroups[h].is_subset_of(&self.subgroups[k])
    }

    pub fn index(&self, h: SubgroupId, k: SubgroupId) -> usize {
        self.subgroups[k].order() / self.subgroups[h].order()
    }

    pub fn intersection(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let e: Vec<usize> =
            self.subgroups[a].elements.iter().copied().filter(|&x| self.subgroups[b].contains(x)).collect();
        self.sub_index[&e]
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generate(&[]);
        for g in self.elements() {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(&g) {
                gens.push(g);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// Pairs `(K, H)` with `H` a maximal proper subgroup of `K`.
    pub fn covering_pairs(&self) -> Vec<(SubgroupId, SubgroupId)> {
        let n = self.num_subgroups();
        let mut out = Vec::new();
        for k in 0..n {
            for h in 0..n {
                if h != k
                    && self.is_subgroup_of(h, k)
                    && !(0..n).any(|m| m != h && m != k && self.is_subgroup_of(h, m) && self.is_subgroup_of(m, k))
                {
                    out.push((k, h));
                }
            }
        }
        out
    }

    /// Subgroups of `k`.
    pub fn subgroups_of(&self, k: SubgroupId) -> Vec<SubgroupId> {
        (0..self.num_subgroups()).filter(|&h| self.is_subgroup_of(h, k)).collect()
    }

    /// Representatives of the double cosets `L \ K / H` (least element of each).
    pub fn double_coset_reps(&self, l: SubgroupId, k: SubgroupId, h: SubgroupId) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::new();
        for &x in &self.subgroups[k].elements {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &a in &self.subgroups[l].elements {
                for &b in &self.subgroups[h].elements {
                    seen[self.mul(self.mul(a, x), b)] = true;
                }
            }
        }
        reps
    }

    /// Representatives of the left cosets `K / H`, identity coset first.
    pub fn left_coset_reps(&self, k: SubgroupId, h: SubgroupId) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut reps = vec![self.identity];
        for &b in &self.subgroups[h].elements {
            seen[b] = true;
        }
        for &x in &self.subgroups[k].elements {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &b in &self.subgroups[h].elements {
                seen[self.mul(x, b)] = true;
            }
        }
        reps
    }

    /// Least conjugate of `h` contained in `k`, with a conjugating element.
    pub fn containment_witness(&self, h: SubgroupId, k: SubgroupId) -> Option<(SubgroupId, usize)> {
        let mut best: Option<(SubgroupId, usize)> = None;
        for g in 0..self.order() {
            let c = self.conj[g][h];
            if self.is_subgroup_of(c, k) && best.is_none_or(|(b, _)| c < b) {
                best = Some((c, g));
            }
        }
        best
    }

    /// The subgroup `h` as a group in its own right, with the embedding of its elements.
    pub fn subgroup_as_group(&self, h: SubgroupId) -> (Arc<FiniteGroup>, Vec<usize>) {
        let elems = self.subgroups[h].elements.clone();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let names: Vec<String> = elems.iter().map(|&e| self.names[e].clone()).collect();
        let mul: Vec<Vec<usize>> =
            elems.iter().map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect()).collect();
        let name = format!("{}<{}>", self.name, self.subgroup_label(h));
        let g = FiniteGroup::new(&name, names, mul, pos[&self.identity]).expect("subgroup table is a group");
        (g, elems)
    }

    pub fn cyclic(n: usize) -> Arc<Self> {
        let names = (0..n)
            .map(|i| {
                if i == 0 {
                    "e".into()
                } else if i == 1 {
                    "a".into()
                } else {
                    format!("a{i}")
                }
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(&format!("C{n}"), names, mul, 0).expect("cyclic group")
    }

    /// Symmetric group on `n` letters; elements are permutations in lexicographic order.
    pub fn symmetric(n: usize) -> Arc<Self> {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        permutations(&mut p, 0, &mut perms);
        perms.sort();
        let idx: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        // (a * b)(x) = a(b(x))
        let mul = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()]).collect())
            .collect();
        Self::new(&format!("S{n}"), names, mul, 0).expect("symmetric group")
    }

    pub fn dihedral(n: usize) -> Arc<Self> {
        // elements r^i s^j encoded as i + n*j
        let names = (0..2 * n)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                match (i, j) {
                    (0, 0) => "e".to_string(),
                    (_, 0) => format!("r{i}"),
                    (0, _) => "s".to_string(),
                    _ => format!("r{i}s"),
                }
            })
            .collect();
        let mul = (0..2 * n)
            .map(|a| {
                (0..2 * n)
                    .map(|b| {
                        let (i1, j1, i2, j2) = (a % n, a / n, b % n, b / n);
                        // r^i1 s^j1 r^i2 s^j2 = r^(i1 +- i2) s^(j1+j2)
                        let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
                        i + n * ((j1 + j2) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::new(&format!("D{}", 2 * n), names, mul, 0).expect("dihedral group")
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Arc<Self> {
        let (na, nb) = (a.order(), b.order());
        let names = (0..na * nb).map(|x| format!("({},{})", a.names[x / nb], b.names[x % nb])).collect();
        let mul = (0..na * nb)
            .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
            .collect();
        let id = a.identity * nb + b.identity;
        Self::new(&format!("{}x{}", a.name, b.name), names, mul, id).expect("product group")
    }

    /// Looks up a standard desk-scale group by name (`C<n>`, `S3`, `S4`, `D<2n>`, `C2xC2`).
    pub fn by_name(name: &str) -> Option<Arc<Self>> {
        match name {
            "C2xC2" | "V4" | "K4" => {
                let c2 = Self::cyclic(2);
                Some(Self::product(&c2, &c2))
            }
            "S3" => Some(Self::symmetric(3)),
            "S4" => Some(Self::symmetric(4)),
            _ => {
                if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
                    return (n >= 1).then(|| Self::cyclic(n));
                }
                if let Some(n) = name.strip_prefix('D').and_then(|s| s.parse::<usize>().ok()) {
                    return (n >= 4 && n % 2 == 0).then(|| Self::dihedral(n / 2));
                }
                None
            }
        }
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut parts = Vec::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        parts.push(format!("({})", cyc.join(" ")));
    }
    if parts.is_empty() {
        "e".into()
    } else {
        parts.concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: all subsets closed under multiplication, up to conjugacy.
    fn brute_force_class_count(g: &FiniteGroup) -> (usize, usize) {
        let n = g.order();
        assert!(n <= 12);
        let mut subs = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if !set.contains(&g.identity()) {
                continue;
            }
            if set.iter().all(|&a| set.iter().all(|&b| mask & (1 << g.mul(a, b)) != 0)) {
                subs.push(mask);
            }
        }
        let mut classes: Vec<u32> = Vec::new();
        for &s in &subs {
            let min = (0..n)
                .map(|x| (0..n).filter(|&i| s & (1 << i) != 0).fold(0u32, |m, i| m | 1 << g.conjugate(x, i)))
                .min()
                .unwrap();
            if !classes.contains(&min) {
                classes.push(min);
            }
        }
        (subs.len(), classes.len())
    }

    #[test]
    fn class_counts_match_brute_force() {
        for g in [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            FiniteGroup::by_name("C2xC2").unwrap(),
            FiniteGroup::symmetric(3),
            FiniteGroup::dihedral(4),
            FiniteGroup::cyclic(6),
        ] {
            let (nsub, ncls) = brute_force_class_count(&g);
            assert_eq!(g.num_subgroups(), nsub, "{}", g.name());
            assert_eq!(g.classes().len(), ncls, "{}", g.name());
        }
    }

    #[test]
    fn spec_class_lists() {
        let labels = |g: &FiniteGroup| g.classes().iter().map(|c| c.id.clone()).collect::<Vec<_>>();
        assert_eq!(labels(&FiniteGroup::cyclic(2)), ["e", "C2"]);
        assert_eq!(labels(&FiniteGroup::symmetric(3)), ["e", "C2", "C3", "S3"]);
        let v4 = FiniteGroup::by_name("C2xC2").unwrap();
        assert_eq!(labels(&v4), ["e", "C2a", "C2b", "C2c", "C2xC2"]);
        let s3 = FiniteGroup::symmetric(3);
        let c2 = &s3.classes()[1];
        assert_eq!(c2.members.len(), 3);
        assert_eq!(c2.weyl_order, 1);
        assert_eq!(s3.classes()[2].weyl_order, 2);
    }

    #[test]
    fn labels_are_stable() {
        let a = FiniteGroup::symmetric(3);
        let b = FiniteGroup::new("S3", a.element_names().to_vec(), a.table().to_vec(), 0).unwrap();
        for h in 0..a.num_subgroups() {
            assert_eq!(a.subgroup_label(h), b.subgroup_label(h));
        }
    }

    #[test]
    fn rejects_bad_tables() {
        let names: Vec<String> = vec!["e".into(), "a".into()];
        let err = FiniteGroup::new("bad", names.clone(), vec![vec![0, 1], vec![1, 1]], 0).unwrap_err();
        assert!(err.to_string().contains("inverse"), "{err}");
        let err = FiniteGroup::new("bad", names.clone(), vec![vec![0, 1], vec![0, 0]], 0).unwrap_err();
        assert!(err.to_string().contains("identity"), "{err}");
        let err = FiniteGroup::new("bad", names, vec![vec![0, 1], vec![1, 2]], 0).unwrap_err();
        assert!(err.to_string().contains("closure"), "{err}");
        // a non-associative loop of order 5
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let err = FiniteGroup::new("loop", names, t, 0).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn double_cosets_partition() {
        let g = FiniteGroup::symmetric(3);
        let c2 = g.classes()[1].representative;
        let all = g.whole_group();
        assert_eq!(g.double_coset_reps(c2, all, c2).len(), 2);
        assert_eq!(g.left_coset_reps(all, c2).len(), 3);
        assert_eq!(g.left_coset_reps(all, c2)[0], g.identity());
    }
}
