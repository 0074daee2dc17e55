//! Finitely generated abelian groups given as cokernels of integer matrices.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::matrix::{Int, Matrix};
use super::snf::{integer_kernel, smith_normal_form, solve_integer, Snf};
use crate::error::{Error, Result};

/// Default bound on the order of groups that may be enumerated.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// Enumeration bound, overridable through `EQALG_ENUM_CAP`.
pub fn enum_cap() -> u64 {
    std::env::var("EQALG_ENUM_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_ENUM_CAP)
}

/// `Z^ngens / colspan(relations)`.
#[derive(Clone)]
pub struct PresentedAb {
    ngens: usize,
    relations: Matrix,
    snf: Arc<Snf>,
}

impl std::fmt::Debug for PresentedAb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PresentedAb(ngens={}, ", self.ngens)?;
        let inv: Vec<String> = self.invariant_factors().iter().map(ToString::to_string).collect();
        write!(f, "invariants=[{}])", inv.join(","))
    }
}

impl PresentedAb {
    pub fn new(ngens: usize, relations: Matrix) -> Self {
        assert_eq!(relations.rows(), ngens, "relation matrix must have one row per generator");
        let snf = Arc::new(smith_normal_form(&relations));
        Self { ngens, relations, snf }
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, Matrix::zeros(n, 0))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(n: i64) -> Self {
        Self::new(1, Matrix::from_i64_rows(&[vec![n]]))
    }

    /// `Z/d_1 + ... + Z/d_k` (a zero `d` gives a free summand).
    pub fn from_orders(orders: &[i64]) -> Self {
        let n = orders.len();
        let mut rel = Matrix::zeros(n, n);
        for (i, &d) in orders.iter().enumerate() {
            rel.set(i, i, Int::from(d));
        }
        Self::new(n, rel)
    }

    pub fn direct_sum(parts: &[&PresentedAb]) -> Self {
        let ngens = parts.iter().map(|p| p.ngens).sum();
        let rels: Vec<&Matrix> = parts.iter().map(|p| &p.relations).collect();
        Self::new(ngens, Matrix::block_diag(&rels))
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    fn smith_diag(&self, i: usize) -> Int {
        self.snf.diag.get(i).cloned().unwrap_or_else(Int::zero)
    }

    /// Nonunit invariant factors: torsion orders (ascending) then one `0` per free summand.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let mut out: Vec<Int> = self.snf.diag.iter().filter(|d| !d.is_one()).cloned().collect();
        out.extend(std::iter::repeat_n(Int::zero(), self.free_rank()));
        out
    }

    pub fn free_rank(&self) -> usize {
        self.ngens - self.snf.rank()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite() && self.snf.diag.iter().all(One::is_one)
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        if !self.is_finite() {
            return None;
        }
        Some(self.snf.diag.iter().fold(Int::one(), |acc, d| acc * d))
    }

    /// Coordinates in the Smith basis, reduced; equal exactly when the elements are equal.
    pub fn canonical(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ngens, "element has wrong length");
        let y = self.snf.u.mul_vec(x);
        let mut out = Vec::new();
        for (i, yi) in y.into_iter().enumerate() {
            let d = self.smith_diag(i);
            if d.is_one() {
                continue;
            }
            if d.is_zero() {
                out.push(yi);
            } else {
                out.push(yi.mod_floor(&d));
            }
        }
        out
    }

    pub fn is_zero_element(&self, x: &[Int]) -> bool {
        self.canonical(x).iter().all(Zero::is_zero)
    }

    pub fn eq_elements(&self, a: &[Int], b: &[Int]) -> bool {
        let d: Vec<Int> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.is_zero_element(&d)
    }

    /// Reduced representative in the original generators.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        let s = self.simplified();
        s.from.mul_vec(&self.canonical(x))
    }

    /// Isomorphic presentation `Z/d_1 + ... + Z^f` with conversion matrices.
    pub fn simplified(&self) -> Simplified {
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for i in 0..self.ngens {
            let d = self.smith_diag(i);
            if !d.is_one() {
                keep.push(i);
                orders.push(d);
            }
        }
        let k = keep.len();
        let mut rel_cols = Vec::new();
        for (j, d) in orders.iter().enumerate() {
            if !d.is_zero() {
                let mut c = vec![Int::zero(); k];
                c[j] = d.clone();
                rel_cols.push(c);
            }
        }
        let group = PresentedAb::new(k, Matrix::from_columns(k, &rel_cols));
        Simplified { group, to: self.snf.u.select_rows(&keep), from: self.snf.u_inv.select_columns(&keep) }
    }

    /// Whether `m` (columns are images of generators of `source`) is a well-defined map into `self`.
    pub fn accepts_map_from(&self, source: &PresentedAb, m: &Matrix) -> bool {
        let img = m * source.relations();
        img.columns().iter().all(|c| self.is_zero_element(c))
    }

    /// Whether two matrices describe the same homomorphism `source -> self`.
    pub fn same_map(&self, a: &Matrix, b: &Matrix) -> bool {
        let d = a - b;
        d.columns().iter().all(|c| self.is_zero_element(c))
    }

    /// All elements (reduced representatives), refusing when the order exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Result<Vec<Vec<Int>>> {
        let Some(order) = self.order() else {
            return Err(Error::Infinite("cannot enumerate an infinite group".into()));
        };
        if order > Int::from(cap) {
            return Err(Error::Infinite(format!("group of order {order} exceeds enumeration cap {cap}")));
        }
        let s = self.simplified();
        let orders: Vec<u64> = s
            .group
            .relations()
            .columns()
            .iter()
            .map(|c| c.iter().find(|x| !x.is_zero()).and_then(ToPrimitive::to_u64).unwrap_or(1))
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0u64; orders.len()];
        loop {
            let y: Vec<Int> = idx.iter().map(|&v| Int::from(v)).collect();
            out.push(s.from.mul_vec(&y));
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < orders[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Expresses `y` (known to lie in the span of `gens` in `self`) as a combination of `gens`.
    pub fn solve_in_span(&self, gens: &Matrix, y: &[Int]) -> Option<Vec<Int>> {
        let a = Matrix::hstack(self.ngens, &[gens, &self.relations]);
        let sol = solve_integer(&a, y)?;
        Some(sol[..gens.cols()].to_vec())
    }

    /// Subgroup generated by the columns of `gens`, with its inclusion matrix.
    pub fn subgroup(&self, gens: &Matrix) -> (PresentedAb, Matrix) {
        let k = gens.cols();
        let a = Matrix::hstack(self.ngens, &[gens, &self.relations]);
        let ker = integer_kernel(&a);
        let rel = ker.block(0, 0, k, ker.cols());
        (PresentedAb::new(k, rel), gens.clone())
    }

    /// Quotient by the subgroup generated by `gens`; the projection is the identity matrix.
    pub fn quotient(&self, gens: &Matrix) -> PresentedAb {
        PresentedAb::new(self.ngens, Matrix::hstack(self.ngens, &[&self.relations, gens]))
    }

    /// Whether the subgroup spanned by `a` contains the one spanned by `b`.
    pub fn span_contains(&self, a: &Matrix, b: &Matrix) -> bool {
        let q = self.quotient(a);
        b.columns().iter().all(|c| q.is_zero_element(c))
    }

    pub fn tensor(&self, other: &PresentedAb) -> PresentedAb {
        tensor(self, other)
    }
}

/// A presentation in Smith form together with mutually inverse conversion matrices.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub group: PresentedAb,
    /// old coordinates -> new coordinates
    pub to: Matrix,
    /// new coordinates -> old coordinates
    pub from: Matrix,
}

/// A homomorphism between presented groups; `matrix` is `target.ngens x source.ngens`.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: PresentedAb,
    pub target: PresentedAb,
    pub matrix: Matrix,
}

impl AbHom {
    pub fn new(source: PresentedAb, target: PresentedAb, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(Error::Shape(format!(
                "hom matrix is {:?}, expected {}x{}",
                matrix.shape(),
                target.ngens(),
                source.ngens()
            )));
        }
        if !target.accepts_map_from(&source, &matrix) {
            return Err(Error::IllDefined("matrix does not carry relations to relations".into()));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(a: &PresentedAb) -> Self {
        Self { source: a.clone(), target: a.clone(), matrix: Matrix::identity(a.ngens()) }
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(x)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &AbHom) -> AbHom {
        AbHom { source: self.source.clone(), target: other.target.clone(), matrix: &other.matrix * &self.matrix }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    pub fn same_as(&self, other: &AbHom) -> bool {
        self.target.same_map(&self.matrix, &other.matrix)
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (PresentedAb, Matrix) {
        let n = self.source.ngens();
        let a = Matrix::hstack(self.target.ngens(), &[&self.matrix, self.target.relations()]);
        let ker = integer_kernel(&a);
        let gens = ker.block(0, 0, n, ker.cols());
        let (sub, incl) = self.source.subgroup(&gens);
        let s = sub.simplified();
        (s.group, &incl * &s.from)
    }

    /// Cokernel; the projection from the target is the identity matrix.
    pub fn cokernel(&self) -> PresentedAb {
        self.target.quotient(&self.matrix)
    }

    /// Image with its inclusion into the target.
    pub fn image(&self) -> (PresentedAb, Matrix) {
        let (sub, incl) = self.target.subgroup(&self.matrix);
        let s = sub.simplified();
        (s.group, &incl * &s.from)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Tensor product; generator `(i, j)` has index `i * b.ngens + j`.
pub fn tensor(a: &PresentedAb, b: &PresentedAb) -> PresentedAb {
    let (na, nb) = (a.ngens(), b.ngens());
    let n = na * nb;
    let mut cols = Vec::new();
    for r in a.relations().columns() {
        for j in 0..nb {
            let mut c = vec![Int::zero(); n];
            for (i, x) in r.iter().enumerate() {
                c[i * nb + j] = x.clone();
            }
            cols.push(c);
        }
    }
    for s in b.relations().columns() {
        for i in 0..na {
            let mut c = vec![Int::zero(); n];
            for (j, x) in s.iter().enumerate() {
                c[i * nb + j] = x.clone();
            }
            cols.push(c);
        }
    }
    PresentedAb::new(n, Matrix::from_columns(n, &cols))
}

/// Outer product of coordinate vectors in the tensor generators of [`tensor`].
pub fn tensor_coords(x: &[Int], y: &[Int]) -> Vec<Int> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}
