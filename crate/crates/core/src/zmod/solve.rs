//! Homogeneous integer linear systems whose constraints live in presented groups.
//!
//! Unknowns are integer vectors `z`; each constraint block says `C z = 0` in some
//! presented group. Solutions differing by a `trivial` vector are identified.
//! This is how spaces of homomorphisms, module maps and derivations are computed.

use super::matrix::{Int, Matrix};
use super::presented::PresentedAb;
use super::snf::integer_kernel;

#[derive(Clone, Debug)]
pub struct LinearSystem {
    nvars: usize,
    blocks: Vec<(Matrix, PresentedAb)>,
    trivial: Vec<Vec<Int>>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        Self { nvars, blocks: Vec::new(), trivial: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Requires `coeffs * z == 0` in `target`; `coeffs` has one row per generator of `target`.
    pub fn constrain(&mut self, coeffs: Matrix, target: &PresentedAb) {
        assert_eq!(coeffs.cols(), self.nvars, "constraint width mismatch");
        assert_eq!(coeffs.rows(), target.ngens(), "constraint height mismatch");
        if coeffs.is_zero() {
            return;
        }
        self.blocks.push((coeffs, target.clone()));
    }

    /// Declares `v` to be a solution that represents zero.
    pub fn identify_with_zero(&mut self, v: Vec<Int>) {
        assert_eq!(v.len(), self.nvars);
        self.trivial.push(v);
    }

    pub fn solve(&self) -> SolutionSpace {
        let n = self.nvars;
        // stack constraints as [C | R] (z; w) = 0
        let total_rows: usize = self.blocks.iter().map(|(c, _)| c.rows()).sum();
        let total_rel: usize = self.blocks.iter().map(|(_, t)| t.relations().cols()).sum();
        let mut big = Matrix::zeros(total_rows, n + total_rel);
        let (mut r0, mut c0) = (0, n);
        for (c, t) in &self.blocks {
            big.set_block(r0, 0, c);
            big.set_block(r0, c0, t.relations());
            r0 += c.rows();
            c0 += t.relations().cols();
        }
        let ker = integer_kernel(&big);
        let gens = ker.block(0, 0, n, ker.cols());
        let trivial = Matrix::from_columns(n, &self.trivial);
        let ambient = PresentedAb::new(n, trivial);
        let (sub, incl) = ambient.subgroup(&gens);
        let s = sub.simplified();
        SolutionSpace { group: s.group, basis: &incl * &s.from, ambient }
    }
}

/// The solution group of a [`LinearSystem`] with an explicit basis.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub group: PresentedAb,
    /// Column `j` is the solution vector of generator `j` of `group`.
    pub basis: Matrix,
    ambient: PresentedAb,
}

impl SolutionSpace {
    /// Coordinates of a solution vector in `group`, or `None` if `z` is not a solution.
    pub fn coords_of(&self, z: &[Int]) -> Option<Vec<Int>> {
        self.ambient.solve_in_span(&self.basis, z)
    }

    pub fn vector(&self, coords: &[Int]) -> Vec<Int> {
        self.basis.mul_vec(coords)
    }

    pub fn ngens(&self) -> usize {
        self.group.ngens()
    }

    /// Whether two solution vectors are identified.
    pub fn same(&self, a: &[Int], b: &[Int]) -> bool {
        self.ambient.eq_elements(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::matrix::ints;

    #[test]
    fn doubling_modulo_four() {
        // x in Z/4 with 2x = 0
        let mut sys = LinearSystem::new(1);
        sys.constrain(Matrix::from_i64_rows(&[vec![2]]), &PresentedAb::cyclic(4));
        sys.identify_with_zero(ints(&[4]));
        let sol = sys.solve();
        assert_eq!(sol.group.invariant_factors(), ints(&[2]));
        let v = sol.vector(&ints(&[1]));
        assert!(sol.same(&v, &ints(&[2])));
    }

    #[test]
    fn unconstrained_matrix_group() {
        let sys = LinearSystem::new(4);
        let sol = sys.solve();
        assert_eq!(sol.group.invariant_factors(), ints(&[0, 0, 0, 0]));
    }

    #[test]
    fn hom_z2_to_z4() {
        // well-definedness: 2x = 0 in Z/4; x counted modulo 4
        let mut sys = LinearSystem::new(1);
        sys.constrain(Matrix::from_i64_rows(&[vec![2]]), &PresentedAb::cyclic(4));
        sys.identify_with_zero(ints(&[4]));
        let sol = sys.solve();
        assert_eq!(sol.group.order(), Some(Int::from(2)));
        // brute force over residues
        let count = (0..4).filter(|x| (2 * x) % 4 == 0).count();
        assert_eq!(count, 2);
        assert!(sol.coords_of(&ints(&[1])).is_none());
    }
}
