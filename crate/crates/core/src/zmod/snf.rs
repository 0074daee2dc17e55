//! Smith normal form and column echelon reduction over the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, Matrix};

/// `u * a * v = d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    /// Diagonal entries `d_0..d_{rank-1}`, all positive.
    pub diag: Vec<Int>,
    pub rows: usize,
    pub cols: usize,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The full diagonal matrix `d`.
    pub fn d(&self) -> Matrix {
        let mut d = Matrix::zeros(self.rows, self.cols);
        for (i, x) in self.diag.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

fn min_abs_in(a: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(input: &Matrix) -> Snf {
    let (m, n) = input.shape();
    let mut a = input.clone();
    let mut u = Matrix::identity(m);
    let mut u_inv = Matrix::identity(m);
    let mut v = Matrix::identity(n);
    let mut diag = Vec::new();

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_in(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                let nq = -&q;
                a.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                u_inv.add_col_multiple(t, i, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                let nq = -&q;
                a.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = a.get(i, t);
                    if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = a.get(t, j);
                    if !x.is_zero() && x.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                    u_inv.swap_cols(t, best.0);
                } else if best.1 != t {
                    a.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // pivot must divide the remaining block
            let p = a.get(t, t).clone();
            let mut bad = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !a.get(i, j).is_multiple_of(&p) {
                        bad = Some(i);
                        break 'search;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = Int::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        diag.push(a.get(t, t).clone());
    }
    Snf { u, u_inv, v, diag, rows: m, cols: n }
}

/// Column-echelon form `e = a * v` with `v` unimodular.
///
/// Pivot rows are strictly increasing; columns `pivots.len()..` of `e` are zero,
/// so the matching columns of `v` span the integer kernel of `a`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub e: Matrix,
    pub v: Matrix,
    /// `(row, col)` of each pivot; col equals its position in this list.
    pub pivots: Vec<usize>,
}

pub fn column_echelon(input: &Matrix) -> ColumnEchelon {
    let (m, n) = input.shape();
    let mut a = input.clone();
    let mut v = Matrix::identity(n);
    let mut pivots = Vec::new();
    let mut c = 0;
    for r in 0..m {
        if c >= n {
            break;
        }
        // gcd-combine entries a[r][c..] into column c
        loop {
            let mut best: Option<usize> = None;
            for j in c..n {
                let x = a.get(r, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a.get(r, b).abs() <= x.abs() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else { break };
            a.swap_cols(c, b);
            v.swap_cols(c, b);
            let mut done = true;
            for j in c + 1..n {
                if a.get(r, j).is_zero() {
                    continue;
                }
                let q = -a.get(r, j).div_floor(a.get(r, c));
                a.add_col_multiple(j, c, &q);
                v.add_col_multiple(j, c, &q);
                if !a.get(r, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_col(c);
            v.negate_col(c);
        }
        // reduce earlier pivot columns to keep entries small
        for k in 0..c {
            let q = a.get(r, k).div_floor(a.get(r, c));
            if !q.is_zero() {
                let nq = -q;
                a.add_col_multiple(k, c, &nq);
                v.add_col_multiple(k, c, &nq);
            }
        }
        pivots.push(r);
        c += 1;
    }
    ColumnEchelon { e: a, v, pivots }
}

/// Basis (as columns) of `{x in Z^n : a x = 0}`.
pub fn integer_kernel(a: &Matrix) -> Matrix {
    let ce = column_echelon(a);
    let r = ce.pivots.len();
    let idx: Vec<usize> = (r..a.cols()).collect();
    ce.v.select_columns(&idx)
}

/// Some integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &Matrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "solve_integer shape mismatch");
    let ce = column_echelon(a);
    let mut y = vec![Int::zero(); a.cols()];
    let mut resid = b.to_vec();
    for (c, &r) in ce.pivots.iter().enumerate() {
        // rows before r that are not pivots must already vanish
        let p = ce.e.get(r, c);
        let (q, rem) = resid[r].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        for i in r..a.rows() {
            let x = ce.e.get(i, c);
            if !x.is_zero() {
                resid[i] -= x * &q;
            }
        }
        y[c] = q;
    }
    if resid.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(ce.v.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::matrix::ints;

    fn check_snf(a: &Matrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d());
        assert_eq!(&s.u * &s.u_inv, Matrix::identity(a.rows()));
        for w in s.diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn coprime_diagonal() {
        let s = check_snf(&Matrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diag, ints(&[1, 6]));
    }

    #[test]
    fn zero_and_identity() {
        let s = check_snf(&Matrix::zeros(2, 3));
        assert!(s.diag.is_empty());
        assert_eq!(s.u, Matrix::identity(2));
        assert_eq!(s.v, Matrix::identity(3));
        let s = check_snf(&Matrix::identity(3));
        assert_eq!(s.diag, ints(&[1, 1, 1]));
    }

    #[test]
    fn rectangular() {
        let s = check_snf(&Matrix::from_i64_rows(&[vec![4, 6, 8], vec![2, 10, -4]]));
        assert_eq!(s.diag, ints(&[2, 2]));
    }

    #[test]
    fn kernel_and_solve() {
        let a = Matrix::from_i64_rows(&[vec![1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
        let a = Matrix::from_i64_rows(&[vec![2, 4], vec![0, 6]]);
        let x = solve_integer(&a, &ints(&[6, 6])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[6, 6]));
        assert!(solve_integer(&a, &ints(&[1, 0])).is_none());
    }
}
