//! Integer-valued polynomial maps `Z^r → Z^s` in the binomial basis `Π C(x_i, k_i)`.
//!
//! A map of total degree `≤ d` is determined by its values on the simplex grid
//! `{x ≥ 0, Σ x_i ≤ d}`; the coefficients are iterated finite differences at 0.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::zmod::Int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPoly {
    nvars: usize,
    degree: usize,
    out_dim: usize,
    /// Multi-index `k` with coefficient vector, zero coefficients omitted.
    terms: Vec<(Vec<usize>, Vec<Int>)>,
}

/// All `x ∈ N^r` with `Σ x_i ≤ d`, in graded lexicographic order.
pub fn simplex_points(nvars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; nvars];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum::<usize>()).then_with(|| a.cmp(b)));
    out
}

/// All `x ∈ N^r` with every `x_i ≤ d`.
pub fn box_points(nvars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=degree).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn binomial(x: &Int, k: usize) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 0..k {
        num *= x - Int::from(i);
        den *= Int::from(i + 1);
    }
    num / den
}

fn small_binomial(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

pub fn to_ints(p: &[usize]) -> Vec<Int> {
    p.iter().map(|&v| Int::from(v)).collect()
}

impl NewtonPoly {
    /// Interpolates `f` from its values on the simplex grid of the given degree.
    pub fn interpolate(nvars: usize, degree: usize, out_dim: usize, mut f: impl FnMut(&[Int]) -> Vec<Int>) -> Self {
        let pts = simplex_points(nvars, degree);
        let values: HashMap<Vec<usize>, Vec<Int>> = pts
            .iter()
            .map(|p| {
                let v = f(&to_ints(p));
                assert_eq!(v.len(), out_dim, "interpolated map has the wrong output size");
                (p.clone(), v)
            })
            .collect();
        Self::from_values(nvars, degree, out_dim, &values)
    }

    /// Builds the polynomial from values on every point of the simplex grid.
    pub fn from_values(nvars: usize, degree: usize, out_dim: usize, values: &HashMap<Vec<usize>, Vec<Int>>) -> Self {
        let pts = simplex_points(nvars, degree);
        let mut terms = Vec::new();
        for k in &pts {
            // Δ^k f(0) = Σ_{j ≤ k} (-1)^{|k|-|j|} Π C(k_i, j_i) f(j)
            let mut coeff = vec![Int::zero(); out_dim];
            for j in box_below(k) {
                let sign = if (k.iter().sum::<usize>() - j.iter().sum::<usize>()) % 2 == 0 { 1 } else { -1 };
                let c: i64 = sign * k.iter().zip(&j).map(|(&a, &b)| small_binomial(a, b)).product::<i64>();
                let v = &values[&j];
                for (o, x) in coeff.iter_mut().zip(v) {
                    *o += x * Int::from(c);
                }
            }
            if coeff.iter().any(|c| !c.is_zero()) {
                terms.push((k.clone(), coeff));
            }
        }
        Self { nvars, degree, out_dim, terms }
    }

    pub fn zero(nvars: usize, degree: usize, out_dim: usize) -> Self {
        Self { nvars, degree, out_dim, terms: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn terms(&self) -> &[(Vec<usize>, Vec<Int>)] {
        &self.terms
    }

    pub fn eval(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.nvars, "polynomial evaluated at a point of the wrong size");
        let mut out = vec![Int::zero(); self.out_dim];
        let mut cache: HashMap<(usize, usize), Int> = HashMap::new();
        for (k, c) in &self.terms {
            let mut b = Int::one();
            for (i, &ki) in k.iter().enumerate() {
                if ki > 0 {
                    b *= cache.entry((i, ki)).or_insert_with(|| binomial(&x[i], ki)).clone();
                }
            }
            if b.is_zero() {
                continue;
            }
            for (o, ci) in out.iter_mut().zip(c) {
                *o += ci * &b;
            }
        }
        out
    }

    /// Applies `f` to every coefficient vector (e.g. to reduce modulo relations).
    pub fn map_coeffs(&self, out_dim: usize, f: impl Fn(&[Int]) -> Vec<Int>) -> Self {
        let terms =
            self.terms.iter().map(|(k, c)| (k.clone(), f(c))).filter(|(_, c)| c.iter().any(|v| !v.is_zero())).collect();
        Self { nvars: self.nvars, degree: self.degree, out_dim, terms }
    }
}

fn box_below(k: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &ki in k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=ki).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::ints;

    #[test]
    fn interpolates_quadratic() {
        // (x^2 - x)/2 is integer valued
        let p = NewtonPoly::interpolate(1, 2, 1, |x| vec![(&x[0] * &x[0] - &x[0]) / Int::from(2)]);
        for v in -5i64..6 {
            assert_eq!(p.eval(&ints(&[v])), ints(&[(v * v - v) / 2]));
        }
        assert_eq!(p.terms().len(), 1);
    }

    #[test]
    fn interpolates_bivariate_product() {
        let p = NewtonPoly::interpolate(2, 2, 2, |x| vec![&x[0] * &x[1], &x[0] + Int::from(3)]);
        for a in -3i64..4 {
            for b in -3i64..4 {
                assert_eq!(p.eval(&ints(&[a, b])), ints(&[a * b, a + 3]));
            }
        }
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(simplex_points(2, 2).len(), 6);
        assert_eq!(simplex_points(3, 0).len(), 1);
        assert_eq!(box_points(2, 2).len(), 9);
        assert_eq!(binomial(&Int::from(-2), 2), Int::from(3));
    }
}
