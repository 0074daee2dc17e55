//! Axiom checks for Green and Tambara functors, with norm identities verified on grids.

use crate::error::Result;
use crate::gsets::{norm_sum_diagram, NormSumDiagram, SubgroupId};
use crate::poly::{simplex_points, to_ints};
use crate::report::Report;
use crate::zmod::{unit_vec, Int};

use super::functor::TambaraFunctor;

const GREEN: &str = "levelwise commutative rings with ring-map restrictions";
const FROB: &str = "Frobenius reciprocity";
const NORM: &str = "norms are maps of multiplicative monoids";
const NORM_SUM: &str = "norm of a sum as a sum of transfers of norms";

fn fmt_vec(v: &[Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Simplex grid points for a level, of the given degree.
fn grid(r: usize, degree: usize) -> Vec<Vec<Int>> {
    simplex_points(r, degree).iter().map(|p| to_ints(p)).collect()
}

/// Pairs `(a, b)` covering a bidegree `(d, d)` identity.
fn grid_pairs(r: usize, degree: usize) -> Vec<(Vec<Int>, Vec<Int>)> {
    let pts = grid(r, degree);
    let mut out = Vec::with_capacity(pts.len() * pts.len());
    for a in &pts {
        for b in &pts {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// The Green functor axioms: ring laws, ring-map restrictions and conjugations, Frobenius reciprocity.
pub fn check_green(r: &TambaraFunctor) -> Report {
    let mut rep = r.mackey().validate();
    let g = r.group().clone();
    let n = g.num_subgroups();
    let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
    for id in ["green.ring", "green.res_ring_map", "green.conj_ring_map", "green.frobenius"] {
        rep.declare(id, if id == "green.frobenius" { FROB } else { GREEN });
    }
    for h in 0..n {
        let lv = r.level(h);
        let m = lv.ngens();
        let e = |i| unit_vec(m, i);
        for mat in &r.mul_table(h).mats {
            rep.record("green.ring", GREEN, lv.accepts_map_from(lv, mat), || {
                format!("product not well defined at {}", lab(h))
            });
        }
        for col in lv.relations().columns() {
            let zero = r.mul_table(h).left(&col);
            let ok = lv.same_map(&zero, &crate::zmod::Matrix::zeros(m, m));
            rep.record("green.ring", GREEN, ok, || format!("relation times generator is nonzero at {}", lab(h)));
        }
        for i in 0..m {
            if let Some(u) = r.unit(h) {
                rep.record("green.ring", GREEN, r.eq(h, &r.mul(h, u, &e(i)), &e(i)), || {
                    format!("unit law at {}", lab(h))
                });
            }
            for j in 0..m {
                let ab = r.mul(h, &e(i), &e(j));
                rep.record("green.ring", GREEN, r.eq(h, &ab, &r.mul(h, &e(j), &e(i))), || {
                    format!("commutativity at {} on generators {i},{j}", lab(h))
                });
                for k in 0..m {
                    let lhs = r.mul(h, &ab, &e(k));
                    let rhs = r.mul(h, &e(i), &r.mul(h, &e(j), &e(k)));
                    rep.record("green.ring", GREEN, r.eq(h, &lhs, &rhs), || {
                        format!("associativity at {} on generators {i},{j},{k}", lab(h))
                    });
                }
            }
        }
    }
    for k in 0..n {
        let mk = r.ngens(k);
        for h in g.subgroups_of(k) {
            let mh = r.ngens(h);
            for i in 0..mk {
                for j in 0..mk {
                    let (a, b) = (unit_vec(mk, i), unit_vec(mk, j));
                    let lhs = r.res(k, h, &r.mul(k, &a, &b));
                    let rhs = r.mul(h, &r.res(k, h, &a), &r.res(k, h, &b));
                    rep.record("green.res_ring_map", GREEN, r.eq(h, &lhs, &rhs), || {
                        format!("res {} -> {} on generators {i},{j}", lab(k), lab(h))
                    });
                }
                for j in 0..mh {
                    let (a, b) = (unit_vec(mk, i), unit_vec(mh, j));
                    let lhs = r.mul(k, &a, &r.tr(k, h, &b));
                    let rhs = r.tr(k, h, &r.mul(h, &r.res(k, h, &a), &b));
                    rep.record("green.frobenius", FROB, r.eq(k, &lhs, &rhs), || {
                        format!("a tr(b) != tr(res(a) b) for {} < {}, generators {i},{j}", lab(h), lab(k))
                    });
                }
            }
            if let (Some(uk), Some(uh)) = (r.unit(k), r.unit(h)) {
                rep.record("green.res_ring_map", GREEN, r.eq(h, &r.res(k, h, uk), uh), || {
                    format!("res {} -> {} does not preserve 1", lab(k), lab(h))
                });
            }
        }
    }
    for x in g.generators() {
        for h in 0..n {
            let xh = g.conj_subgroup(x, h);
            let m = r.ngens(h);
            for i in 0..m {
                for j in 0..m {
                    let (a, b) = (unit_vec(m, i), unit_vec(m, j));
                    let lhs = r.conj(x, h, &r.mul(h, &a, &b));
                    let rhs = r.mul(xh, &r.conj(x, h, &a), &r.conj(x, h, &b));
                    rep.record("green.conj_ring_map", GREEN, r.eq(xh, &lhs, &rhs), || {
                        format!("conjugation by {} on {}", g.element_name(x), lab(h))
                    });
                }
            }
        }
    }
    rep
}

/// All Tambara axioms; norm identities are checked on grids of the appropriate degree
/// (raised to `grid_bound` when given).
pub fn check_tambara(r: &TambaraFunctor, grid_bound: Option<usize>) -> Report {
    let mut rep = check_green(r);
    let g = r.group().clone();
    let n = g.num_subgroups();
    let lab = |h: SubgroupId| g.subgroup_label(h).to_string();
    let deg = |d: usize| grid_bound.map_or(d, |b| b.max(d));
    for id in [
        "tambara.norm_well_defined",
        "tambara.norm_multiplicative",
        "tambara.norm_transitive",
        "tambara.norm_conj",
        "tambara.norm_res",
        "tambara.norm_of_sum",
    ] {
        rep.declare(id, if id.ends_with("of_sum") { NORM_SUM } else { NORM });
    }
    if r.is_unital() {
        rep.declare("tambara.norm_unit", NORM);
    }
    for k in 0..n {
        for h in g.subgroups_of(k) {
            if h == k {
                continue;
            }
            let d = g.index(h, k);
            let rh = r.ngens(h);
            let pts = grid(rh, deg(d));
            for rel in r.level(h).relations().columns() {
                for x in &pts {
                    let shifted: Vec<Int> = x.iter().zip(&rel).map(|(a, b)| a + b).collect();
                    let ok = r.eq(k, &r.norm(k, h, x), &r.norm(k, h, &shifted));
                    rep.record("tambara.norm_well_defined", NORM, ok, || {
                        format!("N_{}^{} differs on {} and a relation shift", lab(h), lab(k), fmt_vec(x))
                    });
                }
            }
            if let (Some(uh), Some(uk)) = (r.unit(h), r.unit(k)) {
                rep.record("tambara.norm_unit", NORM, r.eq(k, &r.norm(k, h, uh), uk), || {
                    format!("N_{}^{}(1) != 1", lab(h), lab(k))
                });
            }
            for (a, b) in grid_pairs(rh, deg(d)) {
                let lhs = r.norm(k, h, &r.mul(h, &a, &b));
                let rhs = r.mul(k, &r.norm(k, h, &a), &r.norm(k, h, &b));
                rep.record("tambara.norm_multiplicative", NORM, r.eq(k, &lhs, &rhs), || {
                    format!("N_{}^{}(ab) != N(a)N(b) at a={}, b={}", lab(h), lab(k), fmt_vec(&a), fmt_vec(&b))
                });
            }
            for l in g.subgroups_of(h) {
                if l == h {
                    continue;
                }
                for x in grid(r.ngens(l), deg(g.index(l, k))) {
                    let lhs = r.norm(k, h, &r.norm(h, l, &x));
                    let rhs = r.norm(k, l, &x);
                    rep.record("tambara.norm_transitive", NORM, r.eq(k, &lhs, &rhs), || {
                        format!(
                            "N_{}^{} N_{}^{} != N_{}^{} at {}",
                            lab(h),
                            lab(k),
                            lab(l),
                            lab(h),
                            lab(l),
                            lab(k),
                            fmt_vec(&x)
                        )
                    });
                }
            }
            for x in g.generators() {
                let (xk, xh) = (g.conj_subgroup(x, k), g.conj_subgroup(x, h));
                for a in &pts {
                    let lhs = r.conj(x, k, &r.norm(k, h, a));
                    let rhs = r.norm(xk, xh, &r.conj(x, h, a));
                    rep.record("tambara.norm_conj", NORM, r.eq(xk, &lhs, &rhs), || {
                        format!("conjugation by {} and N_{}^{} at {}", g.element_name(x), lab(h), lab(k), fmt_vec(a))
                    });
                }
            }
            for l in g.subgroups_of(k) {
                for a in &pts {
                    let lhs = r.res(k, l, &r.norm(k, h, a));
                    let rhs = multiplicative_double_coset(r, k, l, h, a);
                    rep.record("tambara.norm_res", NORM, r.eq(l, &lhs, &rhs), || {
                        format!("res^{}_{} N_{}^{} at {}", lab(k), lab(l), lab(h), lab(k), fmt_vec(a))
                    });
                }
            }
            match check_norm_of_sum(r, h, k, grid_bound) {
                Ok(sub) => rep.merge(sub),
                Err(e) => rep.record("tambara.norm_of_sum", NORM_SUM, false, || e.to_string()),
            }
        }
    }
    rep
}

/// `Π_{x ∈ L\K/H} N^L_{L∩xHx⁻¹} c_x res^H_{x⁻¹Lx∩H}(a)`.
pub fn multiplicative_double_coset(
    r: &TambaraFunctor,
    k: SubgroupId,
    l: SubgroupId,
    h: SubgroupId,
    a: &[Int],
) -> Vec<Int> {
    let g = r.group();
    let mut acc: Option<Vec<Int>> = None;
    for x in g.double_coset_reps(l, k, h) {
        let inner = g.intersection(g.conj_subgroup(g.inv(x), l), h);
        let outer = g.conj_subgroup(x, inner);
        let t = r.norm(l, outer, &r.conj(x, inner, &r.res(h, inner, a)));
        acc = Some(match acc {
            None => t,
            Some(p) => r.mul(l, &p, &t),
        });
    }
    acc.expect("at least one double coset")
}

/// The graded pieces `T_{f_k} N_{g_k} R_{h_k}(a, b)` of `N_H^K(a + b)`.
pub fn norm_sum_pieces(r: &TambaraFunctor, nsd: &NormSumDiagram, a: &[Int], b: &[Int]) -> Result<Vec<Vec<Int>>> {
    let ab: Vec<Int> = a.iter().chain(b).cloned().collect();
    nsd.pieces
        .iter()
        .map(|p| {
            let x = r.restrict_along(&p.h, &ab);
            let y = r.norm_along(&p.g, &x)?;
            Ok(r.transfer_along(&p.f, &y))
        })
        .collect()
}

/// Verifies `N(a+b) = Σ_k T_{f_k} N_{g_k} R_{h_k}(a,b)` on the simplex grid of degree `[K:H]`
/// in the coordinates of `(a, b)`.
pub fn check_norm_of_sum(
    r: &TambaraFunctor,
    h: SubgroupId,
    k: SubgroupId,
    grid_bound: Option<usize>,
) -> Result<Report> {
    let g = r.group().clone();
    let mut rep = Report::new();
    rep.declare("tambara.norm_of_sum", NORM_SUM);
    let nsd = norm_sum_diagram(&g, h, k)?;
    let d = grid_bound.map_or(g.index(h, k), |b| b.max(g.index(h, k)));
    let rh = r.ngens(h);
    for p in simplex_points(2 * rh, d) {
        let p = to_ints(&p);
        let (a, b) = p.split_at(rh);
        let pieces = norm_sum_pieces(r, &nsd, a, b)?;
        let mut rhs = vec![Int::from(0); r.ngens(k)];
        for piece in &pieces {
            rhs = crate::zmod::add_vec(&rhs, piece);
        }
        let sum: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let lhs = r.norm(k, h, &sum);
        rep.record("tambara.norm_of_sum", NORM_SUM, r.eq(k, &lhs, &rhs), || {
            format!(
                "N_{}^{}(a+b) at a={}, b={}: {} vs {}",
                g.subgroup_label(h),
                g.subgroup_label(k),
                fmt_vec(a),
                fmt_vec(b),
                fmt_vec(&lhs),
                fmt_vec(&rhs)
            )
        });
    }
    Ok(rep)
}
