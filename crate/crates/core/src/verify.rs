//! Check suites over a group: axioms, bispan functoriality, square-zero extensions, derivations and
//! Kähler differentials, aggregated into one report.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::bispan::{check_functoriality, random_word, WordConfig};
use crate::error::{Error, Result};
use crate::gsets::FiniteGroup;
use crate::kahler::{classify_over_itself, der_hom_bijection, kahler, kernel_is_subtambara, Algebra};
use crate::mackey::{GreenModule, MackeyHom};
use crate::poly::{simplex_points, to_ints};
use crate::report::Report;
use crate::tambara::{
    burnside, check_tambara, fixed_points, kernel_ideal, localize, BurnsideBasis, RingWithAction, SquareZero,
    TambaraFunctor, DEFAULT_DEPTH,
};
use crate::zmod::Matrix;

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub grid_bound: Option<usize>,
    pub depth: usize,
    /// Random bispan words per group.
    pub words: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 7, grid_bound: None, depth: DEFAULT_DEPTH, words: 200 }
    }
}

/// Burnside and four fixed-point functors: `Z`, `F_2`, functions on the smallest nontrivial orbit
/// `G/H`, and `F_2[ε]`.
pub fn family(g: &Arc<FiniteGroup>) -> Result<Vec<(String, Arc<TambaraFunctor>)>> {
    let top = g.whole_group();
    let h = (0..g.num_subgroups()).filter(|&h| h != top).min_by_key(|&h| g.index(h, top)).unwrap_or(top);
    let orbit = crate::gsets::GSet::coset_space(g, h);
    let rings = [
        ("integers", RingWithAction::integers(g, 0)),
        ("integers_mod_2", RingWithAction::integers(g, 2)),
        ("functions_on_orbit", RingWithAction::functions_on(g, orbit.action_table(), 0)),
        ("dual_numbers_mod_2", RingWithAction::quadratic(g, 0, |_| 1).modulo(2)),
    ];
    let mut out = vec![("burnside".to_string(), Arc::new(burnside(g)))];
    for (name, ring) in rings {
        out.push((name.to_string(), Arc::new(fixed_points(&ring)?)));
    }
    Ok(out)
}

/// Whether every level is finite, so that hom sets can be enumerated.
pub fn is_finite(r: &TambaraFunctor) -> bool {
    (0..r.group().num_subgroups()).all(|h| r.level(h).is_finite())
}

/// Mackey axioms, Green axioms and the norm laws including the norm-of-sum decomposition.
pub fn axioms(r: &TambaraFunctor, grid_bound: Option<usize>) -> Report {
    let mut rep = r.mackey().validate();
    rep.merge(check_tambara(r, grid_bound));
    rep
}

/// `eval(p ∘ q) = eval(p) ∘ eval(q)` on the Burnside functor for random composable words.
pub fn functoriality(g: &Arc<FiniteGroup>, words: usize, seed: u64) -> Result<Report> {
    let a = burnside(g);
    let cfg = WordConfig::default();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = Report::new();
    for _ in 0..words {
        let w = random_word(g, &mut rng, &cfg);
        rep.merge(check_functoriality(&a, &w, &mut rng, &cfg)?);
    }
    Ok(rep)
}

const IDEAL_NORMS: &str = "norms vanish on the augmentation ideal of a square-zero extension";
const IDEAL_PRODUCTS: &str = "products vanish on the augmentation ideal of a square-zero extension";
const IDEAL_MODULE: &str = "the augmentation ideal of R ⋉ M is M";

/// `M → ker(R ⋉ M → R)` through the inclusion of `M`.
pub fn ideal_comparison(sz: &SquareZero) -> Result<MackeyHom> {
    let ideal = kernel_ideal(&sz.augmentation)?;
    let g = sz.ext.group();
    let mut maps = Vec::with_capacity(g.num_subgroups());
    for h in 0..g.num_subgroups() {
        let inc = sz.inclusion.map(h);
        let cols = (0..inc.cols())
            .map(|j| {
                sz.ext.level(h).solve_in_span(ideal.inclusion.map(h), &inc.column(j)).ok_or_else(|| {
                    Error::Invalid(format!("M is not inside the augmentation ideal at {}", g.subgroup_label(h)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(Matrix::from_columns(ideal.functor.ngens(h), &cols));
    }
    Ok(MackeyHom::new(sz.module.module.clone(), ideal.functor.mackey().clone(), maps))
}

/// The extension's axioms, vanishing of products and norms on its ideal, and `I(R ⋉ M) ≅ M`.
pub fn square_zero_laws(sz: &SquareZero, grid_bound: Option<usize>) -> Result<Report> {
    let mut rep = axioms(&sz.ext, grid_bound).prefixed("extension");
    let ideal = kernel_ideal(&sz.augmentation)?;
    let (i, g) = (&ideal.functor, sz.ext.group());
    rep.declare("square_zero.ideal_norms", IDEAL_NORMS);
    rep.declare("square_zero.ideal_products", IDEAL_PRODUCTS);
    for k in 0..g.num_subgroups() {
        let q = i.ngens(k);
        for a in 0..q {
            for b in 0..q {
                let e = |j: usize| crate::zmod::unit_vec(q, j);
                let ab = i.mul(k, &e(a), &e(b));
                rep.record("square_zero.ideal_products", IDEAL_PRODUCTS, i.level(k).is_zero_element(&ab), || {
                    format!("generators {a}, {b} at {} multiply to {ab:?}", g.subgroup_label(k))
                });
            }
        }
        for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
            let d = grid_bound.map_or(g.index(h, k), |b| b.max(g.index(h, k)));
            for p in simplex_points(i.ngens(h), d) {
                let x = to_ints(&p);
                let y = i.norm(k, h, &x);
                rep.record("square_zero.ideal_norms", IDEAL_NORMS, i.level(k).is_zero_element(&y), || {
                    format!("N_{}^{}({x:?}) = {y:?}", g.subgroup_label(h), g.subgroup_label(k))
                });
            }
        }
    }
    let phi = ideal_comparison(sz)?;
    let ok = phi.check().passed() && phi.is_isomorphism();
    rep.record("square_zero.ideal_is_module", IDEAL_MODULE, ok, || "M → I(R ⋉ M) is not an isomorphism".into());
    Ok(rep)
}

/// Maps `R → R ⋉ R` over `R` against genuine derivations; levels must be finite.
pub fn classification(r: &Arc<TambaraFunctor>, grid_bound: Option<usize>) -> Result<Report> {
    let c = classify_over_itself(&Algebra::over_burnside(r), &GreenModule::regular(r), grid_bound)?;
    Ok(c.report)
}

/// The universal derivation, `Der ≅ Hom(Ω, −)` for `R` and `Ω`, and kernels of basis derivations.
pub fn kahler_laws(alg: &Algebra, grid_bound: Option<usize>) -> Result<Report> {
    let k = kahler(alg)?;
    let mut rep = k.check(grid_bound);
    let r = &alg.structure.target;
    for (name, m) in [("regular", GreenModule::regular(r)), ("omega", k.omega.clone())] {
        let b = der_hom_bijection(&k, &m)?;
        rep.merge(b.report.prefixed(name));
        for d in b.derivations.basis() {
            rep.merge(kernel_is_subtambara(alg, &d).prefixed(name));
        }
    }
    Ok(rep)
}

const ETALE: &str = "localizations are formally étale";

/// Burnside `C2` with `[C2/e]` inverted: the multiplication map on the box square is an isomorphism,
/// `Ω = 0`, and the localization stabilizes by depth 3.
pub fn localization(depth: usize) -> Result<Report> {
    let g = FiniteGroup::cyclic(2);
    let a = Arc::new(burnside(&g));
    let top = g.whole_group();
    let mut s = vec![num_traits::Zero::zero(); a.ngens(top)];
    s[BurnsideBasis::new(&g).index_of(top, g.trivial_subgroup())] = num_traits::One::one();
    let mut rep = Report::new();
    let loc = match localize(&a, &s, depth) {
        Ok(loc) => loc,
        Err(Error::Undecided(why)) => {
            rep.undecided("localization.depth", ETALE, why);
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    rep.record("localization.depth", ETALE, loc.depth <= 3, || format!("stabilized at depth {}", loc.depth));
    let k = kahler(&Algebra::new(loc.map.clone()))?;
    rep.record("localization.multiplication_iso", ETALE, k.kernel.multiplication.mackey.is_isomorphism(), || {
        "R □_S R → R is not an isomorphism".into()
    });
    rep.record("localization.omega_zero", ETALE, k.omega.module.is_zero(), || format!("Ω = {:?}", k.omega.module));
    rep.merge(k.check(None).prefixed("localization"));
    Ok(rep)
}

/// All suites for one group, keyed by instance name.
pub fn suite(g: &Arc<FiniteGroup>, opts: &SuiteOptions) -> Result<Report> {
    let mut rep = Report::new();
    let fam = family(g)?;
    for (name, r) in &fam {
        rep.merge(axioms(r, opts.grid_bound).prefixed(&format!("axioms.{name}")));
        let sz = crate::tambara::square_zero(r, &GreenModule::regular(r))?;
        rep.merge(square_zero_laws(&sz, opts.grid_bound)?.prefixed(&format!("square_zero.{name}")));
        if is_finite(r) {
            rep.merge(classification(r, opts.grid_bound)?.prefixed(&format!("classification.{name}")));
        }
    }
    rep.merge(functoriality(g, opts.words, opts.seed)?);
    let dual = Arc::new(fixed_points(&RingWithAction::quadratic(g, 0, |_| 1))?);
    rep.merge(kahler_laws(&Algebra::over_burnside(&dual), opts.grid_bound)?.prefixed("kahler.dual_numbers"));
    if g.order() == 2 {
        rep.merge(localization(opts.depth)?);
    }
    Ok(rep.sorted())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        for name in ["C2", "C3", "C4", "C2xC2", "S3"] {
            let g = FiniteGroup::by_name(name).unwrap();
            let rep = suite(&g, &SuiteOptions { words: 20, ..Default::default() }).unwrap();
            assert!(rep.passed(), "{name}: {:?}", rep.failures().next());
            assert!(rep.checks.iter().any(|c| c.id.contains("norm_of_sum") && c.instances > 0));
            assert!(rep.checks.iter().any(|c| c.id.starts_with("classification.") && c.instances > 0));
        }
    }
}
