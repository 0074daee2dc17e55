//! End-to-end acceptance checks, one line per criterion.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use eqalg::gsets::{FiniteGroup, SubgroupId};
use eqalg::kahler::{
    classify_over_itself, der_hom_bijection, derivation_space, is_genuine_derivation, kahler, kernel_is_subtambara,
    submodule_generated, Algebra, KahlerModule,
};
use eqalg::mackey::{module_hom_space, GreenModule, MackeyHom};
use eqalg::poly::{simplex_points, to_ints, NewtonPoly};
use eqalg::report::Report;
use eqalg::tambara::{fixed_points, square_zero, RingWithAction, SquareZero, TambaraFunctor};
use eqalg::verify;
use eqalg::zmod::{unit_vec, Int, Matrix};

type Outcome = Result<String, String>;

const GROUPS: [&str; 5] = ["C2", "C3", "C4", "C2xC2", "S3"];

fn group(name: &str) -> Arc<FiniteGroup> {
    FiniteGroup::by_name(name).expect("builtin group")
}

fn first_failure(rep: &Report) -> String {
    rep.failures().next().map_or_else(String::new, |c| format!("{}: {}", c.id, c.witness.clone().unwrap_or_default()))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn instances(rep: &Report, id: &str) -> usize {
    rep.checks.iter().filter(|c| c.id == id || c.id.ends_with(&format!(".{id}"))).map(|c| c.instances).sum()
}

fn proper_pairs(g: &FiniteGroup) -> Vec<(SubgroupId, SubgroupId)> {
    let n = g.num_subgroups();
    (0..n).flat_map(|k| g.subgroups_of(k).into_iter().filter(move |&h| h != k).map(move |h| (k, h))).collect()
}

fn axioms() -> Outcome {
    let mut functors = 0;
    for name in GROUPS {
        let g = group(name);
        let fam = verify::family(&g).map_err(|e| e.to_string())?;
        ensure(fam.len() >= 4, || format!("{name}: only {} fixed-point instances", fam.len() - 1))?;
        for (inst, r) in &fam {
            let rep = verify::axioms(r, None);
            ensure(rep.passed(), || format!("{name}/{inst}: {}", first_failure(&rep)))?;
            ensure(instances(&rep, "green.frobenius") > 0, || format!("{name}/{inst}: Frobenius not exercised"))?;
            functors += 1;
        }
        // negative control: doubling the top norm out of the trivial subgroup
        let r = &fam[0].1;
        let (k, h) = (g.whole_group(), g.trivial_subgroup());
        let p = NewtonPoly::interpolate(r.ngens(h), g.index(h, k), r.ngens(k), |x| {
            r.norm(k, h, x).into_iter().map(|c| c * 2).collect()
        });
        let bad = r.with_norm(k, h, p);
        let rep = verify::axioms(&bad, None);
        let witness = rep.failures().next().and_then(|c| c.witness.clone());
        ensure(!rep.passed() && witness.is_some(), || format!("{name}: corrupted norm was not caught"))?;
    }
    Ok(format!("{functors} functors over 5 groups; corrupted norms rejected with witnesses"))
}

fn functoriality() -> Outcome {
    let mut words = 0;
    for name in GROUPS {
        let rep = verify::functoriality(&group(name), 200, 7).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{name}: {}", first_failure(&rep)))?;
        let n = instances(&rep, "bispan.functoriality");
        ensure(n >= 200, || format!("{name}: only {n} words"))?;
        words += n;
    }
    Ok(format!("{words} random words on Burnside functors"))
}

/// `N(a+b) = N(a) + N(b) + tr(a · c_g(b))` for `C2`, both sides interpolated as polynomials in `(a, b)`.
fn c2_closed_form(r: &TambaraFunctor) -> bool {
    let g = r.group();
    let (k, h) = (g.whole_group(), g.trivial_subgroup());
    let x = g.elements().find(|&x| x != g.identity()).expect("C2 has a generator");
    let (n, out) = (r.ngens(h), r.ngens(k));
    let target = r.level(k);
    let lhs = NewtonPoly::interpolate(2 * n, 2, out, |ab| {
        let sum: Vec<Int> = ab[..n].iter().zip(&ab[n..]).map(|(a, b)| a + b).collect();
        r.norm(k, h, &sum)
    });
    let rhs = NewtonPoly::interpolate(2 * n, 2, out, |ab| {
        let (a, b) = ab.split_at(n);
        let cross = r.tr(k, h, &r.mul(h, a, &r.conj(x, h, b)));
        let na = r.norm(k, h, a);
        let nb = r.norm(k, h, b);
        na.iter().zip(&nb).zip(&cross).map(|((p, q), c)| p + q + c).collect()
    });
    lhs.map_coeffs(out, |c| target.reduce(c)) == rhs.map_coeffs(out, |c| target.reduce(c))
}

fn norm_of_sum() -> Outcome {
    let mut checked = 0;
    for name in GROUPS {
        let g = group(name);
        for (inst, r) in verify::family(&g).map_err(|e| e.to_string())? {
            let rep = verify::axioms(&r, None);
            let c = rep.checks.iter().find(|c| c.id == "tambara.norm_of_sum").ok_or("norm-of-sum not declared")?;
            ensure(c.failures == 0 && c.instances > 0 || proper_pairs(&g).is_empty(), || {
                format!("{name}/{inst}: {}", c.witness.clone().unwrap_or_default())
            })?;
            if name == "C2" {
                ensure(c2_closed_form(&r), || format!("C2/{inst}: closed form differs"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("grid identity on {checked} functors; C2 closed form agrees symbolically"))
}

fn mod_two_instances(g: &Arc<FiniteGroup>) -> Vec<(&'static str, Arc<TambaraFunctor>)> {
    let top = g.whole_group();
    let h = (0..g.num_subgroups()).filter(|&h| h != top).min_by_key(|&h| g.index(h, top)).unwrap();
    let orbit = eqalg::gsets::GSet::coset_space(g, h);
    [
        ("constant_f2", RingWithAction::integers(g, 2)),
        ("dual_numbers_f2", RingWithAction::quadratic(g, 0, |_| 1).modulo(2)),
        ("functions_on_orbit_f2", RingWithAction::functions_on(g, orbit.action_table(), 2)),
    ]
    .into_iter()
    .map(|(n, ring)| (n, Arc::new(fixed_points(&ring).expect("valid ring"))))
    .collect()
}

fn classification() -> Outcome {
    let mut lines = Vec::new();
    for name in ["C2", "S3"] {
        let g = group(name);
        for (inst, r) in mod_two_instances(&g) {
            let alg = Algebra::over_burnside(&r);
            let c = classify_over_itself(&alg, &GreenModule::regular(&r), None).map_err(|e| e.to_string())?;
            ensure(c.report.passed(), || format!("{name}/{inst}: {}", first_failure(&c.report)))?;
            let order = c.derivations.group().order().ok_or("derivations are infinite")?;
            ensure(Int::from(c.tambara_maps.len()) == order, || {
                format!("{name}/{inst}: {} maps vs {order} derivations", c.tambara_maps.len())
            })?;
            let mut seen = c.correspondence.clone();
            seen.sort_unstable();
            seen.dedup();
            ensure(seen.len() == c.tambara_maps.len(), || format!("{name}/{inst}: correspondence is not bijective"))?;
            lines.push(format!("{name}/{inst}={}", c.tambara_maps.len()));
        }
    }
    Ok(format!("map counts {}", lines.join(" ")))
}

/// Norms and products of `(0, m)` computed directly in `R ⋉ M`.
fn ideal_vanishes(sz: &SquareZero) -> Result<usize, String> {
    let (e, g) = (&sz.ext, sz.ext.group());
    let mut count = 0;
    for h in 0..g.num_subgroups() {
        let inc = sz.inclusion.map(h);
        for i in 0..inc.cols() {
            for j in 0..inc.cols() {
                let p = e.mul(h, &inc.column(i), &inc.column(j));
                ensure(e.level(h).is_zero_element(&p), || format!("product of ideal generators at {h}"))?;
            }
        }
    }
    for (k, h) in proper_pairs(g) {
        let q = sz.module.module.level(h).ngens();
        for p in simplex_points(q, g.index(h, k)) {
            let x = sz.inclusion.apply(h, &to_ints(&p));
            let y = e.norm(k, h, &x);
            ensure(e.level(k).is_zero_element(&y), || {
                format!("N_{}^{} of {p:?} is {y:?}", g.subgroup_label(h), g.subgroup_label(k))
            })?;
            count += 1;
        }
    }
    Ok(count)
}

fn vanishing_norms() -> Outcome {
    let mut points = 0;
    let mut extensions = 0;
    for name in GROUPS {
        let g = group(name);
        for (inst, r) in verify::family(&g).map_err(|e| e.to_string())? {
            let sz = square_zero(&r, &GreenModule::regular(&r)).map_err(|e| e.to_string())?;
            points += ideal_vanishes(&sz).map_err(|e| format!("{name}/{inst}: {e}"))?;
            let rep = verify::square_zero_laws(&sz, None).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("{name}/{inst}: {}", first_failure(&rep)))?;
            extensions += 1;
        }
    }
    Ok(format!("{extensions} extensions, {points} grid points"))
}

fn dual_numbers(g: &Arc<FiniteGroup>) -> Arc<TambaraFunctor> {
    Arc::new(fixed_points(&RingWithAction::quadratic(g, 0, |_| 1)).expect("valid ring"))
}

fn sqrt_two() -> Arc<TambaraFunctor> {
    let g = group("C2");
    let e = g.identity();
    Arc::new(fixed_points(&RingWithAction::quadratic(&g, 2, |x| if x == e { 1 } else { -1 })).expect("valid ring"))
}

/// Multiplication by `res(r)` at every level, for `r` at the top.
fn scalar_map(m: &GreenModule, r: &[Int]) -> MackeyHom {
    let g = m.group();
    let top = g.whole_group();
    let maps = (0..g.num_subgroups()).map(|h| m.act_matrix(h, &m.ring.res(top, h, r))).collect();
    MackeyHom::new(m.module.clone(), m.module.clone(), maps)
}

/// `I(R ⋉ f)` on augmentation ideals, read off through the ideal inclusions.
fn ideal_map(a: &SquareZero, b: &SquareZero, f: &MackeyHom) -> Result<Vec<Matrix>, String> {
    let big = a.functorial(b, f);
    let ia = eqalg::tambara::kernel_ideal(&a.augmentation).map_err(|e| e.to_string())?;
    let ib = eqalg::tambara::kernel_ideal(&b.augmentation).map_err(|e| e.to_string())?;
    let g = a.ext.group();
    (0..g.num_subgroups())
        .map(|h| {
            let cols = (0..ia.functor.ngens(h))
                .map(|j| {
                    let y = big.apply(h, &ia.inclusion.map(h).column(j));
                    b.ext.level(h).solve_in_span(ib.inclusion.map(h), &y).ok_or("image leaves the ideal".to_string())
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_columns(ib.functor.ngens(h), &cols))
        })
        .collect()
}

fn equivalence() -> Outcome {
    let c2 = group("C2");
    let burn = Arc::new(eqalg::tambara::burnside(&c2));
    let dual = dual_numbers(&c2);
    let root = sqrt_two();
    let omega = kahler(&Algebra::over_burnside(&root)).map_err(|e| e.to_string())?.omega;
    let modules = vec![
        GreenModule::regular(&burn),
        GreenModule::regular(&Arc::new(eqalg::tambara::burnside(&group("S3")))),
        GreenModule::regular(&dual),
        GreenModule::regular(&Arc::new(fixed_points(&RingWithAction::integers(&group("C3"), 0)).unwrap())),
        GreenModule::regular(&root),
        omega,
    ];
    for (i, m) in modules.iter().enumerate() {
        let sz = square_zero(&m.ring, m).map_err(|e| e.to_string())?;
        let phi = verify::ideal_comparison(&sz).map_err(|e| e.to_string())?;
        ensure(phi.check().passed() && phi.is_isomorphism(), || format!("module {i}: M → I(R ⋉ M) is not an iso"))?;
    }
    // naturality against multiplication by top-level scalars
    let top = c2.whole_group();
    let basis = eqalg::tambara::BurnsideBasis::new(&c2);
    let free_orbit = unit_vec(burn.ngens(top), basis.index_of(top, c2.trivial_subgroup()));
    let eps = vec![Int::from(0), Int::from(1)];
    let two = vec![Int::from(2), Int::from(0)];
    let maps = [(&modules[0], free_orbit), (&modules[2], eps), (&modules[2], two)];
    for (i, (m, r)) in maps.iter().enumerate() {
        let f = scalar_map(m, r);
        ensure(f.check().passed(), || format!("map {i} is not a Mackey map"))?;
        let sz = square_zero(&m.ring, m).map_err(|e| e.to_string())?;
        let phi = verify::ideal_comparison(&sz).map_err(|e| e.to_string())?;
        let i_f = ideal_map(&sz, &sz, &f)?;
        for h in 0..c2.num_subgroups() {
            let lhs = phi.map(h) * f.map(h);
            let rhs = &i_f[h] * phi.map(h);
            ensure(phi.target.level(h).same_map(&lhs, &rhs), || {
                format!("map {i}: naturality square fails at level {h}")
            })?;
        }
    }
    Ok(format!("{} modules, {} module maps", modules.len(), maps.len()))
}

fn triples() -> Result<Vec<(String, KahlerModule, GreenModule)>, String> {
    let c2 = group("C2");
    let mut out = Vec::new();
    for (name, r) in [
        ("Z[e]", dual_numbers(&c2)),
        ("Z[sqrt2]", sqrt_two()),
        ("F2[e] over S3", {
            let s3 = group("S3");
            Arc::new(fixed_points(&RingWithAction::quadratic(&s3, 0, |_| 1).modulo(2)).unwrap())
        }),
    ] {
        let k = kahler(&Algebra::over_burnside(&r)).map_err(|e| e.to_string())?;
        out.push((format!("{name}, M=R"), k.clone(), GreenModule::regular(&r)));
        out.push((format!("{name}, M=Omega"), k.clone(), k.omega.clone()));
    }
    Ok(out)
}

fn der_hom() -> Outcome {
    let ts = triples()?;
    for (name, k, m) in &ts {
        let b = der_hom_bijection(k, m).map_err(|e| e.to_string())?;
        ensure(b.report.passed(), || format!("{name}: {}", first_failure(&b.report)))?;
        ensure(instances(&b.report, "der_hom.inverse") >= 2, || format!("{name}: composites were not compared"))?;
        let ders = derivation_space(&k.algebra, m).map_err(|e| e.to_string())?;
        let homs = module_hom_space(&k.omega, m);
        ensure(ders.group().invariant_factors() == homs.group().invariant_factors(), || {
            format!("{name}: {:?} vs {:?}", ders.group().invariant_factors(), homs.group().invariant_factors())
        })?;
    }
    Ok(format!("{} triples", ts.len()))
}

fn universal_derivation() -> Outcome {
    let mut ks: Vec<(String, KahlerModule)> = Vec::new();
    for (name, k, _) in triples()?.into_iter().step_by(2) {
        ks.push((name, k));
    }
    let c2 = group("C2");
    let burn = Arc::new(eqalg::tambara::burnside(&c2));
    let basis = eqalg::tambara::BurnsideBasis::new(&c2);
    let s = unit_vec(burn.ngens(c2.whole_group()), basis.index_of(c2.whole_group(), c2.trivial_subgroup()));
    let loc = eqalg::tambara::localize(&burn, &s, 8).map_err(|e| e.to_string())?;
    ks.push(("localization".into(), kahler(&Algebra::new(loc.map)).map_err(|e| e.to_string())?));
    for (name, k) in &ks {
        let rep = is_genuine_derivation(&k.algebra, &k.omega, &k.universal, None);
        ensure(rep.passed(), || format!("{name}: {}", first_failure(&rep)))?;
        let g = k.omega.group();
        let gens: Vec<Matrix> = (0..g.num_subgroups()).map(|h| k.universal.map(h).clone()).collect();
        let spans = submodule_generated(&k.omega, &gens);
        for h in 0..g.num_subgroups() {
            let lv = k.omega.module.level(h);
            ensure(lv.span_contains(&spans[h], &Matrix::identity(lv.ngens())), || {
                format!("{name}: image of d does not generate Ω at level {}", g.subgroup_label(h))
            })?;
        }
    }
    Ok(format!("{} Kähler modules", ks.len()))
}

fn localization() -> Outcome {
    let rep = verify::localization(8).map_err(|e| e.to_string())?;
    ensure(rep.passed(), || first_failure(&rep))?;
    Ok("Burnside C2 with [C2/e] inverted: multiplication iso, Ω = 0, depth <= 3".into())
}

/// Closure of `ker(d)` under products and norms, checked directly on grids of kernel generators.
fn kernel_closed(alg: &Algebra, d: &MackeyHom) -> Result<(), String> {
    let r = &alg.structure.target;
    let g = r.group();
    let ker: Vec<Matrix> = (0..g.num_subgroups()).map(|h| d.level_hom(h).kernel().1).collect();
    let zero_d = |h: SubgroupId, x: &[Int]| d.target.level(h).is_zero_element(&d.apply(h, x));
    for h in 0..g.num_subgroups() {
        for i in 0..ker[h].cols() {
            for j in 0..ker[h].cols() {
                let p = r.mul(h, &ker[h].column(i), &ker[h].column(j));
                ensure(zero_d(h, &p), || format!("product leaves ker(d) at {}", g.subgroup_label(h)))?;
            }
        }
    }
    for (k, h) in proper_pairs(g) {
        for c in simplex_points(ker[h].cols(), g.index(h, k)) {
            let x = ker[h].mul_vec(&to_ints(&c));
            ensure(zero_d(k, &r.norm(k, h, &x)), || {
                format!("N_{}^{} leaves ker(d)", g.subgroup_label(h), g.subgroup_label(k))
            })?;
        }
    }
    Ok(())
}

fn kernel_of_derivation() -> Outcome {
    let mut count = 0;
    for (name, k, m) in triples()? {
        let b = der_hom_bijection(&k, &m).map_err(|e| e.to_string())?;
        for d in b.derivations.basis() {
            let rep = kernel_is_subtambara(&k.algebra, &d);
            ensure(rep.passed(), || format!("{name}: {}", first_failure(&rep)))?;
            kernel_closed(&k.algebra, &d).map_err(|e| format!("{name}: {e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} basis derivations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("axiom suites", axioms),
        ("bispan functoriality", functoriality),
        ("norm of a sum", norm_of_sum),
        ("square-zero classification", classification),
        ("vanishing norms on the ideal", vanishing_norms),
        ("ideal of R ⋉ M is M", equivalence),
        ("Der ≅ Hom(Ω, M)", der_hom),
        ("universal derivation", universal_derivation),
        ("formally étale localization", localization),
        ("kernel of a derivation", kernel_of_derivation),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
