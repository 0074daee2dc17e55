use std::path::Path;
use std::sync::Arc;

use eqalg::error::{Error, Result};
use eqalg::gsets::FiniteGroup;
use eqalg::io::{self, Doc};
use eqalg::kahler::{classify_maps_into_square_zero, derivation_space, is_genuine_derivation, Algebra};
use eqalg::mackey::{box_product, GreenModule, MackeyFunctor};
use eqalg::report::Report;
use eqalg::tambara::{burnside, localize, restrict_to_subgroup, square_zero, TambaraFunctor, TambaraHom};
use eqalg::verify::{self, SuiteOptions};
use serde_json::{json, Map, Value};

use crate::{BaseArgs, Common, Outcome};

fn invariants(g: &FiniteGroup, level: impl Fn(usize) -> Vec<eqalg::zmod::Int>) -> Value {
    let o: Map<String, Value> =
        (0..g.num_subgroups()).map(|h| (g.subgroup_label(h).to_string(), io_ints(&level(h)))).collect();
    Value::Object(o)
}

fn io_ints(x: &[eqalg::zmod::Int]) -> Value {
    Value::Array(x.iter().map(|v| json!(v.to_string())).collect())
}

fn mackey_invariants(m: &MackeyFunctor) -> Value {
    invariants(m.group(), |h| m.level(h).invariant_factors())
}

fn read_tambara(p: &Path) -> Result<Arc<TambaraFunctor>> {
    io::tambara_from_json(&Doc::read(p)?)
}

fn passed(id: &str, anchor: &str) -> Report {
    let mut r = Report::new();
    r.record(id, anchor, true, String::new);
    r
}

pub fn group_check(p: &Path) -> Result<Outcome> {
    let g = io::group_from_doc(&Doc::read(p)?)?;
    let subgroups: Vec<Value> = (0..g.num_subgroups())
        .map(|h| json!({ "label": g.subgroup_label(h), "order": g.subgroup(h).elements.len(), "class": g.class_of(h).id }))
        .collect();
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .map(|c| {
            let members: Vec<&str> = c.members.iter().map(|&h| g.subgroup_label(h)).collect();
            json!({ "id": c.id, "order": c.order, "members": members })
        })
        .collect();
    Ok(Outcome {
        result: json!({ "name": g.name(), "order": g.order(), "subgroups": subgroups, "classes": classes }),
        report: passed("group.axioms", "group axioms: closure, associativity, identity, inverses"),
    })
}

pub fn gset_orbits(p: &Path) -> Result<Outcome> {
    let x = io::gset_from_doc(&Doc::read(p)?, None)?;
    let g = x.gset.group().clone();
    let d = x.gset.orbits();
    let orbits: Vec<Value> = d
        .orbits
        .iter()
        .map(|o| {
            let pts: Vec<&str> = o.points.iter().map(|&q| x.points[q].as_str()).collect();
            json!({ "representative": x.points[o.rep], "stabilizer": g.subgroup_label(o.stabilizer), "points": pts })
        })
        .collect();
    let summary: Vec<Value> =
        d.summary(&g).into_iter().map(|(c, m)| json!({ "class": g.classes()[c].id, "multiplicity": m })).collect();
    Ok(Outcome {
        result: json!({ "orbits": orbits, "decomposition": summary }),
        report: passed("gset.action", "group action axioms"),
    })
}

pub fn bispan_compose(p: &Path, q: &Path) -> Result<Outcome> {
    let (p, q) = (io::bispan_from_doc(&Doc::read(p)?)?, io::bispan_from_doc(&Doc::read(q)?)?);
    let c = p.compose(&q)?;
    Ok(Outcome { result: io::bispan_to_json(&c), report: passed("bispan.compose", "composition of bispans") })
}

pub fn bispan_flags(p: &Path) -> Result<Outcome> {
    let f = io::bispan_from_doc(&Doc::read(p)?)?.flags();
    Ok(Outcome {
        result: json!({ "iso": f.iso, "epi": f.epi, "gr": f.gr }),
        report: passed("bispan.flags", "subcategories of bispans"),
    })
}

pub fn mackey_check(p: &Path) -> Result<Outcome> {
    let m = io::mackey_from_json(&Doc::read(p)?, None)?;
    Ok(Outcome { result: json!({ "invariant_factors": mackey_invariants(&m) }), report: m.validate() })
}

pub fn mackey_box(m: &Path, n: &Path) -> Result<Outcome> {
    let m = io::mackey_from_json(&Doc::read(m)?, None)?;
    let n = io::mackey_from_json(&Doc::read(n)?, Some(m.group()))?;
    let b = box_product(&m, &n)?;
    let mut result = io::mackey_to_json(&b.functor);
    result["invariant_factors"] = mackey_invariants(&b.functor);
    Ok(Outcome { result, report: b.functor.validate() })
}

pub fn tambara_check(p: &Path, grid_bound: Option<usize>) -> Result<Outcome> {
    let r = read_tambara(p)?;
    Ok(Outcome {
        result: json!({ "unital": r.is_unital(), "invariant_factors": mackey_invariants(r.mackey()) }),
        report: verify::axioms(&r, grid_bound),
    })
}

pub fn tambara_squarezero(ring: &Path, module: &Path, grid_bound: Option<usize>) -> Result<Outcome> {
    let r = read_tambara(ring)?;
    let m = io::module_from_json(&Doc::read(module)?, &r)?;
    let sz = square_zero(&r, &m)?;
    let report = verify::square_zero_laws(&sz, grid_bound)?;
    let mut result = io::tambara_to_json(&sz.ext);
    result["invariant_factors"] = mackey_invariants(sz.ext.mackey());
    result["augmentation"] = io::hom_maps_to_json(r.group(), &sz.augmentation.mackey.maps);
    Ok(Outcome { result, report })
}

pub fn tambara_localize(ring: &Path, element: &str, depth: usize) -> Result<Outcome> {
    let r = read_tambara(ring)?;
    let g = r.group();
    let s = io::vector_from_json(element, r.ngens(g.whole_group()))?;
    let loc = localize(&r, &s, depth)?;
    let mut report = verify::axioms(&loc.functor, None).prefixed("localized");
    report.merge(loc.map.check(None).prefixed("localization_map"));
    let mut result = io::tambara_to_json(&loc.functor);
    result["invariant_factors"] = mackey_invariants(loc.functor.mackey());
    result["depth"] = json!(loc.depth);
    result["exact"] = json!(loc.exact);
    result["map"] = io::hom_maps_to_json(g, &loc.map.mackey.maps);
    Ok(Outcome { result, report })
}

pub fn tambara_restrict(ring: &Path, label: &str) -> Result<Outcome> {
    let r = read_tambara(ring)?;
    let g = r.group();
    let h = g.subgroup_by_label(label).ok_or_else(|| Error::Parse(format!("no subgroup labelled \"{label}\"")))?;
    let (rh, _) = restrict_to_subgroup(&r, h);
    let mut result = io::tambara_to_json(&rh);
    result["invariant_factors"] = mackey_invariants(rh.mackey());
    Ok(Outcome { result, report: verify::axioms(&rh, None) })
}

fn same_tables(a: &TambaraFunctor, b: &TambaraFunctor) -> bool {
    a.group() == b.group() && io::tambara_to_json(a) == io::tambara_to_json(b)
}

/// `S → R` from the base options.
fn algebra(r: &Arc<TambaraFunctor>, base: &BaseArgs) -> Result<Algebra> {
    let Some(path) = &base.base else {
        return Ok(Algebra::over_burnside(r));
    };
    let s = read_tambara(path)?;
    if let Some(st) = &base.structure {
        let maps = io::hom_maps_from_json(&Doc::read(st)?.value, s.mackey(), r.mackey())?;
        let f = TambaraHom::new(s, r.clone(), maps);
        let rep = f.check(None);
        if !rep.passed() {
            return Err(Error::Invalid(format!(
                "the structure map is not a map of Tambara functors: {:?}",
                rep.failures().next().and_then(|c| c.witness.clone())
            )));
        }
        return Ok(Algebra::new(f));
    }
    if same_tables(&s, r) {
        return Ok(Algebra::over_itself(r));
    }
    if same_tables(&s, &burnside(r.group())) {
        return Ok(Algebra::over_burnside(r));
    }
    Err(Error::Invalid("pass --structure unless the base is the Burnside functor or R itself".into()))
}

pub fn kahler(ring: &Path, base: &BaseArgs, grid_bound: Option<usize>) -> Result<Outcome> {
    let r = read_tambara(ring)?;
    let alg = algebra(&r, base)?;
    let k = eqalg::kahler::kahler(&alg)?;
    let report = k.check(grid_bound);
    let mut result = io::module_to_json(&k.omega);
    result["invariant_factors"] = mackey_invariants(&k.omega.module);
    result["universal_derivation"] = io::hom_maps_to_json(r.group(), &k.universal.maps);
    Ok(Outcome { result, report })
}

pub fn derivations(ring: &Path, module: &Path, base: &BaseArgs, grid_bound: Option<usize>) -> Result<Outcome> {
    let r = read_tambara(ring)?;
    let m = io::module_from_json(&Doc::read(module)?, &r)?;
    let alg = algebra(&r, base)?;
    let ders = derivation_space(&alg, &m)?;
    let mut report = Report::new();
    let mut basis = Vec::new();
    for d in ders.basis() {
        report.merge(is_genuine_derivation(&alg, &m, &d, grid_bound));
        basis.push(io::hom_maps_to_json(r.group(), &d.maps));
    }
    let result = json!({ "invariant_factors": io_ints(&ders.group().invariant_factors()), "basis": basis });
    Ok(Outcome { result, report })
}

fn suite_group(name: &str) -> Result<Arc<FiniteGroup>> {
    let canonical = name.to_ascii_uppercase().replace('X', "x");
    FiniteGroup::by_name(&canonical).ok_or_else(|| Error::Parse(format!("unknown suite \"{name}\"")))
}

pub fn verify_all(suite: &str, c: &Common) -> Result<Outcome> {
    let g = suite_group(suite)?;
    let opts = SuiteOptions { seed: c.seed, grid_bound: c.grid_bound, depth: c.depth, ..SuiteOptions::default() };
    let report = verify::suite(&g, &opts)?;
    let instances: Vec<String> = verify::family(&g)?.into_iter().map(|(n, _)| n).collect();
    let result = json!({
        "group": g.name(),
        "instances": instances,
        "seed": opts.seed,
        "words": opts.words,
        "checks": report.checks.len(),
    });
    Ok(Outcome { result, report })
}

pub fn verify_square_zero(
    c: &Path,
    module: &Path,
    over: Option<&Path>,
    augmentation: Option<&Path>,
    base: &BaseArgs,
    grid_bound: Option<usize>,
) -> Result<Outcome> {
    let cf = read_tambara(c)?;
    let r = match over {
        Some(p) => read_tambara(p)?,
        None => cf.clone(),
    };
    let eps = match augmentation {
        Some(p) => TambaraHom::new(
            cf.clone(),
            r.clone(),
            io::hom_maps_from_json(&Doc::read(p)?.value, cf.mackey(), r.mackey())?,
        ),
        None if same_tables(&cf, &r) => TambaraHom::identity(&cf),
        None => return Err(Error::Invalid("pass --augmentation when R is not C".into())),
    };
    let m: GreenModule = io::module_from_json(&Doc::read(module)?, &r)?;
    let alg = algebra(&cf, base)?;
    let cl = classify_maps_into_square_zero(&alg, &eps, &m, grid_bound)?;
    let result = json!({
        "derivations": io_ints(&cl.derivations.group().invariant_factors()),
        "maps": cl.tambara_maps.len(),
        "correspondence": cl.correspondence,
    });
    Ok(Outcome { result, report: cl.report })
}
