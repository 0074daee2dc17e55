//! Mackey functors, Tambara functors and Green modules as JSON, keyed by subgroup labels.

use std::collections::HashMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{
    as_array, as_str, as_usize, group_of, group_ref, gset_from_doc, int_from_json, ints_from_json, ints_to_json,
    matrix_from_json, matrix_to_json, pair_key, Doc,
};
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, SubgroupId};
use crate::mackey::{GreenModule, MackeyFunctor};
use crate::poly::{simplex_points, to_ints, NewtonPoly};
use crate::tambara::{burnside, fixed_points, Bilinear, RingWithAction, TambaraFunctor};
use crate::zmod::{Int, Matrix, PresentedAb};

fn subgroup(g: &FiniteGroup, label: &str) -> Result<SubgroupId> {
    g.subgroup_by_label(label).ok_or_else(|| Error::Parse(format!("{} has no subgroup labelled \"{label}\"", g.name())))
}

fn element(g: &FiniteGroup, name: &str) -> Result<usize> {
    g.element_by_name(name).ok_or_else(|| Error::Parse(format!("{} has no element \"{name}\"", g.name())))
}

/// Entries of an object keyed by subgroup label, one per subgroup.
fn per_subgroup<'a>(g: &FiniteGroup, o: &'a Map<String, Value>, what: &str) -> Result<Vec<&'a Value>> {
    let mut out: Vec<Option<&Value>> = vec![None; g.num_subgroups()];
    for (k, v) in o {
        out[subgroup(g, k)?] = Some(v);
    }
    out.into_iter()
        .enumerate()
        .map(|(h, v)| v.ok_or_else(|| Error::Parse(format!("{what} missing for subgroup {}", g.subgroup_label(h)))))
        .collect()
}

fn level_from_json(v: &Value) -> Result<PresentedAb> {
    let n = as_usize(v.get("ngens").ok_or_else(|| Error::Parse("level without \"ngens\"".into()))?, "ngens")?;
    let rels = match v.get("relations") {
        Some(r) => as_array(r, "relations")?.iter().map(|c| ints_from_json(c, n, "relation")).collect::<Result<_>>()?,
        None => Vec::new(),
    };
    Ok(PresentedAb::new(n, Matrix::from_columns(n, &rels)))
}

fn level_to_json(a: &PresentedAb) -> Value {
    let rels: Vec<Value> = a.relations().columns().iter().map(|c| ints_to_json(c)).collect();
    json!({ "ngens": a.ngens(), "relations": rels })
}

/// Reads a Mackey functor. `group` forces the group when the functor is part of a larger object.
pub fn mackey_from_json(doc: &Doc, group: Option<&Arc<FiniteGroup>>) -> Result<Arc<MackeyFunctor>> {
    let g = group_of(doc, group)?;
    let n = g.num_subgroups();
    let levels: Vec<PresentedAb> =
        per_subgroup(&g, doc.object("levels")?, "level")?.into_iter().map(level_from_json).collect::<Result<_>>()?;
    let pairs = |key: &str| -> Result<Vec<Vec<Option<Matrix>>>> {
        let mut out = vec![vec![None; n]; n];
        let Some(o) = doc.value.get(key) else { return Ok(out) };
        let o = o.as_object().ok_or_else(|| Error::Parse(format!("\"{key}\" must be an object")))?;
        for (k, v) in o {
            let (a, b) = pair_key(k)?;
            let (kk, hh) = (subgroup(&g, a)?, subgroup(&g, b)?);
            if !g.is_subgroup_of(hh, kk) {
                return Err(Error::Parse(format!("{key} \"{k}\": {b} is not a subgroup of {a}")));
            }
            let (mk, mh) = (levels[kk].ngens(), levels[hh].ngens());
            let shape = if key == "res" { (mh, mk) } else { (mk, mh) };
            out[kk][hh] = Some(matrix_from_json(v, shape.0, shape.1, &format!("{key} {k}"))?);
        }
        Ok(out)
    };
    let (res, tr) = (pairs("res")?, pairs("tr")?);
    let mut conj = vec![vec![None; n]; g.order()];
    if let Some(o) = doc.value.get("conj") {
        let o = o.as_object().ok_or_else(|| Error::Parse("\"conj\" must be an object".into()))?;
        for (k, v) in o {
            let (a, b) = pair_key(k)?;
            let (x, h) = (element(&g, a)?, subgroup(&g, b)?);
            let gh = g.conj_subgroup(x, h);
            conj[x][h] = Some(matrix_from_json(v, levels[gh].ngens(), levels[h].ngens(), &format!("conj {k}"))?);
        }
    }
    let mut missing = Vec::new();
    for k in 0..n {
        for h in g.subgroups_of(k) {
            if h != k {
                for (name, table) in [("res", &res), ("tr", &tr)] {
                    if table[k][h].is_none() {
                        missing.push(format!("{name} {},{}", g.subgroup_label(k), g.subgroup_label(h)));
                    }
                }
            }
        }
    }
    for x in g.elements().filter(|&x| x != g.identity()) {
        for h in 0..n {
            if conj[x][h].is_none() {
                missing.push(format!("conj {},{}", g.element_name(x), g.subgroup_label(h)));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::Parse(format!("missing structure maps: {}", missing.join("; "))));
    }
    let ident = |h: SubgroupId| Matrix::identity(levels[h].ngens());
    let m = MackeyFunctor::from_fn(
        &g,
        levels.clone(),
        |k, h| res[k][h].clone().unwrap_or_else(|| ident(h)),
        |k, h| tr[k][h].clone().unwrap_or_else(|| ident(h)),
        |x, h| conj[x][h].clone().unwrap_or_else(|| ident(h)),
    )?;
    Ok(Arc::new(m))
}

pub fn mackey_to_json(m: &MackeyFunctor) -> Value {
    let g = m.group();
    let n = g.num_subgroups();
    let mut levels = Map::new();
    let (mut res, mut tr, mut conj) = (Map::new(), Map::new(), Map::new());
    for h in 0..n {
        levels.insert(g.subgroup_label(h).to_string(), level_to_json(m.level(h)));
    }
    for k in 0..n {
        for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
            let key = format!("{},{}", g.subgroup_label(k), g.subgroup_label(h));
            res.insert(key.clone(), matrix_to_json(m.res(k, h)));
            tr.insert(key, matrix_to_json(m.tr(k, h)));
        }
    }
    for x in g.elements().filter(|&x| x != g.identity()) {
        for h in 0..n {
            let key = format!("{},{}", g.element_name(x), g.subgroup_label(h));
            conj.insert(key, matrix_to_json(m.conj(x, h)));
        }
    }
    json!({ "group": group_ref(g), "levels": levels, "res": res, "tr": tr, "conj": conj })
}

fn grid_key(p: &str) -> Result<Vec<Int>> {
    if p.trim().is_empty() {
        return Ok(Vec::new());
    }
    p.split(',').map(|c| int_from_json(&Value::String(c.to_string()))).collect()
}

fn norm_from_json(r: &TambaraFunctor, k: SubgroupId, h: SubgroupId, v: &Value) -> Result<NewtonPoly> {
    let g = r.group();
    let (nv, out) = (r.ngens(h), r.ngens(k));
    let degree = g.index(h, k);
    let target = r.level(k);
    let name = format!("norm {},{}", g.subgroup_label(k), g.subgroup_label(h));
    if let Some(c) = v.get("constructor") {
        return match as_str(c, "norm constructor")? {
            "zero" => Ok(NewtonPoly::interpolate(nv, degree, out, |_| vec![Int::from(0); out])),
            other => Err(Error::Parse(format!("{name}: unknown norm constructor \"{other}\""))),
        };
    }
    let grid = v
        .get("grid")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse(format!("{name} needs a \"grid\" object or a \"constructor\"")))?;
    let mut given = Vec::with_capacity(grid.len());
    for (p, y) in grid {
        let x = grid_key(p)?;
        if x.len() != nv {
            return Err(Error::Parse(format!("{name}: grid point \"{p}\" should have {nv} coordinates")));
        }
        given.push((x, ints_from_json(y, out, &name)?));
    }
    let mut values = HashMap::new();
    for p in simplex_points(nv, degree) {
        let x = to_ints(&p);
        let y = given
            .iter()
            .find(|(q, _)| *q == x)
            .map(|(_, y)| y.clone())
            .ok_or_else(|| Error::Parse(format!("{name}: grid misses the point {p:?}")))?;
        values.insert(p, y);
    }
    let poly = NewtonPoly::from_values(nv, degree, out, &values).map_coeffs(out, |c| target.reduce(c));
    for (x, y) in &given {
        if !target.eq_elements(&poly.eval(x), y) {
            return Err(Error::IllDefined(format!(
                "{name}: the value at {x:?} disagrees with the degree {degree} polynomial through the grid"
            )));
        }
    }
    Ok(poly)
}

fn ring_from_json(g: &Arc<FiniteGroup>, doc: &Doc) -> Result<RingWithAction> {
    let modulus = match doc.value.get("modulus") {
        Some(m) => m.as_i64().ok_or_else(|| Error::Parse("modulus must be an integer".into()))?,
        None => 0,
    };
    let reduce = |r: RingWithAction| if modulus > 0 { r.modulo(modulus) } else { r };
    match as_str(doc.field("kind")?, "ring kind")? {
        "integers" => Ok(RingWithAction::integers(g, modulus)),
        "functions_on" => {
            let x = gset_from_doc(&doc.child("gset")?, Some(g))?;
            Ok(RingWithAction::functions_on(g, x.gset.action_table(), modulus))
        }
        "quadratic" => {
            let d = doc.field("d")?.as_i64().ok_or_else(|| Error::Parse("d must be an integer".into()))?;
            let mut sign = vec![1i64; g.order()];
            if let Some(o) = doc.value.get("sign").and_then(Value::as_object) {
                for (k, v) in o {
                    sign[element(g, k)?] = v.as_i64().ok_or_else(|| Error::Parse("sign must be 1 or -1".into()))?;
                }
            }
            Ok(reduce(RingWithAction::quadratic(g, d, |x| sign[x])))
        }
        "table" => {
            let additive = level_from_json(doc.field("additive")?)?;
            let n = additive.ngens();
            let mul = bilinear_from_json(doc.field("mul")?, n, n, "ring product")?;
            let unit = ints_from_json(doc.field("unit")?, n, "ring unit")?;
            let mut action = vec![Matrix::identity(n); g.order()];
            for (k, v) in doc.object("action")? {
                action[element(g, k)?] = matrix_from_json(v, n, n, "ring action")?;
            }
            Ok(reduce(RingWithAction { group: g.clone(), additive, mul, unit, action }))
        }
        other => Err(Error::Parse(format!("unknown ring kind \"{other}\""))),
    }
}

/// `table[i][j]`: coordinates of the product of generators `i` and `j`.
fn bilinear_from_json(v: &Value, nleft: usize, nout: usize, what: &str) -> Result<Bilinear> {
    let rows = as_array(v, what)?;
    if rows.len() != nleft {
        return Err(Error::Parse(format!("{what} has {} rows, expected {nleft}", rows.len())));
    }
    let mut table = Vec::with_capacity(nleft);
    for row in rows {
        let row = as_array(row, what)?;
        table.push(row.iter().map(|y| ints_from_json(y, nout, what)).collect::<Result<Vec<_>>>()?);
    }
    let nright = table.first().map_or(0, Vec::len);
    if table.iter().any(|r| r.len() != nright) {
        return Err(Error::Parse(format!("{what} is ragged")));
    }
    Ok(Bilinear::from_fn(nleft, nright, nout, |i, j| table[i][j].clone()))
}

fn bilinear_to_json(b: &Bilinear) -> Value {
    let table: Vec<Value> =
        b.mats.iter().map(|m| Value::Array(m.columns().iter().map(|c| ints_to_json(c)).collect())).collect();
    Value::Array(table)
}

/// Reads a Tambara functor, either from explicit tables or from `{"constructor": {...}}`.
pub fn tambara_from_json(doc: &Doc) -> Result<Arc<TambaraFunctor>> {
    let g = group_of(doc, None)?;
    if let Some(c) = doc.value.get("constructor") {
        let c = doc.follow(c)?;
        return match as_str(c.field("name")?, "constructor name")? {
            "burnside" => Ok(Arc::new(burnside(&g))),
            "fixed_points" => Ok(Arc::new(fixed_points(&ring_from_json(&g, &c.child("ring")?)?)?)),
            other => Err(Error::Parse(format!("unknown constructor \"{other}\""))),
        };
    }
    let m = mackey_from_json(doc, Some(&g))?;
    let n = g.num_subgroups();
    let mul = per_subgroup(&g, doc.object("mul")?, "product table")?
        .into_iter()
        .enumerate()
        .map(|(h, v)| bilinear_from_json(v, m.level(h).ngens(), m.level(h).ngens(), "product table"))
        .collect::<Result<Vec<_>>>()?;
    let unit = match doc.value.get("unit").and_then(Value::as_object) {
        Some(o) => Some(
            per_subgroup(&g, o, "unit")?
                .into_iter()
                .enumerate()
                .map(|(h, v)| ints_from_json(v, m.level(h).ngens(), "unit"))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let mut norms = vec![vec![None; n]; n];
    let shell = {
        let mut s = vec![vec![None; n]; n];
        for k in 0..n {
            for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
                let (nv, out) = (m.level(h).ngens(), m.level(k).ngens());
                s[k][h] = Some(NewtonPoly::interpolate(nv, g.index(h, k), out, |_| vec![Int::from(0); out]));
            }
        }
        TambaraFunctor::new(m.clone(), mul.clone(), unit.clone(), s)?
    };
    let given = doc.value.get("norm").and_then(Value::as_object).cloned().unwrap_or_default();
    for (key, v) in &given {
        let (a, b) = pair_key(key)?;
        let (k, h) = (subgroup(&g, a)?, subgroup(&g, b)?);
        if h == k || !g.is_subgroup_of(h, k) {
            return Err(Error::Parse(format!("norm \"{key}\": {b} is not a proper subgroup of {a}")));
        }
        norms[k][h] = Some(norm_from_json(&shell, k, h, v)?);
    }
    let mut missing = Vec::new();
    for k in 0..n {
        for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
            if norms[k][h].is_none() {
                missing.push(format!("{},{}", g.subgroup_label(k), g.subgroup_label(h)));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::Parse(format!("missing norms: {}", missing.join("; "))));
    }
    Ok(Arc::new(TambaraFunctor::new(m, mul, unit, norms)?))
}

pub fn tambara_to_json(r: &TambaraFunctor) -> Value {
    let g = r.group();
    let n = g.num_subgroups();
    let mut out = mackey_to_json(r.mackey());
    let mut mul = Map::new();
    let mut norm = Map::new();
    for h in 0..n {
        mul.insert(g.subgroup_label(h).to_string(), bilinear_to_json(r.mul_table(h)));
    }
    if r.is_unital() {
        let unit: Map<String, Value> = (0..n)
            .map(|h| (g.subgroup_label(h).to_string(), ints_to_json(&r.level(h).reduce(r.unit(h).expect("unital")))))
            .collect();
        out["unit"] = Value::Object(unit);
    }
    for k in 0..n {
        for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
            let mut grid = Map::new();
            for p in simplex_points(r.ngens(h), g.index(h, k)) {
                let key: Vec<String> = p.iter().map(ToString::to_string).collect();
                grid.insert(key.join(","), ints_to_json(&r.level(k).reduce(&r.norm(k, h, &to_ints(&p)))));
            }
            norm.insert(format!("{},{}", g.subgroup_label(k), g.subgroup_label(h)), json!({ "grid": grid }));
        }
    }
    out["mul"] = Value::Object(mul);
    out["norm"] = Value::Object(norm);
    out
}

/// Reads a module over `ring`: `{"regular": true}`, or a Mackey functor with `"action"` giving, per
/// subgroup label, the matrix of multiplication by each ring generator.
pub fn module_from_json(doc: &Doc, ring: &Arc<TambaraFunctor>) -> Result<GreenModule> {
    if doc.value.get("regular").and_then(Value::as_bool) == Some(true) {
        return Ok(GreenModule::regular(ring));
    }
    let g = ring.group();
    let m = mackey_from_json(&doc.child("mackey")?, Some(g))?;
    let action = per_subgroup(g, doc.object("action")?, "action")?
        .into_iter()
        .enumerate()
        .map(|(h, v)| {
            let k = m.level(h).ngens();
            let mats = as_array(v, "action")?
                .iter()
                .map(|a| matrix_from_json(a, k, k, "action matrix"))
                .collect::<Result<Vec<_>>>()?;
            if mats.len() != ring.ngens(h) {
                return Err(Error::Parse(format!(
                    "action at {} lists {} matrices for {} ring generators",
                    g.subgroup_label(h),
                    mats.len(),
                    ring.ngens(h)
                )));
            }
            Ok(Bilinear { mats })
        })
        .collect::<Result<Vec<_>>>()?;
    GreenModule::new(ring.clone(), m, action)
}

pub fn module_to_json(m: &GreenModule) -> Value {
    let g = m.group();
    let action: Map<String, Value> = (0..g.num_subgroups())
        .map(|h| (g.subgroup_label(h).to_string(), Value::Array(m.action[h].mats.iter().map(matrix_to_json).collect())))
        .collect();
    json!({ "mackey": mackey_to_json(&m.module), "action": action })
}

/// Level maps `{label: matrix}` of a map `source → target`.
pub fn hom_maps_from_json(v: &Value, source: &MackeyFunctor, target: &MackeyFunctor) -> Result<Vec<Matrix>> {
    let g = source.group();
    let o = v.as_object().ok_or_else(|| Error::Parse("a map is an object keyed by subgroup label".into()))?;
    per_subgroup(g, o, "map")?
        .into_iter()
        .enumerate()
        .map(|(h, m)| matrix_from_json(m, target.level(h).ngens(), source.level(h).ngens(), "level map"))
        .collect()
}

pub fn hom_maps_to_json(g: &FiniteGroup, maps: &[Matrix]) -> Value {
    Value::Object(maps.iter().enumerate().map(|(h, m)| (g.subgroup_label(h).to_string(), matrix_to_json(m))).collect())
}

/// An element given as a JSON array or as comma-separated integers.
pub fn vector_from_json(s: &str, len: usize) -> Result<Vec<Int>> {
    let v: Value = match serde_json::from_str(s) {
        Ok(v @ Value::Array(_)) => v,
        _ => Value::Array(s.split(',').map(|c| Value::String(c.trim().to_string())).collect()),
    };
    ints_from_json(&v, len, "element")
}
