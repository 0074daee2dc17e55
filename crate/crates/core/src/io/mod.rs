//! JSON readers and writers for groups, G-sets, bispans, Mackey and Tambara functors, modules and reports.
//!
//! Any object field that refers to another object accepts either the object inline or a path to a
//! JSON file, resolved relative to the file that contains the reference. Groups may also be given
//! by a builtin name such as `"C4"` or `"S3"`.

mod functors;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bispan::Bispan;
use crate::error::{Error, Result};
use crate::gsets::{FiniteGroup, GMap, GSet};
use crate::zmod::{Int, Matrix};

pub use functors::{
    hom_maps_from_json, hom_maps_to_json, mackey_from_json, mackey_to_json, module_from_json, module_to_json,
    tambara_from_json, tambara_to_json, vector_from_json,
};

/// A parsed value together with the directory against which its own references resolve.
#[derive(Clone, Debug)]
pub struct Doc {
    pub value: Value,
    pub dir: PathBuf,
}

impl Doc {
    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let mut value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{} is not valid JSON: {e}", path.display())))?;
        // command output wraps the object it produced
        if let (Some(_), Some(r)) = (value.get("command"), value.get("result")) {
            value = r.clone();
        }
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Self { value, dir })
    }

    pub fn inline(value: Value, dir: &Path) -> Self {
        Self { value, dir: dir.to_path_buf() }
    }

    /// Follows `self.value[key]` if it is a path, otherwise keeps it inline.
    pub fn child(&self, key: &str) -> Result<Doc> {
        let v = self.value.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))?;
        self.follow(v)
    }

    pub fn follow(&self, v: &Value) -> Result<Doc> {
        match v {
            Value::String(s) if s.ends_with(".json") => Doc::read(&self.dir.join(s)),
            _ => Ok(Doc::inline(v.clone(), &self.dir)),
        }
    }

    pub fn field(&self, key: &str) -> Result<&Value> {
        self.value.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
    }

    pub fn object(&self, key: &str) -> Result<&Map<String, Value>> {
        self.field(key)?.as_object().ok_or_else(|| Error::Parse(format!("\"{key}\" must be an object")))
    }
}

pub(crate) fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

pub(crate) fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{what} must be a non-negative integer")))
}

pub(crate) fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

pub(crate) fn int_from_json(v: &Value) -> Result<Int> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .or_else(|| n.as_u64().map(Int::from))
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("\"{s}\" is not an integer"))),
        _ => Err(Error::Parse(format!("expected an integer, found {v}"))),
    }
}

pub(crate) fn int_to_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub(crate) fn ints_from_json(v: &Value, len: usize, what: &str) -> Result<Vec<Int>> {
    let a = as_array(v, what)?;
    if a.len() != len {
        return Err(Error::Parse(format!("{what} has {} entries, expected {len}", a.len())));
    }
    a.iter().map(int_from_json).collect()
}

pub(crate) fn ints_to_json(x: &[Int]) -> Value {
    Value::Array(x.iter().map(int_to_json).collect())
}

/// A row-major matrix of the given shape.
pub(crate) fn matrix_from_json(v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    let a = as_array(v, what)?;
    if a.len() != rows {
        return Err(Error::Parse(format!("{what} has {} rows, expected {rows}", a.len())));
    }
    let data = a.iter().map(|r| ints_from_json(r, cols, what)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows, cols, data))
}

pub(crate) fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints_to_json(r)).collect())
}

pub(crate) fn pair_key(key: &str) -> Result<(&str, &str)> {
    key.split_once(',')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| Error::Parse(format!("key \"{key}\" is not of the form \"a,b\"")))
}

/// A group from a builtin name, a path, or an inline object.
pub fn group_from_doc(doc: &Doc) -> Result<Arc<FiniteGroup>> {
    if let Value::String(s) = &doc.value {
        if let Some(g) = FiniteGroup::by_name(s) {
            return Ok(g);
        }
        return group_from_doc(&Doc::read(&doc.dir.join(s))?);
    }
    let name = as_str(doc.field("name")?, "group name")?;
    let names: Vec<String> = as_array(doc.field("elements")?, "elements")?
        .iter()
        .map(|v| as_str(v, "element").map(str::to_string))
        .collect::<Result<_>>()?;
    let index = |s: &str| {
        names.iter().position(|n| n == s).ok_or_else(|| Error::InvalidGroup(format!("unknown element \"{s}\"")))
    };
    let identity = index(as_str(doc.field("identity")?, "identity")?)?;
    let n = names.len();
    let mut mul = vec![vec![usize::MAX; n]; n];
    for (k, v) in doc.object("mul")? {
        let (a, b) = pair_key(k)?;
        mul[index(a)?][index(b)?] = index(as_str(v, "product")?)?;
    }
    if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| mul[a][b] == usize::MAX) {
        return Err(Error::InvalidGroup(format!("closure: product {},{} is missing", names[a], names[b])));
    }
    FiniteGroup::new(name, names, mul, identity)
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    let mut mul = Map::new();
    for a in g.elements() {
        for b in g.elements() {
            let key = format!("{},{}", g.element_name(a), g.element_name(b));
            mul.insert(key, json!(g.element_name(g.mul(a, b))));
        }
    }
    json!({
        "name": g.name(),
        "elements": g.elements().map(|a| g.element_name(a)).collect::<Vec<_>>(),
        "identity": g.element_name(g.identity()),
        "mul": mul,
    })
}

/// The group of a document carrying a `"group"` field, or `fallback` when the field is absent.
pub fn group_of(doc: &Doc, fallback: Option<&Arc<FiniteGroup>>) -> Result<Arc<FiniteGroup>> {
    match (doc.value.get("group"), fallback) {
        (Some(_), Some(g)) => {
            let own = group_from_doc(&doc.child("group")?)?;
            if **g != *own {
                return Err(Error::Invalid(format!(
                    "expected an object over {}, found one over {}",
                    g.name(),
                    own.name()
                )));
            }
            Ok(g.clone())
        }
        (Some(_), None) => group_from_doc(&doc.child("group")?),
        (None, Some(g)) => Ok(g.clone()),
        (None, None) => Err(Error::Parse("missing field \"group\"".into())),
    }
}

/// A G-set together with its point names.
#[derive(Clone, Debug)]
pub struct NamedGSet {
    pub gset: GSet,
    pub points: Vec<String>,
}

impl NamedGSet {
    pub fn numbered(gset: GSet) -> Self {
        let points = (0..gset.len()).map(|i| i.to_string()).collect();
        Self { gset, points }
    }

    fn index(&self, s: &str) -> Result<usize> {
        self.points.iter().position(|p| p == s).ok_or_else(|| Error::InvalidGSet(format!("unknown point \"{s}\"")))
    }
}

pub fn gset_from_doc(doc: &Doc, group: Option<&Arc<FiniteGroup>>) -> Result<NamedGSet> {
    let g = group_of(doc, group)?;
    let points: Vec<String> = as_array(doc.field("points")?, "points")?
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::Parse("points must be strings".into())),
        })
        .collect::<Result<_>>()?;
    let n = points.len();
    let index = |s: &str| {
        points.iter().position(|p| p == s).ok_or_else(|| Error::InvalidGSet(format!("unknown point \"{s}\"")))
    };
    let mut action = vec![vec![usize::MAX; n]; g.order()];
    for (k, v) in doc.object("action")? {
        let (a, x) = pair_key(k)?;
        let a = g.element_by_name(a).ok_or_else(|| Error::InvalidGSet(format!("unknown element \"{a}\"")))?;
        action[a][index(x)?] = index(as_str(v, "image point")?)?;
    }
    action[g.identity()] = (0..n).collect();
    for a in g.elements() {
        if let Some(x) = action[a].iter().position(|&y| y == usize::MAX) {
            return Err(Error::InvalidGSet(format!("action of {} on {} is missing", g.element_name(a), points[x])));
        }
    }
    Ok(NamedGSet { gset: GSet::new(g, action)?, points })
}

/// A builtin name when the group is the builtin of that name, the full table otherwise.
pub fn group_ref(g: &FiniteGroup) -> Value {
    match FiniteGroup::by_name(g.name()) {
        Some(b) if *b == *g => json!(g.name()),
        _ => group_to_json(g),
    }
}

/// With `with_group` false the group field is omitted, for G-sets nested in a bispan.
pub fn gset_to_json(x: &NamedGSet, with_group: bool) -> Value {
    let g = x.gset.group();
    let mut action = Map::new();
    for a in g.elements() {
        for p in 0..x.gset.len() {
            let key = format!("{},{}", g.element_name(a), x.points[p]);
            action.insert(key, json!(x.points[x.gset.act(a, p)]));
        }
    }
    let mut out = json!({ "points": x.points, "action": action });
    if with_group {
        out["group"] = group_ref(g);
    }
    out
}

/// A map graph: an object from source point names to target point names, or an array of target indices.
pub fn gmap_from_json(v: &Value, source: &NamedGSet, target: &NamedGSet) -> Result<GMap> {
    let map = match v {
        Value::Array(a) => a.iter().map(|x| as_usize(x, "map image")).collect::<Result<Vec<_>>>()?,
        Value::Object(o) => {
            let mut m = vec![usize::MAX; source.points.len()];
            for (k, y) in o {
                m[source.index(k)?] = target.index(as_str(y, "map image")?)?;
            }
            if let Some(x) = m.iter().position(|&y| y == usize::MAX) {
                return Err(Error::Parse(format!("map graph misses point {}", source.points[x])));
            }
            m
        }
        _ => return Err(Error::Parse("a map graph must be an object or an array".into())),
    };
    GMap::new(source.gset.clone(), target.gset.clone(), map)
}

fn gmap_to_json(f: &GMap, source: &NamedGSet, target: &NamedGSet) -> Value {
    let mut o = Map::new();
    for (x, &y) in f.graph().iter().enumerate() {
        o.insert(source.points[x].clone(), json!(target.points[y]));
    }
    Value::Object(o)
}

pub fn bispan_from_doc(doc: &Doc) -> Result<Bispan> {
    let g = group_of(doc, None)?;
    let set = |k: &str| -> Result<NamedGSet> { gset_from_doc(&doc.child(k)?, Some(&g)) };
    let (s, u, v, t) = (set("s")?, set("u")?, set("v")?, set("t")?);
    let f = gmap_from_json(doc.field("f")?, &u, &s)?;
    let gg = gmap_from_json(doc.field("g")?, &u, &v)?;
    let h = gmap_from_json(doc.field("h")?, &v, &t)?;
    Bispan::new(f, gg, h)
}

pub fn bispan_to_json(p: &Bispan) -> Value {
    let [s, u, v, t] = [p.s(), p.u(), p.v(), p.t()].map(|x| NamedGSet::numbered(x.clone()));
    json!({
        "group": group_ref(p.s().group()),
        "s": gset_to_json(&s, false),
        "u": gset_to_json(&u, false),
        "v": gset_to_json(&v, false),
        "t": gset_to_json(&t, false),
        "f": gmap_to_json(&p.f, &u, &s),
        "g": gmap_to_json(&p.g, &u, &v),
        "h": gmap_to_json(&p.h, &v, &t),
    })
}
