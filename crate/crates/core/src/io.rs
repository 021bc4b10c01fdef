//! JSON file formats. Vertices are numbered from 1 in files.
//!
//! ```text
//! quiver          {"vertices": 2, "arrows": [{"label": "a", "from": 1, "to": 2}]}
//! representation  {"dims": [1, 1], "mats": {"a": [[1]]}}  or a label such as "P1"
//! morphism        {"source": rep, "target": rep, "maps": {"1": [[..]], ..}}
//!                 or {"source": .., "target": .., "coords": [..]} in the Hom basis
//! complex         {"terms": {"0": rep, ..}, "diffs": {"0": {"maps": ..}}}
//! chain map       {"source": complex, "target": complex, "maps": {"0": {"maps": ..}}}
//! formal object   {"components": {"0": rep, ..}}  or {"summands": [["S1", 1], ..]}
//! formal morphism {"source": fo, "target": fo, "hom": {"0": {..}}, "ext": {"0": [coords]}}
//! walk            {"start": ["P1", 0], "steps": [{"kind": "hom-backward", "to": ["S1", 0]}]}
//! ```
//!
//! In `summands` and walks a pair `[label, k]` means the shifted object `I[k]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::formal::{FormalMorphism, FormalObject};
use crate::linalg::{self, Matrix};
use crate::quiver_rep::{hom_ext, ExtClass, IndecList, Quiver, RepMorphism, Representation};
use crate::tstruct::{Node, PathGraph, StepKind, Walk};

fn err(at: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{at}: {msg}"))
}

fn obj<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(at, "expected an object"))
}

fn field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    obj(v, at)?.get(key).ok_or_else(|| err(at, format!("missing field \"{key}\"")))
}

fn uint(v: &Value, at: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| err(at, "expected a non-negative integer"))
}

fn int(v: &Value, at: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| err(at, "expected an integer"))
}

fn degree(key: &str, at: &str) -> Result<i32> {
    key.parse().map_err(|_| err(at, format!("\"{key}\" is not a degree")))
}

/// Parse a JSON document, reporting line and column on failure.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e)))
}

pub fn read_json(path: &std::path::Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_quiver(v: &Value) -> Result<Quiver> {
    let n = uint(field(v, "vertices", "quiver")?, "quiver.vertices")?;
    let arrows = field(v, "arrows", "quiver")?.as_array().ok_or_else(|| err("quiver.arrows", "expected an array"))?;
    let mut list = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        let at = format!("quiver.arrows[{i}]");
        let label = field(a, "label", &at)?.as_str().ok_or_else(|| err(&at, "label must be a string"))?.to_string();
        let from = uint(field(a, "from", &at)?, &format!("{at}.from"))?;
        let to = uint(field(a, "to", &at)?, &format!("{at}.to"))?;
        if from == 0 || to == 0 {
            return Err(err(&at, "vertices are numbered from 1"));
        }
        list.push((label, from - 1, to - 1));
    }
    Quiver::new(n, list)
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    let arrows: Vec<Value> =
        q.arrows().iter().map(|a| json!({"label": a.label, "from": a.source + 1, "to": a.target + 1})).collect();
    json!({"vertices": q.vertex_count(), "arrows": arrows})
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!(m.to_signed_rows())
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, p: u32, at: &str) -> Result<Matrix> {
    let arr = v.as_array().ok_or_else(|| err(at, "expected a matrix (array of rows)"))?;
    if arr.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(p, rows, cols));
    }
    if arr.len() != rows {
        return Err(err(at, format!("expected {rows} rows, found {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in arr.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| err(at, format!("row {r} is not an array")))?;
        if row.len() != cols {
            return Err(err(at, format!("row {r}: expected {cols} entries, found {}", row.len())));
        }
        for x in row {
            data.push(linalg::reduce(p, int(x, at)?));
        }
    }
    Ok(Matrix::from_vec(p, rows, cols, data))
}

/// Parsing context: quiver, prime and (for Dynkin quivers) the labelled
/// indecomposables.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub quiver: Arc<Quiver>,
    pub p: u32,
    pub indecs: Option<IndecList>,
}

impl Ctx {
    pub fn new(quiver: Arc<Quiver>, p: u32) -> Ctx {
        let indecs = if quiver.is_dynkin() { IndecList::new(&quiver, p).ok() } else { None };
        Ctx { quiver, p, indecs }
    }

    /// An indecomposable by label (`S1`, `P2`, `I3`, an enumeration label or
    /// a dimension vector).
    pub fn named(&self, label: &str, at: &str) -> Result<Representation> {
        if let Some(l) = &self.indecs {
            if let Some(i) = l.lookup(label) {
                return Ok(l.reps[i].clone());
            }
        }
        let q = self.quiver.clone();
        let mut chars = label.chars();
        let kind = chars.next();
        let v: Option<usize> = chars.as_str().parse().ok().filter(|&v| v >= 1 && v <= q.vertex_count());
        match (kind, v) {
            (Some('S'), Some(v)) => Ok(Representation::simple(q, self.p, v - 1)),
            (Some('P'), Some(v)) => Ok(Representation::projective(q, self.p, v - 1)),
            (Some('I'), Some(v)) => Ok(Representation::injective(q, self.p, v - 1)),
            _ => Err(err(at, format!("unknown indecomposable \"{label}\""))),
        }
    }

    pub fn rep(&self, v: &Value, at: &str) -> Result<Representation> {
        if let Some(s) = v.as_str() {
            return self.named(s, at);
        }
        let dims: Vec<usize> = field(v, "dims", at)?
            .as_array()
            .ok_or_else(|| err(at, "dims must be an array"))?
            .iter()
            .map(|d| uint(d, &format!("{at}.dims")))
            .collect::<Result<_>>()?;
        if dims.len() != self.quiver.vertex_count() {
            return Err(err(at, format!("expected {} dimensions, found {}", self.quiver.vertex_count(), dims.len())));
        }
        let empty = Map::new();
        let mats_v = match obj(v, at)?.get("mats") {
            Some(m) => obj(m, &format!("{at}.mats"))?,
            None => &empty,
        };
        for k in mats_v.keys() {
            if self.quiver.arrow_index(k).is_none() {
                return Err(err(at, format!("no arrow labelled \"{k}\"")));
            }
        }
        let mut mats = Vec::new();
        for a in self.quiver.arrows() {
            let (r, c) = (dims[a.target], dims[a.source]);
            let m = match mats_v.get(&a.label) {
                Some(m) => parse_matrix(m, r, c, self.p, &format!("{at}.mats.{}", a.label))?,
                None if r * c == 0 => Matrix::zeros(self.p, r, c),
                None => return Err(err(at, format!("missing matrix for arrow \"{}\"", a.label))),
            };
            mats.push(m);
        }
        Representation::new(self.quiver.clone(), self.p, dims, mats)
    }

    /// The body of a morphism between known endpoints: `maps` per vertex or
    /// `coords` in the Hom basis.
    pub fn morphism_body(&self, v: &Value, source: &Representation, target: &Representation, at: &str) -> Result<RepMorphism> {
        let o = obj(v, at)?;
        if let Some(c) = o.get("coords") {
            let he = hom_ext(source, target);
            let coords = coords(c, self.p, &format!("{at}.coords"))?;
            if coords.len() != he.hom_dim() {
                return Err(err(at, format!("Hom has dimension {}, found {} coordinates", he.hom_dim(), coords.len())));
            }
            return Ok(he.hom_from_coords(&coords));
        }
        let maps_v = o.get("maps").map(|m| obj(m, &format!("{at}.maps"))).transpose()?;
        let mut maps = Vec::new();
        for vtx in 0..self.quiver.vertex_count() {
            let key = (vtx + 1).to_string();
            let (r, c) = (target.dim(vtx), source.dim(vtx));
            let m = match maps_v.and_then(|m| m.get(&key)) {
                Some(m) => parse_matrix(m, r, c, self.p, &format!("{at}.maps.{key}"))?,
                None if r * c == 0 => Matrix::zeros(self.p, r, c),
                None => return Err(err(at, format!("missing map at vertex {key}"))),
            };
            maps.push(m);
        }
        RepMorphism::new(source.clone(), target.clone(), maps).map_err(|e| err(at, e))
    }

    pub fn morphism(&self, v: &Value, at: &str) -> Result<RepMorphism> {
        let s = self.rep(field(v, "source", at)?, &format!("{at}.source"))?;
        let t = self.rep(field(v, "target", at)?, &format!("{at}.target"))?;
        self.morphism_body(v, &s, &t, at)
    }

    pub fn complex(&self, v: &Value, at: &str) -> Result<Complex> {
        let terms_v = obj(field(v, "terms", at)?, &format!("{at}.terms"))?;
        let mut terms = BTreeMap::new();
        for (k, t) in terms_v {
            terms.insert(degree(k, at)?, self.rep(t, &format!("{at}.terms.{k}"))?);
        }
        let (Some(&lo), Some(&hi)) = (terms.keys().next(), terms.keys().last()) else {
            return Ok(Complex::zero(self.quiver.clone(), self.p));
        };
        let term = |n: i32| terms.get(&n).cloned().unwrap_or_else(|| Representation::zero(self.quiver.clone(), self.p));
        let diffs_v = match obj(v, at)?.get("diffs") {
            Some(d) => Some(obj(d, &format!("{at}.diffs"))?),
            None => None,
        };
        if let Some(d) = diffs_v {
            for k in d.keys() {
                let n = degree(k, at)?;
                if n < lo || n >= hi {
                    return Err(err(at, format!("differential in degree {n} leaves the terms")));
                }
            }
        }
        let mut diffs = Vec::new();
        for n in lo..hi {
            let (a, b) = (term(n), term(n + 1));
            let d = match diffs_v.and_then(|d| d.get(&n.to_string())) {
                Some(d) => self.morphism_body(d, &a, &b, &format!("{at}.diffs.{n}"))?,
                None => RepMorphism::zero(&a, &b),
            };
            diffs.push(d);
        }
        Complex::new(self.quiver.clone(), self.p, lo, (lo..=hi).map(term).collect(), diffs)
    }

    pub fn chain_map(&self, v: &Value, at: &str) -> Result<ChainMap> {
        let s = self.complex(field(v, "source", at)?, &format!("{at}.source"))?;
        let t = self.complex(field(v, "target", at)?, &format!("{at}.target"))?;
        let maps_v = match obj(v, at)?.get("maps") {
            Some(m) => Some(obj(m, &format!("{at}.maps"))?),
            None => None,
        };
        let mut maps = BTreeMap::new();
        if let Some(m) = maps_v {
            for (k, body) in m {
                let n = degree(k, at)?;
                maps.insert(n, self.morphism_body(body, &s.term(n), &t.term(n), &format!("{at}.maps.{k}"))?);
            }
        }
        ChainMap::new(&s, &t, |n| maps.get(&n).cloned()).map_err(|e| err(at, e))
    }

    pub fn formal_object(&self, v: &Value, at: &str) -> Result<FormalObject> {
        let o = obj(v, at)?;
        let mut x = FormalObject::zero(self.quiver.clone(), self.p);
        if let Some(c) = o.get("components") {
            for (k, r) in obj(c, &format!("{at}.components"))? {
                let n = degree(k, at)?;
                x = x.direct_sum(&FormalObject::stalk(&self.rep(r, &format!("{at}.components.{k}"))?, n));
            }
        }
        if let Some(s) = o.get("summands") {
            let arr = s.as_array().ok_or_else(|| err(at, "summands must be an array"))?;
            for (i, pair) in arr.iter().enumerate() {
                let (r, k) = self.shifted(pair, &format!("{at}.summands[{i}]"))?;
                x = x.direct_sum(&FormalObject::stalk(&r, -k));
            }
        }
        Ok(x)
    }

    /// `[label, k]` or `"label[k]"`.
    fn shifted(&self, v: &Value, at: &str) -> Result<(Representation, i32)> {
        if let Some(s) = v.as_str() {
            let (name, k) = split_shift(s).ok_or_else(|| err(at, format!("cannot read \"{s}\"")))?;
            return Ok((self.named(name, at)?, k));
        }
        let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| err(at, "expected [label, shift]"))?;
        let r = self.rep(&arr[0], at)?;
        Ok((r, int(&arr[1], at)? as i32))
    }

    pub fn formal_morphism(&self, v: &Value, at: &str) -> Result<FormalMorphism> {
        let s = self.formal_object(field(v, "source", at)?, &format!("{at}.source"))?;
        let t = self.formal_object(field(v, "target", at)?, &format!("{at}.target"))?;
        let o = obj(v, at)?;
        let mut hom = Vec::new();
        if let Some(h) = o.get("hom") {
            for (k, body) in obj(h, &format!("{at}.hom"))? {
                let n = degree(k, at)?;
                hom.push((n, self.morphism_body(body, &s.component(n), &t.component(n), &format!("{at}.hom.{k}"))?));
            }
        }
        let mut ext = Vec::new();
        if let Some(e) = o.get("ext") {
            for (k, c) in obj(e, &format!("{at}.ext"))? {
                let n = degree(k, at)?;
                let here = format!("{at}.ext.{k}");
                let he = hom_ext(&s.component(n), &t.component(n - 1));
                let coords = coords(c, self.p, &here)?;
                if coords.len() != he.ext_dim() {
                    return Err(err(&here, format!("Ext¹ has dimension {}, found {} coordinates", he.ext_dim(), coords.len())));
                }
                ext.push((n, he.ext_from_coords(&coords)));
            }
        }
        FormalMorphism::new(&s, &t, hom, ext).map_err(|e| err(at, e))
    }

    pub fn walk(&self, g: &PathGraph, v: &Value, at: &str) -> Result<Walk> {
        let start = self.node(g, field(v, "start", at)?, &format!("{at}.start"))?;
        let steps_v = field(v, "steps", at)?.as_array().ok_or_else(|| err(at, "steps must be an array"))?;
        let mut steps = Vec::new();
        for (i, s) in steps_v.iter().enumerate() {
            let here = format!("{at}.steps[{i}]");
            let kind = field(s, "kind", &here)?.as_str().and_then(StepKind::parse).ok_or_else(|| err(&here, "unknown step kind"))?;
            steps.push((kind, self.node(g, field(s, "to", &here)?, &here)?));
        }
        Ok(Walk { start, steps })
    }

    pub fn node(&self, g: &PathGraph, v: &Value, at: &str) -> Result<Node> {
        let (r, k) = self.shifted(v, at)?;
        let i = g.indecs.index_of(&r).ok_or_else(|| err(at, "not an indecomposable of this quiver"))?;
        Ok(Node::new(i, k))
    }
}

/// `"S1[2]"` to `("S1", 2)`; a bare label has shift 0.
pub fn split_shift(s: &str) -> Option<(&str, i32)> {
    let s = s.trim();
    match s.strip_suffix(']').and_then(|t| t.rsplit_once('[')) {
        Some((name, k)) => Some((name, k.trim().parse().ok()?)),
        None => Some((s, 0)),
    }
}

fn coords(v: &Value, p: u32, at: &str) -> Result<Vec<u32>> {
    v.as_array()
        .ok_or_else(|| err(at, "expected an array of coordinates"))?
        .iter()
        .map(|x| int(x, at).map(|x| linalg::reduce(p, x)))
        .collect()
}

pub fn rep_to_json(x: &Representation) -> Value {
    let q = x.quiver();
    let mats: Map<String, Value> = q.arrows().iter().zip(x.mats()).map(|(a, m)| (a.label.clone(), matrix_to_json(m))).collect();
    json!({"dims": x.dims(), "mats": mats})
}

pub fn morphism_body_to_json(f: &RepMorphism) -> Value {
    let maps: Map<String, Value> = f.maps().iter().enumerate().map(|(v, m)| ((v + 1).to_string(), matrix_to_json(m))).collect();
    json!({"maps": maps})
}

pub fn morphism_to_json(f: &RepMorphism) -> Value {
    let mut v = morphism_body_to_json(f);
    v["source"] = rep_to_json(f.source());
    v["target"] = rep_to_json(f.target());
    v
}

pub fn complex_to_json(c: &Complex) -> Value {
    let terms: Map<String, Value> = c.degrees().map(|n| (n.to_string(), rep_to_json(&c.term(n)))).collect();
    let diffs: Map<String, Value> =
        c.degrees().filter(|&n| n < c.hi()).map(|n| (n.to_string(), morphism_body_to_json(&c.diff(n)))).collect();
    json!({"terms": terms, "diffs": diffs})
}

pub fn formal_object_to_json(x: &FormalObject) -> Value {
    let comps: Map<String, Value> = x.components().iter().map(|(n, r)| (n.to_string(), rep_to_json(r))).collect();
    json!({"components": comps})
}

fn ext_to_json(e: &ExtClass) -> Value {
    let p = e.source().prime();
    json!(e.coords().iter().map(|&c| linalg::signed(p, c)).collect::<Vec<_>>())
}

pub fn formal_morphism_to_json(f: &FormalMorphism) -> Value {
    let hom: Map<String, Value> = f.hom_parts().iter().map(|(n, m)| (n.to_string(), morphism_body_to_json(m))).collect();
    let ext: Map<String, Value> = f.ext_parts().iter().map(|(n, e)| (n.to_string(), ext_to_json(e))).collect();
    json!({
        "source": formal_object_to_json(f.source()),
        "target": formal_object_to_json(f.target()),
        "hom": hom,
        "ext": ext,
    })
}

/// Summary of a formal object as labelled shifted summands, e.g. `["S2[1]"]`.
pub fn summand_labels(x: &FormalObject, indecs: &IndecList, seed: u64) -> Vec<String> {
    let mut out: Vec<String> = x
        .decompose(seed)
        .into_iter()
        .map(|(r, n, _, _)| match indecs.index_of(&r) {
            Some(i) => format!("{}[{}]", indecs.names[i], -n),
            None => format!("{:?}[{}]", r.dims(), -n),
        })
        .collect();
    out.sort();
    out
}
