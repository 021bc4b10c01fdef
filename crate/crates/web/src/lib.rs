//! Browser bindings. Each export takes JSON or plain strings and returns a
//! JSON string; failures come back as `{"error": "..."}`.

use std::sync::Arc;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use trihered::cones::cone_in_h;
use trihered::formal::is_exact;
use trihered::io::{self, Ctx};
use trihered::quiver_rep::{hom_ext, Quiver};
use trihered::tstruct::{build_path_graph, is_bounded, t_structure_from};
use trihered::{Error, Result};

fn context(quiver_json: &str, p: u32) -> Result<Ctx> {
    if !trihered::linalg::is_prime(p) {
        return Err(Error::Parse(format!("{p} is not prime")));
    }
    let q = io::parse_quiver(&io::parse_json(quiver_json)?)?;
    let c = Ctx::new(Arc::new(q), p);
    if c.indecs.is_none() {
        return Err(Error::Unsupported("the quiver is not of Dynkin type".into()));
    }
    Ok(c)
}

fn respond(r: Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({"error": e.to_string()})).to_string()
}

/// Indecomposables of a Dynkin quiver with labels and dimension vectors.
pub fn indecomposables_json(quiver_json: &str, p: u32) -> String {
    respond(context(quiver_json, p).map(|c| {
        let l = c.indecs.as_ref().expect("Dynkin");
        let list: Vec<Value> = l.reps.iter().zip(&l.names).map(|(r, n)| json!({"label": n, "dims": r.dims()})).collect();
        json!({"count": l.len(), "indecomposables": list})
    }))
}

/// Cone of the morphism `source -> target` with the given Hom coordinates.
pub fn cone_json(quiver_json: &str, p: u32, source: &str, target: &str, coords: &[u32]) -> String {
    respond((|| {
        let c = context(quiver_json, p)?;
        let l = c.indecs.as_ref().expect("Dynkin");
        let x = c.named(source, "source")?;
        let y = c.named(target, "target")?;
        let he = hom_ext(&x, &y);
        if coords.len() != he.hom_dim() {
            return Err(Error::Parse(format!("Hom({source}, {target}) has dimension {}, got {} coordinates", he.hom_dim(), coords.len())));
        }
        let (t, _) = cone_in_h(&he.hom_from_coords(coords));
        let ex = is_exact(&t, &l.reps, None);
        Ok(json!({
            "hom_dim": he.hom_dim(),
            "cone": io::summand_labels(t.z(), l, 1),
            "exact": ex.passed,
        }))
    })())
}

/// The t-structure generated by `generator` (e.g. `S1[0]`) within `lo..hi`.
pub fn t_structure_json(quiver_json: &str, p: u32, generator: &str, lo: i32, hi: i32) -> String {
    respond((|| {
        let c = context(quiver_json, p)?;
        if lo > hi {
            return Err(Error::Parse(format!("window {lo}..{hi} is empty")));
        }
        let g = build_path_graph(&c.quiver, p, (lo, hi))?;
        let m = g.parse_node(generator).ok_or_else(|| Error::Parse(format!("unknown object \"{generator}\"")))?;
        let ts = t_structure_from(&g, m)?;
        let labels = |s: &std::collections::BTreeSet<_>| -> Vec<String> { s.iter().map(|&v| g.label(v)).collect() };
        let bounded = is_bounded(&g, m).ok().map(|b| b.0);
        Ok(json!({
            "leq0": labels(&ts.leq0),
            "geq0": labels(&ts.geq0),
            "heart": labels(&ts.heart),
            "passed": ts.report.passed(),
            "bounded": bounded,
        }))
    })())
}

/// The quiver `1 -> 2 -> ... -> n` as JSON.
pub fn linear_quiver_json(n: usize) -> String {
    if n == 0 {
        return json!({"error": "need at least one vertex"}).to_string();
    }
    io::quiver_to_json(&Quiver::a(n)).to_string()
}

#[wasm_bindgen]
pub fn indecomposables(quiver_json: &str, p: u32) -> String {
    indecomposables_json(quiver_json, p)
}

#[wasm_bindgen]
pub fn cone(quiver_json: &str, p: u32, source: &str, target: &str, coords: Vec<u32>) -> String {
    cone_json(quiver_json, p, source, target, &coords)
}

#[wasm_bindgen]
pub fn t_structure(quiver_json: &str, p: u32, generator: &str, lo: i32, hi: i32) -> String {
    t_structure_json(quiver_json, p, generator, lo, hi)
}

#[wasm_bindgen]
pub fn linear_quiver(n: usize) -> String {
    linear_quiver_json(n)
}
