use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, QuotientChart};

use super::quiver::Quiver;
use super::rep::Representation;

/// Reflection functor `S⁻_k` at a source `k`: `V'_k = coker(V_k -> ⊕_{k -> j} V_j)`.
/// The result lives on `reflected`, the quiver with the arrows at `k` reversed.
pub fn reflect_at_source(v: &Representation, k: usize, reflected: &Arc<Quiver>) -> Representation {
    let q = v.quiver();
    let p = v.prime();
    assert!(q.is_source(k), "vertex {} is not a source", k + 1);
    let out: Vec<usize> = q.arrows_out(k).collect();
    let total: usize = out.iter().map(|&a| v.dim(q.arrow(a).target)).sum();
    let mut stacked = Matrix::zeros(p, 0, v.dim(k));
    for &a in &out {
        stacked = stacked.vstack(v.mat(a));
    }
    let chart = QuotientChart::new(&stacked);
    let proj = chart.projection();
    let mut dims = v.dims().to_vec();
    dims[k] = chart.dim();
    let mut mats = v.mats().to_vec();
    let mut off = 0;
    for &a in &out {
        let d = v.dim(q.arrow(a).target);
        mats[a] = proj.block(0, off, chart.dim(), d);
        off += d;
    }
    debug_assert_eq!(off, total);
    Representation::new(reflected.clone(), p, dims, mats).expect("reflection yields a representation")
}

/// Inverse Coxeter functor: reflect at every vertex in topological order.
/// Returns `None` as soon as an intermediate representation vanishes.
pub fn coxeter_minus(v: &Representation, chain: &[(usize, Arc<Quiver>)]) -> Option<Representation> {
    let mut cur = v.clone();
    for (k, q) in chain {
        cur = reflect_at_source(&cur, *k, q);
        if cur.is_zero() {
            return None;
        }
    }
    Some(cur)
}

fn coxeter_chain(q: &Arc<Quiver>) -> Vec<(usize, Arc<Quiver>)> {
    let mut chain = Vec::new();
    let mut cur = q.clone();
    for &k in q.topological_order() {
        let next = Arc::new(cur.reflect_at(k));
        chain.push((k, next.clone()));
        cur = next;
    }
    // the last quiver is structurally equal to `q`; use the original handle
    if let Some(last) = chain.last_mut() {
        debug_assert!(*last.1 == **q);
        last.1 = q.clone();
    }
    chain
}

/// One representative per isomorphism class of indecomposables of a Dynkin quiver,
/// obtained as the inverse Coxeter orbits of the indecomposable projectives.
/// Ordered by total dimension, then by dimension vector (descending, so `S1` precedes `S2`).
pub fn indecomposables(q: &Arc<Quiver>, p: u32) -> Result<Vec<Representation>> {
    let expected = q.positive_root_count()?;
    let chain = coxeter_chain(q);
    let mut out: Vec<Representation> = Vec::new();
    for v in 0..q.vertex_count() {
        let mut cur = Some(Representation::projective(q.clone(), p, v));
        while let Some(rep) = cur {
            let plain = Representation::new(q.clone(), p, rep.dims().to_vec(), rep.mats().to_vec())?;
            if out.iter().any(|r| r.dims() == plain.dims()) {
                return Err(Error::Unsupported("repeated dimension vector in Coxeter orbit".into()));
            }
            out.push(plain);
            if out.len() > expected {
                return Err(Error::Unsupported("too many indecomposables".into()));
            }
            cur = coxeter_minus(&rep, &chain);
        }
    }
    if out.len() != expected {
        return Err(Error::Unsupported(format!("found {} indecomposables, expected {}", out.len(), expected)));
    }
    out.sort_by(|a, b| a.total_dim().cmp(&b.total_dim()).then_with(|| b.dims().cmp(a.dims())));
    Ok(out)
}

/// Label of an indecomposable: `S{i}`, `P{i}`, `I{i}` (1-based) or `M(d1,...)`.
pub fn name_of(q: &Arc<Quiver>, p: u32, x: &Representation) -> String {
    let n = q.vertex_count();
    for v in 0..n {
        let mut e = vec![0; n];
        e[v] = 1;
        if x.dims() == e.as_slice() {
            return format!("S{}", v + 1);
        }
    }
    for v in 0..n {
        if Representation::projective(q.clone(), p, v).dims() == x.dims() {
            return format!("P{}", v + 1);
        }
    }
    for v in 0..n {
        if Representation::injective(q.clone(), p, v).dims() == x.dims() {
            return format!("I{}", v + 1);
        }
    }
    let parts: Vec<String> = x.dims().iter().map(usize::to_string).collect();
    format!("M({})", parts.join(","))
}

/// Indecomposables together with their labels.
#[derive(Clone, Debug)]
pub struct IndecList {
    pub reps: Vec<Representation>,
    pub names: Vec<String>,
}

impl IndecList {
    pub fn new(q: &Arc<Quiver>, p: u32) -> Result<Self> {
        let reps = indecomposables(q, p)?;
        let names = reps.iter().map(|r| name_of(q, p, r)).collect();
        Ok(IndecList { reps, names })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index by label, or by a dimension vector written `1,0,1` or `(1,0,1)`.
    pub fn lookup(&self, key: &str) -> Option<usize> {
        if let Some(i) = self.names.iter().position(|n| n == key) {
            return Some(i);
        }
        if let Some(dims) = self.alias_dims(key) {
            return self.reps.iter().position(|r| r.dims() == dims.as_slice());
        }
        let trimmed = key.trim_start_matches("M").trim_start_matches('(').trim_end_matches(')');
        let dims: Option<Vec<usize>> = trimmed.split(',').map(|s| s.trim().parse().ok()).collect();
        let dims = dims?;
        self.reps.iter().position(|r| r.dims() == dims.as_slice())
    }

    /// Dimension vector of `S<v>`, `P<v>` or `I<v>` (vertices numbered from 1).
    fn alias_dims(&self, key: &str) -> Option<Vec<usize>> {
        let first = self.reps.first()?;
        let (q, p) = (first.quiver().clone(), first.prime());
        let mut chars = key.chars();
        let kind = chars.next()?;
        let v: usize = chars.as_str().parse().ok()?;
        if v == 0 || v > q.vertex_count() {
            return None;
        }
        match kind {
            'S' => {
                let mut e = vec![0; q.vertex_count()];
                e[v - 1] = 1;
                Some(e)
            }
            'P' => Some(Representation::projective(q, p, v - 1).dims().to_vec()),
            'I' => Some(Representation::injective(q, p, v - 1).dims().to_vec()),
            _ => None,
        }
    }

    /// Index of the indecomposable with the same dimension vector.
    pub fn index_of(&self, x: &Representation) -> Option<usize> {
        self.reps.iter().position(|r| r.dims() == x.dims())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::decompose::is_indecomposable;

    #[test]
    fn counts_match_positive_roots() {
        for (q, n) in [(Quiver::a(2), 3), (Quiver::a(3), 6), (Quiver::d(4), 12), (Quiver::d(5), 20), (Quiver::e(6), 36)] {
            let q = Arc::new(q);
            let l = indecomposables(&q, 101).unwrap();
            assert_eq!(l.len(), n);
            for r in &l {
                assert!(is_indecomposable(r, 5));
            }
        }
    }

    #[test]
    fn a2_names() {
        let q = Arc::new(Quiver::a(2));
        let l = IndecList::new(&q, 101).unwrap();
        assert_eq!(l.names, vec!["S1", "S2", "P1"]);
        assert_eq!(l.lookup("P1"), Some(2));
        assert_eq!(l.lookup("1,1"), Some(2));
    }

    #[test]
    fn kronecker_is_rejected() {
        let q = Arc::new(Quiver::kronecker());
        assert!(matches!(indecomposables(&q, 101), Err(Error::Unsupported(_))));
    }
}
