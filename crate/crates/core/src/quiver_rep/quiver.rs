use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A path as the sequence of arrows traversed, starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A finite acyclic quiver. Vertices are `0..vertex_count`.
#[derive(Clone)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
    paths_from: Vec<Vec<Path>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl Hash for Quiver {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.arrows.hash(state);
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quiver({} vertices;", self.vertices)?;
        for a in &self.arrows {
            write!(f, " {}:{}->{}", a.label, a.source + 1, a.target + 1)?;
        }
        write!(f, ")")
    }
}

/// Dynkin type of one connected component of the underlying graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn positive_roots(self) -> usize {
        match self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

impl Quiver {
    /// Arrows given as (label, source, target) with 0-based vertices.
    pub fn new(vertices: usize, arrows: Vec<(String, usize, usize)>) -> Result<Self> {
        let mut labels = BTreeSet::new();
        let mut list = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            if s >= vertices || t >= vertices {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {label} references vertex outside 1..={vertices}"
                )));
            }
            if !labels.insert(label.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label {label}")));
            }
            list.push(Arrow { label, source: s, target: t });
        }
        let topo = topological_order(vertices, &list)
            .ok_or_else(|| Error::InvalidQuiver("directed cycle detected".into()))?;
        let mut q = Quiver { vertices, arrows: list, topo, paths_from: Vec::new() };
        q.paths_from = (0..vertices).map(|v| q.enumerate_paths(v)).collect();
        Ok(q)
    }

    /// Linearly oriented A_n: 1 -> 2 -> ... -> n, arrows a1, a2, ...
    pub fn a(n: usize) -> Self {
        let arrows = (0..n.saturating_sub(1))
            .map(|i| (if n == 2 { "a".to_string() } else { format!("a{}", i + 1) }, i, i + 1))
            .collect();
        Quiver::new(n, arrows).expect("linear quiver is acyclic")
    }

    /// D_n with the branch arms pointing into vertex n-2 (1-based).
    pub fn d(n: usize) -> Self {
        assert!(n >= 4);
        let mut arrows = Vec::new();
        for i in 0..n - 3 {
            arrows.push((format!("a{}", i + 1), i, i + 1));
        }
        arrows.push((format!("a{}", n - 2), n - 2, n - 3));
        arrows.push((format!("a{}", n - 1), n - 1, n - 3));
        Quiver::new(n, arrows).expect("acyclic")
    }

    /// E_n: a chain 1 - 2 - ... - (n-1) with vertex n attached to vertex 3.
    pub fn e(n: usize) -> Self {
        assert!((6..=8).contains(&n));
        let mut arrows = Vec::new();
        for i in 0..n - 2 {
            arrows.push((format!("a{}", i + 1), i, i + 1));
        }
        arrows.push((format!("a{}", n - 1), n - 1, 2));
        Quiver::new(n, arrows).expect("acyclic")
    }

    /// Kronecker quiver: two parallel arrows 1 -> 2 (tame, not Dynkin).
    pub fn kronecker() -> Self {
        Quiver::new(2, vec![("a".into(), 0, 1), ("b".into(), 0, 1)]).expect("acyclic")
    }

    /// Disjoint union, relabelling arrows of `other` with a prime suffix when they clash.
    pub fn disjoint_union(&self, other: &Quiver) -> Self {
        let mut arrows: Vec<(String, usize, usize)> =
            self.arrows.iter().map(|a| (a.label.clone(), a.source, a.target)).collect();
        let taken: BTreeSet<String> = arrows.iter().map(|a| a.0.clone()).collect();
        for a in &other.arrows {
            let mut l = a.label.clone();
            while taken.contains(&l) {
                l.push('\'');
            }
            arrows.push((l, a.source + self.vertices, a.target + self.vertices));
        }
        Quiver::new(self.vertices + other.vertices, arrows).expect("union of acyclic quivers")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Vertices ordered so every arrow goes forward (sources first).
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn arrows_out(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn arrows_in(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].target == v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows_in(v).next().is_none()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows_out(v).next().is_none()
    }

    /// All paths starting at `v`, trivial path first, then depth-first in arrow order.
    pub fn paths_from(&self, v: usize) -> &[Path] {
        &self.paths_from[v]
    }

    pub fn paths_between(&self, from: usize, to: usize) -> impl Iterator<Item = &Path> + '_ {
        self.paths_from[from].iter().filter(move |p| p.end == to)
    }

    fn enumerate_paths(&self, v: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Path { start: v, end: v, arrows: vec![] }];
        while let Some(p) = stack.pop() {
            let mut ext: Vec<Path> = self
                .arrows_out(p.end)
                .map(|a| {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    Path { start: v, end: self.arrows[a].target, arrows }
                })
                .collect();
            ext.reverse();
            out.push(p);
            stack.extend(ext);
        }
        out
    }

    /// The same quiver with every arrow at `v` reversed.
    pub fn reflect_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == v || a.target == v {
                    (a.label.clone(), a.target, a.source)
                } else {
                    (a.label.clone(), a.source, a.target)
                }
            })
            .collect();
        Quiver::new(self.vertices, arrows).expect("reflection at a sink or source keeps the quiver acyclic")
    }

    /// Euler form of the quiver on dimension vectors.
    pub fn euler_form(&self, x: &[usize], y: &[usize]) -> i64 {
        let diag: i64 = (0..self.vertices).map(|i| (x[i] * y[i]) as i64).sum();
        let off: i64 = self.arrows.iter().map(|a| (x[a.source] * y[a.target]) as i64).sum();
        diag - off
    }

    /// Connected components of the underlying graph (vertex sets, sorted).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertices];
        let mut comps = Vec::new();
        for s in 0..self.vertices {
            if seen[s] {
                continue;
            }
            let mut comp = vec![];
            let mut queue = VecDeque::from([s]);
            seen[s] = true;
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for a in &self.arrows {
                    let other = if a.source == v {
                        a.target
                    } else if a.target == v {
                        a.source
                    } else {
                        continue;
                    };
                    if !seen[other] {
                        seen[other] = true;
                        queue.push_back(other);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Classify each connected component as A, D or E; error otherwise.
    pub fn dynkin_types(&self) -> Result<Vec<DynkinType>> {
        let mut out = Vec::new();
        for comp in self.components() {
            out.push(self.classify_component(&comp)?);
        }
        Ok(out)
    }

    pub fn is_dynkin(&self) -> bool {
        self.dynkin_types().is_ok()
    }

    fn classify_component(&self, comp: &[usize]) -> Result<DynkinType> {
        let n = comp.len();
        let edges: Vec<&Arrow> = self.arrows.iter().filter(|a| comp.contains(&a.source)).collect();
        let not_dynkin = |why: &str| Error::Unsupported(format!("quiver is not of Dynkin type: {why}"));
        if edges.len() != n - 1 {
            return Err(not_dynkin("underlying graph is not a tree"));
        }
        let deg = |v: usize| edges.iter().filter(|a| a.source == v || a.target == v).count();
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
        if branch.iter().any(|&v| deg(v) > 3) || branch.len() > 1 {
            return Err(not_dynkin("branch vertex of degree > 3 or several branch vertices"));
        }
        let Some(&center) = branch.first() else {
            return Ok(DynkinType::A(n));
        };
        // arm lengths (vertices, excluding the center)
        let mut arms = Vec::new();
        for a in edges.iter().filter(|a| a.source == center || a.target == center) {
            let mut prev = center;
            let mut cur = if a.source == center { a.target } else { a.source };
            let mut len = 1;
            loop {
                let next = edges.iter().find_map(|b| {
                    let o = if b.source == cur { b.target } else if b.target == cur { b.source } else { return None };
                    (o != prev).then_some(o)
                });
                match next {
                    Some(nx) => {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    None => break,
                }
            }
            arms.push(len);
        }
        arms.sort_unstable();
        match (arms[0], arms[1], arms[2]) {
            (1, 1, _) => Ok(DynkinType::D(n)),
            (1, 2, 2) | (1, 2, 3) | (1, 2, 4) => Ok(DynkinType::E(n)),
            _ => Err(not_dynkin("branch arms too long")),
        }
    }

    pub fn positive_root_count(&self) -> Result<usize> {
        Ok(self.dynkin_types()?.into_iter().map(DynkinType::positive_roots).sum())
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.insert(a.target);
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_rejected() {
        let err = Quiver::new(2, vec![("a".into(), 0, 1), ("b".into(), 1, 0)]).unwrap_err();
        assert!(err.to_string().contains("directed cycle detected"));
        assert!(Quiver::new(1, vec![("l".into(), 0, 0)]).is_err());
    }

    #[test]
    fn duplicate_label_rejected() {
        assert!(Quiver::new(3, vec![("a".into(), 0, 1), ("a".into(), 1, 2)]).is_err());
    }

    #[test]
    fn paths_of_a3() {
        let q = Quiver::a(3);
        assert_eq!(q.paths_from(0).len(), 3);
        assert_eq!(q.paths_from(2).len(), 1);
        assert_eq!(q.paths_between(0, 2).count(), 1);
    }

    #[test]
    fn dynkin_classification() {
        assert_eq!(Quiver::a(3).dynkin_types().unwrap(), vec![DynkinType::A(3)]);
        assert_eq!(Quiver::d(4).dynkin_types().unwrap(), vec![DynkinType::D(4)]);
        assert_eq!(Quiver::d(5).positive_root_count().unwrap(), 20);
        assert_eq!(Quiver::e(6).positive_root_count().unwrap(), 36);
        assert!(Quiver::kronecker().dynkin_types().is_err());
        let u = Quiver::a(1).disjoint_union(&Quiver::a(1));
        assert_eq!(u.positive_root_count().unwrap(), 2);
        // affine D4~: centre with four arms
        let q = Quiver::new(5, (1..5).map(|i| (format!("a{i}"), i, 0)).collect()).unwrap();
        assert!(!q.is_dynkin());
    }

    #[test]
    fn euler_form_a2() {
        let q = Quiver::a(2);
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.euler_form(&[1, 1], &[1, 1]), 1);
    }
}
