//! Paths between indecomposables, blocks, and the split t-structures they
//! generate. All verdicts are relative to a finite window of shifts.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::cones::cone_general;
use crate::error::{Error, Result};
use crate::formal::{FormalObject, HomSpace};
use crate::quiver_rep::{hom_ext, IndecList, Quiver};

/// The indecomposable `indec` shifted by `shift`, i.e. `I[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub indec: usize,
    pub shift: i32,
}

impl Node {
    pub fn new(indec: usize, shift: i32) -> Node {
        Node { indec, shift }
    }

    pub fn shifted(self, k: i32) -> Node {
        Node { indec: self.indec, shift: self.shift + k }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Nonzero `Hom_H` at equal shifts.
    Hom,
    /// Nonzero `Ext¹_H`, from shift `k` to `k + 1`.
    Ext,
    /// `X[k] -> X[k+1]`.
    Shift,
    /// Added by hand (test fixtures).
    Extra,
}

/// Indecomposables times shifts in a window, with hom-edges and shift-edges.
#[derive(Clone, Debug)]
pub struct PathGraph {
    pub indecs: IndecList,
    pub window: (i32, i32),
    hom_dims: Vec<Vec<usize>>,
    ext_dims: Vec<Vec<usize>>,
    adj: Vec<Vec<(usize, EdgeKind)>>,
}

impl PathGraph {
    pub fn new(indecs: &IndecList, window: (i32, i32)) -> PathGraph {
        let n = indecs.len();
        let mut hom_dims = vec![vec![0; n]; n];
        let mut ext_dims = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let he = hom_ext(&indecs.reps[i], &indecs.reps[j]);
                hom_dims[i][j] = he.hom_dim();
                ext_dims[i][j] = he.ext_dim();
            }
        }
        let mut g = PathGraph { indecs: indecs.clone(), window, hom_dims, ext_dims, adj: Vec::new() };
        g.adj = vec![Vec::new(); g.node_count()];
        for a in g.nodes() {
            let ia = g.index(a).unwrap();
            for j in 0..n {
                if j != a.indec && g.hom_dims[a.indec][j] > 0 {
                    let ib = g.index(Node::new(j, a.shift)).unwrap();
                    g.adj[ia].push((ib, EdgeKind::Hom));
                }
            }
            if let Some(ib) = g.index(a.shifted(1)) {
                for j in 0..n {
                    if g.ext_dims[a.indec][j] > 0 {
                        let ic = g.index(Node::new(j, a.shift + 1)).unwrap();
                        g.adj[ia].push((ic, EdgeKind::Ext));
                    }
                }
                g.adj[ia].push((ib, EdgeKind::Shift));
            }
        }
        g
    }

    pub fn node_count(&self) -> usize {
        let (lo, hi) = self.window;
        if hi < lo {
            0
        } else {
            (hi - lo + 1) as usize * self.indecs.len()
        }
    }

    /// Nodes in shift-major order.
    pub fn nodes(&self) -> Vec<Node> {
        let (lo, hi) = self.window;
        (lo..=hi).flat_map(|k| (0..self.indecs.len()).map(move |i| Node::new(i, k))).collect()
    }

    pub fn index(&self, v: Node) -> Option<usize> {
        let (lo, hi) = self.window;
        (v.shift >= lo && v.shift <= hi && v.indec < self.indecs.len()).then(|| (v.shift - lo) as usize * self.indecs.len() + v.indec)
    }

    pub fn node(&self, i: usize) -> Node {
        let n = self.indecs.len();
        Node::new(i % n, self.window.0 + (i / n) as i32)
    }

    pub fn contains(&self, v: Node) -> bool {
        self.index(v).is_some()
    }

    pub fn label(&self, v: Node) -> String {
        format!("{}[{}]", self.indecs.names[v.indec], v.shift)
    }

    /// Parse `S1[0]`, `P2[-1]` or a bare label (shift 0).
    pub fn parse_node(&self, s: &str) -> Option<Node> {
        let s = s.trim();
        let (name, shift) = match s.strip_suffix(']').and_then(|t| t.rsplit_once('[')) {
            Some((name, k)) => (name, k.trim().parse().ok()?),
            None => (s, 0),
        };
        Some(Node::new(self.indecs.lookup(name)?, shift))
    }

    /// `dim Hom(a, b)` in the formal model.
    pub fn hom_dim(&self, a: Node, b: Node) -> usize {
        match b.shift - a.shift {
            0 => self.hom_dims[a.indec][b.indec],
            1 => self.ext_dims[a.indec][b.indec],
            _ => 0,
        }
    }

    pub fn edges(&self, v: Node) -> Vec<(Node, EdgeKind)> {
        match self.index(v) {
            Some(i) => self.adj[i].iter().map(|&(j, k)| (self.node(j), k)).collect(),
            None => Vec::new(),
        }
    }

    pub fn has_edge(&self, a: Node, b: Node) -> bool {
        self.edges(a).iter().any(|&(c, _)| c == b)
    }

    /// Add an edge by hand.
    pub fn add_edge(&mut self, a: Node, b: Node) -> Result<()> {
        let (Some(i), Some(j)) = (self.index(a), self.index(b)) else {
            return Err(Error::WindowExhausted("edge endpoint outside the window".into()));
        };
        self.adj[i].push((j, EdgeKind::Extra));
        Ok(())
    }

    /// Nodes reachable from `v` by directed paths, with BFS parents.
    fn reach(&self, v: Node) -> (Vec<bool>, Vec<Option<usize>>) {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut parent = vec![None; n];
        let Some(s) = self.index(v) else {
            return (seen, parent);
        };
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for &(j, _) in &self.adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
        (seen, parent)
    }

    pub fn reachable(&self, v: Node) -> BTreeSet<Node> {
        let (seen, _) = self.reach(v);
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| self.node(i)).collect()
    }

    /// A shortest directed path `a ⇝ b`, if any.
    pub fn find_path(&self, a: Node, b: Node) -> Option<Vec<Node>> {
        let (seen, parent) = self.reach(a);
        let mut cur = self.index(b)?;
        if !seen[cur] {
            return None;
        }
        let mut out = vec![self.node(cur)];
        while let Some(p) = parent[cur] {
            out.push(self.node(p));
            cur = p;
        }
        out.reverse();
        Some(out)
    }

    /// Whether `path` is a forward path in the graph.
    pub fn is_path(&self, path: &[Node]) -> bool {
        path.iter().all(|&v| self.contains(v)) && path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    pub fn stalk(&self, v: Node) -> FormalObject {
        FormalObject::stalk(&self.indecs.reps[v.indec], -v.shift)
    }
}

/// The path graph of a Dynkin quiver over `F_p`.
pub fn build_path_graph(q: &Arc<Quiver>, p: u32, window: (i32, i32)) -> Result<PathGraph> {
    if !q.is_dynkin() {
        return Err(Error::Unsupported("path graphs need a Dynkin quiver".into()));
    }
    Ok(PathGraph::new(&IndecList::new(q, p)?, window))
}

/// Connected components of the underlying undirected graph, each sorted.
pub fn blocks(g: &PathGraph) -> Vec<Vec<Node>> {
    let n = g.node_count();
    let mut und = vec![Vec::new(); n];
    for i in 0..n {
        for &(j, _) in &g.adj[i] {
            und[i].push(j);
            und[j].push(i);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut members = Vec::new();
        let mut stack = vec![s];
        comp[s] = c;
        while let Some(i) = stack.pop() {
            members.push(g.node(i));
            for &j in &und[i] {
                if comp[j] == usize::MAX {
                    comp[j] = c;
                    stack.push(j);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    HomForward,
    HomBackward,
    ShiftUp,
    ShiftDown,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::HomForward => "hom-forward",
            StepKind::HomBackward => "hom-backward",
            StepKind::ShiftUp => "shift-up",
            StepKind::ShiftDown => "shift-down",
        }
    }

    pub fn parse(s: &str) -> Option<StepKind> {
        match s {
            "hom-forward" | "forward" => Some(StepKind::HomForward),
            "hom-backward" | "backward" => Some(StepKind::HomBackward),
            "shift-up" => Some(StepKind::ShiftUp),
            "shift-down" => Some(StepKind::ShiftDown),
            _ => None,
        }
    }

    fn is_forward(self) -> bool {
        matches!(self, StepKind::HomForward | StepKind::ShiftUp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: Node,
    pub steps: Vec<(StepKind, Node)>,
}

impl Walk {
    pub fn nodes(&self) -> Vec<Node> {
        std::iter::once(self.start).chain(self.steps.iter().map(|s| s.1)).collect()
    }

    pub fn end(&self) -> Node {
        self.steps.last().map_or(self.start, |s| s.1)
    }

    pub fn backward_steps(&self) -> usize {
        self.steps.iter().filter(|s| !s.0.is_forward()).count()
    }

    /// Check every step against the graph.
    pub fn validate(&self, g: &PathGraph) -> Result<()> {
        let mut cur = self.start;
        if !g.contains(cur) {
            return Err(Error::WindowExhausted(format!("{} is outside the window", g.label(cur))));
        }
        for (i, &(kind, to)) in self.steps.iter().enumerate() {
            if !g.contains(to) {
                return Err(Error::WindowExhausted(format!("{} is outside the window", g.label(to))));
            }
            let ok = match kind {
                StepKind::HomForward => g.hom_dim(cur, to) > 0,
                StepKind::HomBackward => g.hom_dim(to, cur) > 0,
                StepKind::ShiftUp => to == cur.shifted(1),
                StepKind::ShiftDown => to == cur.shifted(-1),
            };
            if !ok {
                return Err(Error::Hypothesis(format!("step {} ({}) from {} to {} is not valid", i + 1, kind.name(), g.label(cur), g.label(to))));
            }
            cur = to;
        }
        Ok(())
    }
}

/// A forward path from the start of a walk to `end[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathResult {
    pub path: Vec<Node>,
    pub m: i32,
    pub rewrites: usize,
}

/// Rewrite a walk into a path `X ⇝ Y[m]` with `m ≥ 0`.
pub fn walk_to_path(g: &PathGraph, w: &Walk, seed: u64) -> Result<PathResult> {
    w.validate(g)?;
    let mut nodes = w.nodes();
    let mut kinds: Vec<StepKind> = w.steps.iter().map(|s| s.0).collect();
    let mut m = 0;
    let mut rewrites = 0;
    let need = |v: Node| -> Result<()> {
        if g.contains(v) {
            Ok(())
        } else {
            Err(Error::WindowExhausted(format!(
                "rewriting needs {} but the window is [{}, {}]",
                g.label(v),
                g.window.0,
                g.window.1
            )))
        }
    };
    while let Some(i) = kinds.iter().position(|k| !k.is_forward()) {
        rewrites += 1;
        let tail: Vec<Node> = nodes[i + 2..].iter().map(|v| v.shifted(1)).collect();
        for &v in &tail {
            need(v)?;
        }
        match kinds[i] {
            StepKind::ShiftDown => {
                nodes.truncate(i + 1);
                nodes.extend(tail);
                kinds.remove(i);
                m += 1;
            }
            StepKind::HomBackward => {
                let (xi, xj) = (nodes[i], nodes[i + 1]);
                if xi == xj {
                    nodes.remove(i + 1);
                    kinds.remove(i);
                    continue;
                }
                let z = cone_summand(g, xj, xi, seed)?;
                need(z)?;
                need(xj.shifted(1))?;
                nodes.truncate(i + 1);
                nodes.push(z);
                nodes.push(xj.shifted(1));
                nodes.extend(tail);
                kinds.splice(i..=i, [StepKind::HomForward, StepKind::HomForward]);
                m += 1;
            }
            _ => unreachable!(),
        }
    }
    Ok(PathResult { path: nodes, m, rewrites })
}

/// For a nonzero `f : a -> b`, the first indecomposable summand `Z'` of its
/// cone with `b -> Z'` and `Z' -> a[1]` both nonzero.
fn cone_summand(g: &PathGraph, a: Node, b: Node, seed: u64) -> Result<Node> {
    let (xa, xb) = (g.stalk(a), g.stalk(b));
    let basis = HomSpace::new(&xa, &xb).basis();
    let f = basis.first().ok_or_else(|| Error::Hypothesis(format!("Hom({}, {}) = 0", g.label(a), g.label(b))))?;
    let t = cone_general(f);
    for (rep, n, inc, proj) in t.z().decompose(seed) {
        if !proj.compose(&t.g).is_zero() && !t.h.compose(&inc).is_zero() {
            let idx = g
                .indecs
                .index_of(&rep)
                .ok_or_else(|| Error::Inconsistent("cone summand is not in the indecomposable list".into()))?;
            return Ok(Node::new(idx, -n));
        }
    }
    Err(Error::Inconsistent("no cone summand with both composites nonzero".into()))
}

/// Outcome of the axiom checks for a split t-structure, within the window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TReport {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    pub split: bool,
    pub failures: Vec<String>,
}

impl TReport {
    pub fn passed(&self) -> bool {
        self.t1 && self.t2 && self.t3 && self.split
    }
}

#[derive(Clone, Debug)]
pub struct TStructure {
    pub generator: Node,
    pub window: (i32, i32),
    pub leq0: BTreeSet<Node>,
    pub geq0: BTreeSet<Node>,
    pub heart: BTreeSet<Node>,
    pub report: TReport,
}

/// The aisles `T^{≤0}_M` (reachable from `M`) and `T^{≥0}_M` (`Z` with
/// `Z[-1]` unreachable), with the axioms checked inside the window.
pub fn t_structure_from(g: &PathGraph, m: Node) -> Result<TStructure> {
    if !g.contains(m) {
        return Err(Error::WindowExhausted(format!("{} is outside the window", g.label(m))));
    }
    let leq0 = g.reachable(m);
    let nodes = g.nodes();
    let geq0: BTreeSet<Node> = nodes.iter().copied().filter(|z| !leq0.contains(&z.shifted(-1))).collect();
    let heart: BTreeSet<Node> = leq0.intersection(&geq0).copied().collect();
    let mut report = TReport { t1: true, t2: true, t3: true, split: true, failures: Vec::new() };
    for &y in &leq0 {
        for &z in &geq0 {
            if g.hom_dim(y, z.shifted(-1)) > 0 {
                report.t1 = false;
                report.failures.push(format!("(t1) Hom({}, {}) ≠ 0", g.label(y), g.label(z.shifted(-1))));
            }
            // Hom(T^{>0}, T^{<0}) = Hom(Z[-1], Y[1])
            if g.hom_dim(z.shifted(-1), y.shifted(1)) > 0 {
                report.split = false;
                report.failures.push(format!("(split) Hom({}, {}) ≠ 0", g.label(z.shifted(-1)), g.label(y.shifted(1))));
            }
        }
        if g.contains(y.shifted(1)) && !leq0.contains(&y.shifted(1)) {
            report.t2 = false;
            report.failures.push(format!("(t2) {} ∈ T≤0 but its shift is not", g.label(y)));
        }
    }
    for &z in &geq0 {
        if g.contains(z.shifted(-1)) && !geq0.contains(&z.shifted(-1)) {
            report.t2 = false;
            report.failures.push(format!("(t2) {} ∈ T≥0 but Z[-1] is not", g.label(z)));
        }
    }
    for &x in &nodes {
        let plus = x.shifted(1);
        if !leq0.contains(&x) && g.contains(plus) && !geq0.contains(&plus) {
            report.t3 = false;
            report.failures.push(format!("(t3) {} splits into neither aisle", g.label(x)));
        }
    }
    Ok(TStructure { generator: m, window: g.window, leq0, geq0, heart, report })
}

/// Bounded iff there is no path `M ⇝ M[-1]`; otherwise the path is returned.
pub fn is_bounded(g: &PathGraph, m: Node) -> Result<(bool, Option<Vec<Node>>)> {
    let target = m.shifted(-1);
    if !g.contains(m) || !g.contains(target) {
        return Err(Error::WindowExhausted(format!("window must contain {} and {}", g.label(m), g.label(target))));
    }
    match g.find_path(m, target) {
        Some(p) => Ok((false, Some(p))),
        None => Ok((true, None)),
    }
}

/// `X ≅ ⊕ₙ Hⁿ[-n]`: each indecomposable summand `Y` of `X` is `(Y[m])[-m]`
/// for the least `m` with a path `M ⇝ Y[m]`; returns the pairs `(Y[m], m)`.
pub fn heart_decompose(g: &PathGraph, ts: &TStructure, x: &FormalObject, seed: u64) -> Result<Vec<(Node, i32)>> {
    let mut out = Vec::new();
    for (rep, n, _, _) in x.decompose(seed) {
        let idx = g
            .indecs
            .index_of(&rep)
            .ok_or_else(|| Error::Inconsistent("summand is not in the indecomposable list".into()))?;
        let v = Node::new(idx, -n);
        if !g.contains(v) {
            return Err(Error::WindowExhausted(format!("summand {} is outside the window", g.label(v))));
        }
        let (lo, hi) = g.window;
        let m = (lo - v.shift..=hi - v.shift)
            .find(|&m| ts.leq0.contains(&v.shifted(m)))
            .ok_or_else(|| Error::WindowExhausted(format!("no path from the generator to a shift of {} inside the window", g.label(v))))?;
        out.push((v.shifted(m), m));
    }
    out.sort();
    Ok(out)
}

impl fmt::Display for TReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t1={} t2={} t3={} split={}", self.t1, self.t2, self.t3, self.split)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use rand::Rng;

    fn graph(q: Quiver, window: (i32, i32)) -> PathGraph {
        build_path_graph(&Arc::new(q), 101, window).unwrap()
    }

    fn n(g: &PathGraph, s: &str) -> Node {
        g.parse_node(s).unwrap()
    }

    #[test]
    fn block_counts() {
        assert_eq!(blocks(&graph(Quiver::a(2), (0, 2))).len(), 1);
        assert_eq!(blocks(&graph(Quiver::a(1).disjoint_union(&Quiver::a(1)), (0, 2))).len(), 2);
        assert!(build_path_graph(&Arc::new(Quiver::kronecker()), 101, (0, 1)).is_err());
    }

    #[test]
    fn backward_step_becomes_cone_detour() {
        let g = graph(Quiver::a(2), (-1, 3));
        let w = Walk { start: n(&g, "S1[0]"), steps: vec![(StepKind::HomBackward, n(&g, "P1[0]"))] };
        let r = walk_to_path(&g, &w, 1).unwrap();
        assert_eq!(r.path, vec![n(&g, "S1[0]"), n(&g, "S2[1]"), n(&g, "P1[1]")]);
        assert_eq!(r.m, 1);
        assert!(g.is_path(&r.path));
    }

    #[test]
    fn shift_down_and_window() {
        let g = graph(Quiver::a(2), (0, 2));
        let w = Walk { start: n(&g, "S2[1]"), steps: vec![(StepKind::ShiftDown, n(&g, "S2[0]")), (StepKind::HomForward, n(&g, "P1[0]"))] };
        let r = walk_to_path(&g, &w, 1).unwrap();
        assert_eq!(r.path, vec![n(&g, "S2[1]"), n(&g, "P1[1]")]);
        assert_eq!(r.m, 1);
        let small = graph(Quiver::a(2), (0, 0));
        let w = Walk { start: n(&g, "S1[0]"), steps: vec![(StepKind::HomBackward, n(&g, "P1[0]"))] };
        assert!(matches!(walk_to_path(&small, &w, 1), Err(Error::WindowExhausted(_))));
        let bad = Walk { start: n(&g, "S1[0]"), steps: vec![(StepKind::HomForward, n(&g, "S2[0]"))] };
        assert!(matches!(walk_to_path(&g, &bad, 1), Err(Error::Hypothesis(_))));
    }

    fn random_walk(g: &PathGraph, len: usize, rng: &mut impl Rng) -> Walk {
        let (lo, hi) = g.window;
        let mid = (lo + hi) / 2;
        let mut cur = Node::new(rng.gen_range(0..g.indecs.len()), mid);
        let start = cur;
        let mut steps = Vec::new();
        for _ in 0..len {
            let mut options = Vec::new();
            for v in g.nodes() {
                if v.shift != cur.shift {
                    continue;
                }
                if v != cur && g.hom_dim(cur, v) > 0 {
                    options.push((StepKind::HomForward, v));
                }
                if v != cur && g.hom_dim(v, cur) > 0 {
                    options.push((StepKind::HomBackward, v));
                }
            }
            options.push((StepKind::ShiftDown, cur.shifted(-1)));
            options.push((StepKind::ShiftUp, cur.shifted(1)));
            options.retain(|o| o.1.shift >= mid - 1 && o.1.shift <= mid + 1);
            let s = options[rng.gen_range(0..options.len())];
            steps.push(s);
            cur = s.1;
        }
        Walk { start, steps }
    }

    #[test]
    fn random_walks_become_paths() {
        let mut rng = random::rng(7);
        for q in [Quiver::a(3), Quiver::d(4)] {
            let g = graph(q, (-2, 14));
            for _ in 0..15 {
                let w = random_walk(&g, 4, &mut rng);
                let r = walk_to_path(&g, &w, 3).unwrap();
                assert!(r.m >= 0);
                assert_eq!(r.rewrites, w.backward_steps());
                assert_eq!(r.path[0], w.start);
                assert_eq!(*r.path.last().unwrap(), w.end().shifted(r.m));
                assert!(g.is_path(&r.path), "{:?}", r.path);
            }
        }
    }

    #[test]
    fn heart_of_simple_generator() {
        let g = graph(Quiver::a(2), (-2, 3));
        let ts = t_structure_from(&g, n(&g, "S1[0]")).unwrap();
        let heart: BTreeSet<Node> = ["S1[0]", "S2[1]", "P1[1]"].iter().map(|s| n(&g, s)).collect();
        assert_eq!(ts.heart, heart);
        assert!(ts.report.passed(), "{:?}", ts.report.failures);
        let p1 = g.stalk(n(&g, "P1[0]"));
        assert_eq!(heart_decompose(&g, &ts, &p1, 1).unwrap(), vec![(n(&g, "P1[1]"), 1)]);
        let x = g.stalk(n(&g, "S1[0]")).direct_sum(&g.stalk(n(&g, "S2[1]")));
        let parts = heart_decompose(&g, &ts, &x, 1).unwrap();
        assert!(parts.iter().all(|&(v, m)| m == 0 && ts.heart.contains(&v)));
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn every_generator_gives_a_bounded_t_structure() {
        for q in [Quiver::a(3), Quiver::d(4)] {
            let g = graph(q, (-3, 9));
            for i in 0..g.indecs.len() {
                let m = Node::new(i, 0);
                let ts = t_structure_from(&g, m).unwrap();
                assert!(ts.report.passed(), "{:?}", ts.report.failures);
                assert!(ts.heart.contains(&m));
                assert_eq!(is_bounded(&g, m).unwrap(), (true, None));
            }
        }
    }

    #[test]
    fn cycle_through_shift_is_unbounded() {
        let mut g = graph(Quiver::a(2), (-2, 2));
        let m = n(&g, "S1[0]");
        g.add_edge(n(&g, "P1[1]"), n(&g, "S1[-1]")).unwrap();
        let (bounded, witness) = is_bounded(&g, m).unwrap();
        assert!(!bounded);
        let w = witness.unwrap();
        assert!(g.is_path(&w));
        assert_eq!((w[0], *w.last().unwrap()), (m, m.shifted(-1)));
    }
}
