//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;

use trihered::axioms::verify_axioms;
use trihered::cones::{compare_cones, cone_general, cone_in_h, oracle_cone};
use trihered::equivalence::{hom_profile, strictify, verify_equivalence};
use trihered::formal::{is_exact, FormalObject};
use trihered::linalg::Matrix;
use trihered::octa::{derive_tr4_strong, derive_tr4prime, octahedron_tr4pp};
use trihered::quiver_rep::factor::{cokernel, kernel};
use trihered::quiver_rep::{decompose_rep, rep_iso, IndecList, Quiver, Representation};
use trihered::random;
use trihered::tstruct::{
    build_path_graph, heart_decompose, is_bounded, t_structure_from, walk_to_path, Node, PathGraph, StepKind, Walk,
};

const P: u32 = 101;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn indecs(q: Quiver) -> IndecList {
    IndecList::new(&Arc::new(q), P).unwrap()
}

/// A representation with the given dimension vector and uniformly random maps.
fn random_rep(q: &Arc<Quiver>, dims: &[usize], rng: &mut impl Rng) -> Representation {
    let mats = q
        .arrows()
        .iter()
        .map(|a| {
            let rows: Vec<Vec<i64>> =
                (0..dims[a.target]).map(|_| (0..dims[a.source]).map(|_| rng.gen_range(0..P as i64)).collect()).collect();
            if rows.is_empty() || dims[a.source] == 0 {
                Matrix::zeros(P, dims[a.target], dims[a.source])
            } else {
                Matrix::from_rows(P, &rows)
            }
        })
        .collect();
    Representation::new(q.clone(), P, dims.to_vec(), mats).unwrap()
}

/// Dimension vectors with entries at most `bound` admitting an indecomposable,
/// found by decomposing generic representations.
fn brute_force_indec_dims(q: &Arc<Quiver>, bound: usize, rng: &mut impl Rng) -> BTreeSet<Vec<usize>> {
    let n = q.vertex_count();
    let mut found = BTreeSet::new();
    let mut dims = vec![0usize; n];
    loop {
        let mut i = 0;
        while i < n && dims[i] == bound {
            dims[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        dims[i] += 1;
        for _ in 0..5 {
            if decompose_rep(&random_rep(q, &dims, rng), 1).len() == 1 {
                found.insert(dims.clone());
                break;
            }
        }
    }
    found
}

fn c1_indecomposable_counts() -> Verdict {
    let mut rng = random::rng(1);
    let mut counts = Vec::new();
    for (q, expected, bound) in [(Quiver::a(2), 3, 2), (Quiver::a(3), 6, 2), (Quiver::d(4), 12, 3)] {
        let q = Arc::new(q);
        let l = IndecList::new(&q, P).unwrap();
        ensure(l.len() == expected, || format!("enumerated {} indecomposables, expected {expected}", l.len()))?;
        let listed: BTreeSet<Vec<usize>> = l.reps.iter().map(|r| r.dims().to_vec()).collect();
        ensure(listed.len() == l.len(), || "two indecomposables share a dimension vector".into())?;
        for r in &l.reps {
            ensure(decompose_rep(r, 3).len() == 1, || format!("{:?} decomposes", r.dims()))?;
        }
        let oracle = brute_force_indec_dims(&q, bound, &mut rng);
        ensure(oracle == listed, || format!("brute force found {oracle:?}, enumeration gave {listed:?}"))?;
        counts.push(l.len().to_string());
    }
    Ok(format!("A2/A3/D4 = {}", counts.join("/")))
}

fn c2_cone_law() -> Verdict {
    let mut n = 0;
    for (q, seed) in [(Quiver::a(2), 21), (Quiver::a(3), 22)] {
        let l = indecs(q);
        let mut rng = random::rng(seed);
        for _ in 0..100 {
            let x = random::rep(&l.reps, 3, &mut rng);
            let y = random::rep(&l.reps, 3, &mut rng);
            let f = random::rep_morphism(&x, &y, &mut rng);
            let (t, d) = cone_in_h(&f);
            ensure(is_exact(&t, &l.reps, None).passed, || format!("cone of {f:?} not exact"))?;
            ensure(d.check(&f), || "pullback/pushout diagram does not commute".into())?;
            let z = t.z();
            for v in 0..x.dims().len() {
                let r = f.map(v).rank();
                let (k, c) = (x.dim(v) - r, y.dim(v) - r);
                ensure(z.component(-1).dim(v) == k && z.component(0).dim(v) == c, || {
                    format!("vertex {v}: cone dims ({}, {}), rank oracle ({k}, {c})", z.component(-1).dim(v), z.component(0).dim(v))
                })?;
            }
            let expected = FormalObject::from_components(
                x.quiver().clone(),
                P,
                [(-1, kernel(&f).source().clone()), (0, cokernel(&f).target().clone())],
            );
            ensure(z.is_isomorphic(&expected), || "cone is not Ker(f)[1] ⊕ Coker(f)".into())?;
            n += 1;
        }
    }
    Ok(format!("{n} morphisms"))
}

fn c3_cone_oracle() -> Verdict {
    let (mut n, mut mixed) = (0, 0);
    for (q, seed) in [(Quiver::a(3), 31), (Quiver::d(4), 32)] {
        let l = indecs(q);
        let mut rng = random::rng(seed);
        for i in 0..50 {
            let x = random::formal_object(&l.reps, (-1, 1), 3, &mut rng);
            let y = random::formal_object(&l.reps, (-1, 1), 3, &mut rng);
            let mut f = random::formal_morphism(&x, &y, &mut rng);
            let is_mixed = |f: &trihered::formal::FormalMorphism| {
                f.hom_parts().values().any(|h| !h.is_zero()) && f.ext_parts().values().any(|e| !e.is_zero())
            };
            while i % 2 == 1 && !is_mixed(&f) {
                let x = random::formal_object(&l.reps, (-1, 1), 3, &mut rng);
                let y = random::formal_object(&l.reps, (-1, 1), 3, &mut rng);
                f = random::formal_morphism(&x, &y, &mut rng);
            }
            if is_mixed(&f) {
                mixed += 1;
            }
            let t = cone_general(&f);
            let o = oracle_cone(&f).map_err(|e| e.to_string())?;
            let iso = compare_cones(&t, &o, random::trial_seed(seed, i)).map_err(|e| e.to_string())?;
            ensure(iso.is_some(), || format!("trial {i} (seed {seed}): no triangle isomorphism"))?;
            n += 1;
        }
    }
    Ok(format!("{n} formal morphisms, {mixed} with both hom and ext parts"))
}

fn c4_hom_profile() -> Verdict {
    let l = indecs(Quiver::a(3));
    let rows = hom_profile(&l, -6..=6).map_err(|e| e.to_string())?;
    ensure(rows.len() == l.len() * l.len() * 13, || format!("{} rows", rows.len()))?;
    for r in &rows {
        ensure(r.consistent(), || format!("{r:?}"))?;
        ensure(r.n == 0 || r.n == 1 || r.formal == 0, || format!("nonzero Hom in degree {}: {r:?}", r.n))?;
    }
    Ok(format!("{} pairs, shifts -6..6", rows.len()))
}

fn c5_functor() -> Verdict {
    let mut summary = Vec::new();
    for (q, name) in [(Quiver::a(2), "A2"), (Quiver::a(3), "A3")] {
        let q2 = q.clone();
        let r = verify_equivalence(&Arc::new(q), P, 51, 100, (-2, 2)).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.failures.first()))?;
        for check in ["functoriality", "triangle exactness", "triangle iso"] {
            let t = &r.checks[check];
            ensure(t.total >= 100, || format!("{name}: only {} {check} trials", t.total))?;
        }
        let pairs = indecs(q2).len().pow(2) * 9;
        ensure(r.checks["fullness dims"].total == pairs, || format!("{name}: fullness covered {} of {pairs} pairs", r.checks["fullness dims"].total))?;
        summary.push(format!("{name} functoriality {}", r.checks["functoriality"].total));
    }
    Ok(summary.join(", "))
}

fn c6_octahedra() -> Verdict {
    let mut n = 0;
    for (q, seed) in [(Quiver::a(2), 61), (Quiver::a(3), 62)] {
        let l = indecs(q);
        let mut rng = random::rng(seed);
        for i in 0..50 {
            let x = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
            let y = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
            let y2 = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
            let f = random::formal_morphism(&x, &y, &mut rng);
            let u = random::formal_morphism(&y, &y2, &mut rng);
            let o = octahedron_tr4pp(&f, &u, random::trial_seed(seed, i)).map_err(|e| e.to_string())?;
            let strong = derive_tr4_strong(&o).map_err(|e| e.to_string())?;
            let grids = derive_tr4prime(&o).map_err(|e| e.to_string())?;
            for (name, r) in [("octahedron", &o.report), ("strong form", &strong), ("TR4' grids", &grids)] {
                ensure(r.passed(), || format!("trial {i} (seed {seed}) {name}: {:?}", r.failures()))?;
            }
            for key in ["w∘v' = δ", "δ = f[1]∘h'", "(†) exact"] {
                ensure(o.report.checks.iter().any(|c| c.name == key && c.ok), || format!("missing check {key}"))?;
            }
            ensure(strong.checks.iter().any(|c| c.name == "summand triangle exact" && c.ok), || "summand check missing".into())?;
            n += 1;
        }
    }
    Ok(format!("{n} octahedra"))
}

fn c7_t_structures() -> Verdict {
    let mut n = 0;
    for q in [Quiver::a(2), Quiver::a(3)] {
        let g = build_path_graph(&Arc::new(q), P, (-3, 3)).map_err(|e| e.to_string())?;
        for m in g.nodes().into_iter().filter(|m| m.shift > -3) {
            let ts = t_structure_from(&g, m).map_err(|e| e.to_string())?;
            ensure(ts.report.passed(), || format!("{}: {:?}", g.label(m), ts.report.failures))?;
            let b = is_bounded(&g, m).map_err(|e| e.to_string())?;
            ensure(b == (true, None), || format!("{} not bounded: {b:?}", g.label(m)))?;
            n += 1;
        }
    }
    let g = build_path_graph(&Arc::new(Quiver::a(2)), P, (-3, 3)).unwrap();
    let ts = t_structure_from(&g, g.parse_node("S1[0]").unwrap()).unwrap();
    let heart: Vec<String> = ts.heart.iter().map(|&v| g.label(v)).collect();
    ensure(heart == ["S1[0]", "S2[1]", "P1[1]"], || format!("heart {heart:?}"))?;
    Ok(format!("{n} generators, A2 heart {{{}}}", heart.join(", ")))
}

fn random_walk(g: &PathGraph, len: usize, rng: &mut impl Rng) -> Walk {
    let mid = (g.window.0 + g.window.1) / 2;
    let mut cur = Node::new(rng.gen_range(0..g.indecs.len()), mid);
    let start = cur;
    let mut steps = Vec::new();
    for _ in 0..len {
        let mut options = vec![(StepKind::ShiftUp, cur.shifted(1)), (StepKind::ShiftDown, cur.shifted(-1))];
        for v in g.nodes().into_iter().filter(|v| v.shift == cur.shift && *v != cur) {
            if g.hom_dim(cur, v) > 0 {
                options.push((StepKind::HomForward, v));
            }
            if g.hom_dim(v, cur) > 0 {
                options.push((StepKind::HomBackward, v));
            }
        }
        options.retain(|o| (o.1.shift - mid).abs() <= 1);
        let s = options[rng.gen_range(0..options.len())];
        steps.push(s);
        cur = s.1;
    }
    Walk { start, steps }
}

fn c8_walks() -> Verdict {
    let g = build_path_graph(&Arc::new(Quiver::a(2)), P, (-2, 4)).unwrap();
    let node = |s: &str| g.parse_node(s).unwrap();
    let w = Walk { start: node("S1[0]"), steps: vec![(StepKind::HomBackward, node("P1[0]"))] };
    let r = walk_to_path(&g, &w, 1).map_err(|e| e.to_string())?;
    let labels: Vec<String> = r.path.iter().map(|&v| g.label(v)).collect();
    ensure(labels == ["S1[0]", "S2[1]", "P1[1]"] && r.m == 1, || format!("{labels:?} with m = {}", r.m))?;
    let mut rng = random::rng(8);
    let mut total_rewrites = 0;
    for (q, count) in [(Quiver::a(3), 25), (Quiver::d(4), 25)] {
        let g = build_path_graph(&Arc::new(q), P, (-2, 16)).map_err(|e| e.to_string())?;
        for i in 0..count {
            let w = random_walk(&g, 5, &mut rng);
            let r = walk_to_path(&g, &w, i).map_err(|e| e.to_string())?;
            ensure(g.is_path(&r.path), || format!("not a path: {:?}", r.path))?;
            ensure(r.m >= 0 && r.rewrites <= w.backward_steps(), || format!("m = {}, rewrites {}", r.m, r.rewrites))?;
            ensure(r.path[0] == w.start && *r.path.last().unwrap() == w.end().shifted(r.m), || "wrong endpoints".into())?;
            total_rewrites += r.rewrites;
        }
    }
    Ok(format!("example m = 1, 50 random walks, {total_rewrites} rewrites"))
}

fn c9_decomposition() -> Verdict {
    let l = indecs(Quiver::a(3));
    let mut rng = random::rng(9);
    let mut n = 0;
    while n < 100 {
        let len = rng.gen_range(1..=4);
        let c = random::complex(&l.reps, (0, len - 1), 2, &mut rng);
        if c.degrees().any(|k| c.term(k).dims().iter().any(|&d| d > 4)) {
            continue;
        }
        let s = strictify(&c);
        ensure(s.psi.is_quasi_iso(), || format!("complex {n}: ψ is not a quasi-isomorphism"))?;
        for k in c.lo() - 1..=c.hi() + 1 {
            let h = s.formal.component(k);
            for v in 0..h.dims().len() {
                let rank = |j: i32| if j >= c.lo() && j < c.hi() { c.diff(j).map(v).rank() } else { 0 };
                let expected = if c.degrees().contains(&k) { c.term(k).dim(v) - rank(k) - rank(k - 1) } else { 0 };
                ensure(h.dim(v) == expected, || format!("complex {n}, degree {k}, vertex {v}"))?;
            }
            if c.degrees().contains(&k) {
                ensure(rep_iso(&h, &c.cohomology(k).rep), || format!("complex {n}: H^{k} mismatch"))?;
            }
        }
        n += 1;
    }
    let mut objects = 0;
    for q in [Quiver::a(2), Quiver::a(3)] {
        let g = build_path_graph(&Arc::new(q), P, (-3, 3)).map_err(|e| e.to_string())?;
        for i in 0..g.indecs.len() {
            let ts = t_structure_from(&g, Node::new(i, 0)).map_err(|e| e.to_string())?;
            for _ in 0..5 {
                let x = random::formal_object(&g.indecs.reps, (-1, 1), 3, &mut rng);
                let parts = heart_decompose(&g, &ts, &x, 3).map_err(|e| e.to_string())?;
                let mut sum = FormalObject::zero(x.quiver().clone(), P);
                for &(v, m) in &parts {
                    ensure(ts.heart.contains(&v), || format!("{} not in the heart", g.label(v)))?;
                    sum = sum.direct_sum(&FormalObject::stalk(&g.indecs.reps[v.indec], m - v.shift));
                }
                ensure(sum.is_isomorphic(&x), || "heart pieces do not reassemble the object".into())?;
                objects += 1;
            }
        }
    }
    Ok(format!("{n} complexes, {objects} heart decompositions"))
}

fn c10_axioms() -> Verdict {
    let mut summary = Vec::new();
    for (q, name) in [(Quiver::a(2), "A2"), (Quiver::a(3), "A3")] {
        let r = verify_axioms(&Arc::new(q), P, 10, 50, (-1, 1)).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.failures.first()))?;
        for (check, min) in [("TR0", 50), ("TR2 rotation", 50), ("two out of three", 30), ("split normal form", 30)] {
            ensure(r.checks[check].total >= min, || format!("{name}: {check} ran {} times", r.checks[check].total))?;
        }
        summary.push(format!("{name} {} checks", r.checks.values().map(|t| t.total).sum::<usize>()));
    }
    Ok(summary.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("indecomposable counts", c1_indecomposable_counts),
        ("cone law in H", c2_cone_law),
        ("cone oracle agreement", c3_cone_oracle),
        ("hereditary Hom profile", c4_hom_profile),
        ("functor F", c5_functor),
        ("octahedra", c6_octahedra),
        ("t-structures", c7_t_structures),
        ("walk to path", c8_walks),
        ("formal decomposition", c9_decomposition),
        ("axiom suite", c10_axioms),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
