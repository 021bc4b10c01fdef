//! Octahedra built from cones, and the identities relating the three forms
//! of the octahedral axiom.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::{compare_cones, cone_general, find_iso_in};
use crate::error::{Error, Result};
use crate::formal::{biproduct, is_exact, tr3_solutions, FormalMorphism, FormalObject, HomSpace, Triangle};
use crate::linalg::Matrix;
use crate::quiver_rep::{IndecList, Representation};

const SEARCH: usize = 64;

/// One named identity or exactness verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    fn same(&mut self, name: &str, a: &FormalMorphism, b: &FormalMorphism) {
        let ok = a.source().same_components(b.source()) && a.target().same_components(b.target()) && *a == b.with_endpoints(a.source(), a.target());
        self.checks.push(Check { name: name.into(), ok, detail: String::new() });
    }

    fn zero(&mut self, name: &str, a: &FormalMorphism) {
        self.checks.push(Check { name: name.into(), ok: a.is_zero(), detail: String::new() });
    }

    fn exact(&mut self, name: &str, t: &Triangle, indecs: &[Representation]) {
        let r = is_exact(t, indecs, None);
        self.checks.push(Check { name: name.into(), ok: r.passed, detail: r.failures.join("; ") });
    }

    /// Exact and isomorphic to the standard cone of its first map.
    fn cone(&mut self, name: &str, t: &Triangle) {
        let ok = matches!(compare_cones(t, &cone_general(&t.f), 0xc0e), Ok(Some(_)));
        self.checks.push(Check { name: name.into(), ok, detail: String::new() });
    }
}

/// The grid
///
/// ```text
/// X -f-> Y  -g->  Z  -h->  X[1]
/// ‖      |u       |u'      ‖
/// X -f'> Y' -g'-> Z' -h'-> X[1]
///        |v       |v'
///        W   ==   W
///        |w       |w'
///       Y[1] -g[1]-> Z[1]
/// ```
///
/// with `δ = f[1]h'` and the triangle `(†) Y -(-g;u)-> Z⊕Y' -(u',g')-> Z' -δ-> Y[1]`.
#[derive(Clone, Debug)]
pub struct Octahedron {
    pub f: FormalMorphism,
    pub u: FormalMorphism,
    pub f_prime: FormalMorphism,
    pub t: Triangle,
    pub t_prime: Triangle,
    pub t_u: Triangle,
    pub u_prime: FormalMorphism,
    pub v_prime: FormalMorphism,
    pub w_prime: FormalMorphism,
    pub delta: FormalMorphism,
    pub dagger: Triangle,
    /// `Z -(-u')-> Z' -v'-> W -(-w')-> Z[1]`.
    pub summand: Triangle,
    /// The isomorphism `C -> Z'` used to produce `u'`.
    pub gamma: FormalMorphism,
    pub report: Report,
}

fn indecs_for(x: &FormalObject) -> Result<Vec<Representation>> {
    Ok(IndecList::new(x.quiver(), x.prime())?.reps)
}

fn random_point(particular: &FormalMorphism, kernel: &[FormalMorphism], rng: &mut ChaCha8Rng) -> FormalMorphism {
    let p = particular.prime();
    kernel.iter().fold(particular.clone(), |acc, k| acc.add(&k.scale(rng.gen_range(0..p))))
}

/// Points of an affine solution space: the particular one, then random ones.
fn candidates(particular: &FormalMorphism, kernel: &[FormalMorphism], seed: u64) -> Vec<FormalMorphism> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![particular.clone()];
    if !kernel.is_empty() {
        out.extend((0..SEARCH).map(|_| random_point(particular, kernel, &mut rng)));
    }
    out
}

/// All `c : C -> X[1]` with `c∘a = h`, `c∘b = 0` and `f[1]∘c = δ_C`.
fn solve_c(
    a: &FormalMorphism,
    b: &FormalMorphism,
    h: &FormalMorphism,
    f1: &FormalMorphism,
    delta_c: &FormalMorphism,
) -> Option<(FormalMorphism, Vec<FormalMorphism>)> {
    let c_obj = &a.target();
    let x1 = &h.target();
    let space = HomSpace::new(c_obj, x1);
    let cod1 = HomSpace::new(a.source(), x1);
    let cod2 = HomSpace::new(b.source(), x1);
    let cod3 = HomSpace::new(c_obj, f1.target());
    let p = a.prime();
    let basis = space.basis();
    let col = |m: &FormalMorphism| -> Vec<u32> {
        let mut v = cod1.coords(&m.compose(a));
        v.extend(cod2.coords(&m.compose(b)));
        v.extend(cod3.coords(&f1.compose(m)));
        v
    };
    let rows = cod1.dim() + cod2.dim() + cod3.dim();
    let cols: Vec<Vec<u32>> = basis.iter().map(col).collect();
    let mat = Matrix::from_columns(p, rows, &cols);
    let mut rhs = cod1.coords(h);
    rhs.extend(vec![0; cod2.dim()]);
    rhs.extend(cod3.coords(delta_c));
    let sol = mat.solve_vec(&rhs)?;
    let k = mat.kernel_basis();
    let kernel = (0..k.cols()).map(|j| space.from_coords(&k.column(j))).collect();
    Some((space.from_coords(&sol), kernel))
}

/// Complete the cones of `f`, `u∘f` and `u` to an octahedron. `u'` comes from
/// the cone `C` of `(-g; u)` through an isomorphism `γ : C -> Z'`, so `(†)`
/// is isomorphic to a cone triangle; `v'` is chosen among the completions so
/// that the summand triangle is a cone as well.
pub fn octahedron_tr4pp(f: &FormalMorphism, u: &FormalMorphism, seed: u64) -> Result<Octahedron> {
    if !f.target().same_components(u.source()) {
        return Err(Error::Endpoint("target of f differs from source of u".into()));
    }
    let indecs = indecs_for(f.source())?;
    let t = cone_general(f);
    let u = u.with_endpoints(t.y(), u.target());
    let f_prime = u.compose(f);
    let t_prime = cone_general(&f_prime);
    let t_u = cone_general(&u);
    let (z, y2) = (t.z().clone(), t_prime.y().clone());

    let s = t.g.neg().stack(&u.with_endpoints(t.y(), &y2));
    let (zs, i1, i2, _, p2) = biproduct(&z, &y2);
    let s = s.with_endpoints(t.y(), &zs);
    let tc = cone_general(&s);
    let a = tc.g.compose(&i1);
    let b = tc.g.compose(&i2);
    let f1 = t.f.shift(1);
    let (c_part, c_kernel) =
        solve_c(&a, &b, &t.h, &f1, &tc.h).ok_or_else(|| Error::Inconsistent("no c : C -> X[1] completes the grid".into()))?;
    let id_x = FormalMorphism::identity(t.x());
    let id_y2 = FormalMorphism::identity(&y2);
    let mut found = None;
    for c in candidates(&c_part, &c_kernel, seed) {
        let row = Triangle::new(f_prime.clone(), b.clone(), c)?;
        if let Some(sol) = tr3_solutions(&row, &t_prime, &id_x, &id_y2)? {
            if let Some(gamma) = find_iso_in(&sol, f.prime(), seed ^ 0x9a) {
                found = Some(gamma);
                break;
            }
        }
    }
    let gamma = found.ok_or_else(|| Error::Inconsistent("no isomorphism γ : C -> Z' over the identities".into()))?;
    let u_prime = gamma.compose(&a);
    let delta = f1.compose(&t_prime.h);
    let dagger = Triangle::new(s.clone(), u_prime.juxtapose(&t_prime.g).with_endpoints(&zs, t_prime.z()), delta.clone())?;

    let id_y = FormalMorphism::identity(t.y());
    let sol = tr3_solutions(&dagger, &t_u, &id_y, &p2)?.ok_or_else(|| Error::Inconsistent("no v' completes the second square".into()))?;
    let w_prime = t.g.shift(1).compose(&t_u.h);
    let summand_of = |v: &FormalMorphism| Triangle::new(u_prime.neg(), v.clone(), w_prime.neg());
    let mut v_prime = sol.particular.clone();
    for v in candidates(&sol.particular, &sol.kernel, seed ^ 0x7f) {
        let st = summand_of(&v)?;
        if is_exact(&st, &indecs, None).passed && matches!(compare_cones(&st, &cone_general(&st.f), seed), Ok(Some(_))) {
            v_prime = v;
            break;
        }
    }
    let summand = summand_of(&v_prime)?;

    let mut report = Report::default();
    report.same("u'∘g = g'∘u", &u_prime.compose(&t.g), &t_prime.g.compose(&u));
    report.same("h'∘u' = h", &t_prime.h.compose(&u_prime), &t.h);
    report.same("v'∘g' = v", &v_prime.compose(&t_prime.g), &t_u.g);
    report.same("w∘v' = δ", &t_u.h.compose(&v_prime), &delta);
    report.same("δ = f[1]∘h'", &delta, &f1.compose(&t_prime.h));
    report.same("w' = g[1]∘w", &w_prime, &t.g.shift(1).compose(&t_u.h));
    report.same("γ∘(a,b) = (u',g')", &gamma.compose(&tc.g), &dagger.g);
    report.exact("(†) exact", &dagger, &indecs);
    report.cone("(†) is a cone", &dagger);
    report.exact("Z -u'-> Z' -v'-> W -w'-> Z[1] exact", &Triangle::new(u_prime.clone(), v_prime.clone(), w_prime.clone())?, &indecs);
    report.exact("summand triangle exact", &summand, &indecs);
    report.cone("summand triangle is a cone", &summand);
    Ok(Octahedron { f: f.clone(), u, f_prime, t, t_prime, t_u, u_prime, v_prime, w_prime, delta, dagger, summand, gamma, report })
}

/// The second application's triangle
/// `Z⊕Y' -[[-u',-g'],[0,1]]-> Z'⊕Y' -(v',v)-> W -(-w';0)-> Z[1]⊕Y'[1]`
/// and its summand `(-u', v', -w')`.
pub fn derive_tr4_strong(o: &Octahedron) -> Result<Report> {
    let indecs = indecs_for(o.t.x())?;
    let (z, y2, z2, w) = (o.t.z(), o.t_prime.y(), o.t_prime.z(), o.t_u.z());
    let (s, i1, _, p1, p2) = biproduct(z, y2);
    let (_, j1, j2, q1, q2) = biproduct(z2, y2);
    let m = j1.compose(&o.u_prime.neg().compose(&p1).sub(&o.t_prime.g.compose(&p2))).add(&j2.compose(&p2));
    let vv = o.v_prime.compose(&q1).add(&o.t_u.g.compose(&q2));
    let (_, k1, _, _, _) = biproduct(&z.shift(1), &y2.shift(1));
    let ww = k1.compose(&o.w_prime.neg()).with_endpoints(w, &s.shift(1));
    let big = Triangle::new(m.clone(), vv.clone(), ww.clone())?;
    let mut r = Report::default();
    r.exact("big triangle exact", &big, &indecs);
    r.cone("big triangle is a cone", &big);
    r.same("summand inclusion: M∘i = j∘(-u')", &m.compose(&i1), &j1.compose(&o.u_prime.neg()));
    r.same("summand inclusion: (v',v)∘j = v'", &vv.compose(&j1), &o.v_prime);
    r.same("summand inclusion: i[1]∘(-w') = (-w';0)", &i1.shift(1).compose(&o.summand.h), &ww);
    r.exact("summand triangle exact", &o.summand, &indecs);
    r.cone("summand triangle is a cone", &o.summand);
    Ok(r)
}

/// The two grids deriving the weak octahedron from (†): one over the
/// projection `(1,0) : Z⊕Y' -> Z`, one over `(0,1) : Z⊕Y' -> Y'`.
pub fn derive_tr4prime(o: &Octahedron) -> Result<Report> {
    let indecs = indecs_for(o.t.x())?;
    let (z, y2) = (o.t.z(), o.t_prime.y());
    let (zs, _, _, p1, p2) = biproduct(z, y2);
    let (zs1, k1, k2, _, _) = biproduct(&z.shift(1), &y2.shift(1));
    let bottom = o.u_prime.shift(1).juxtapose(&o.t_prime.g.shift(1)).with_endpoints(&zs1, &o.t_prime.z().shift(1));
    let f1 = o.t.f.shift(1);
    let fp1 = o.f_prime.shift(1);
    let s = &o.dagger.f;
    let mut r = Report::default();
    r.same("bottom row is (u',g')[1]", &bottom, &o.dagger.g.shift(1).with_endpoints(&zs1, bottom.target()));

    let row = Triangle::new(o.t.g.neg(), o.t.h.clone(), f1.clone())?;
    let col2 = Triangle::new(p1.clone(), FormalMorphism::zero(z, &y2.shift(1)), k2.clone().with_endpoints(&y2.shift(1), &zs.shift(1)))?;
    let col3 = Triangle::new(o.t_prime.h.clone(), fp1.clone(), o.t_prime.g.shift(1))?;
    r.exact("grid 1: row Y -(-g)-> Z -h-> X[1] -f[1]-> Y[1]", &row, &indecs);
    r.exact("grid 1: column Z⊕Y' -> Z -> Y'[1]", &col2, &indecs);
    r.exact("grid 1: column Z' -h'-> X[1] -f'[1]-> Y'[1]", &col3, &indecs);
    r.same("grid 1: (1,0)∘(-g;u) = -g", &p1.compose(s), &o.t.g.neg());
    r.same("grid 1: h'∘(u',g') = h∘(1,0)", &o.t_prime.h.compose(&o.dagger.g), &o.t.h.compose(&p1));
    r.same("grid 1: f[1]∘h' = δ", &f1.compose(&o.t_prime.h), &o.delta);
    r.zero("grid 1: f'[1]∘h = 0", &fp1.compose(&o.t.h));
    r.same("grid 1: (u'[1],g'[1])∘(0;1) = g'[1]", &bottom.compose(&k2), &o.t_prime.g.shift(1));

    let col2 = Triangle::new(p2.clone(), FormalMorphism::zero(y2, &z.shift(1)), k1.clone().with_endpoints(&z.shift(1), &zs.shift(1)))?;
    let col3 = Triangle::new(o.v_prime.clone(), o.w_prime.neg(), o.u_prime.shift(1))?;
    r.exact("grid 2: row Y -u-> Y' -v-> W -w-> Y[1]", &o.t_u, &indecs);
    r.exact("grid 2: column Z⊕Y' -> Y' -> Z[1]", &col2, &indecs);
    r.exact("grid 2: column Z' -v'-> W -(-w')-> Z[1]", &col3, &indecs);
    r.same("grid 2: (0,1)∘(-g;u) = u", &p2.compose(s), &o.u);
    r.same("grid 2: v'∘(u',g') = v∘(0,1)", &o.v_prime.compose(&o.dagger.g), &o.t_u.g.compose(&p2));
    r.same("grid 2: w∘v' = δ", &o.t_u.h.compose(&o.v_prime), &o.delta);
    r.zero("grid 2: w'∘v = 0", &o.w_prime.compose(&o.t_u.g));
    r.same("grid 2: (u'[1],g'[1])∘(1;0) = u'[1]", &bottom.compose(&k1), &o.u_prime.shift(1));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::{hom_ext, Quiver};
    use crate::random;
    use std::sync::Arc;

    fn full(o: &Octahedron) {
        assert!(o.report.passed(), "{:?}", o.report.failures());
        let s = derive_tr4_strong(o).unwrap();
        assert!(s.passed(), "{:?}", s.failures());
        let p = derive_tr4prime(o).unwrap();
        assert!(p.passed(), "{:?}", p.failures());
    }

    #[test]
    fn identity_second_map() {
        let l = IndecList::new(&Arc::new(Quiver::a(2)), 101).unwrap();
        let x = FormalObject::stalk(&l.reps[0], 0);
        let y = FormalObject::stalk(&l.reps[2], 0).direct_sum(&FormalObject::stalk(&l.reps[1], -1));
        let mut rng = random::rng(3);
        let f = random::formal_morphism(&x, &y, &mut rng);
        let o = octahedron_tr4pp(&f, &FormalMorphism::identity(&y), 1).unwrap();
        assert!(o.t_u.z().is_zero());
        assert!(o.u_prime.is_iso());
        full(&o);
    }

    #[test]
    fn zero_second_map() {
        let l = IndecList::new(&Arc::new(Quiver::a(2)), 101).unwrap();
        let x = FormalObject::stalk(&l.reps[1], 0);
        let y = FormalObject::stalk(&l.reps[2], 0);
        let f = random::formal_morphism(&x, &y, &mut random::rng(5));
        let o = octahedron_tr4pp(&f, &FormalMorphism::zero(&y, &x), 1).unwrap();
        full(&o);
    }

    #[test]
    fn a2_projectives_to_simple() {
        let q = Arc::new(Quiver::a(2));
        let l = IndecList::new(&q, 101).unwrap();
        let (p1, p2, s1) = (l.lookup("P1").unwrap(), l.lookup("P2").unwrap(), l.lookup("S1").unwrap());
        let (p1, p2, s1) = (&l.reps[p1], &l.reps[p2], &l.reps[s1]);
        let f = FormalMorphism::from_hom(&FormalObject::stalk(p2, 0), &FormalObject::stalk(p1, 0), 0, hom_ext(p2, p1).hom_from_coords(&[1]));
        let u = FormalMorphism::from_hom(&FormalObject::stalk(p1, 0), &FormalObject::stalk(s1, 0), 0, hom_ext(p1, s1).hom_from_coords(&[1]));
        let o = octahedron_tr4pp(&f, &u, 1).unwrap();
        assert!(o.f_prime.is_zero());
        assert!(o.t.z().is_isomorphic(&FormalObject::stalk(s1, 0)));
        let expect = FormalObject::stalk(p2, -1).direct_sum(&FormalObject::stalk(s1, 0));
        assert!(o.t_prime.z().is_isomorphic(&expect));
        full(&o);
    }

    #[test]
    fn random_octahedra() {
        let mut rng = random::rng(11);
        for q in [Quiver::a(2), Quiver::a(3)] {
            let l = IndecList::new(&Arc::new(q), 101).unwrap();
            for _ in 0..10 {
                let x = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
                let y = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
                let y2 = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
                let f = random::formal_morphism(&x, &y, &mut rng);
                let u = random::formal_morphism(&y, &y2, &mut rng);
                full(&octahedron_tr4pp(&f, &u, 2).unwrap());
            }
        }
    }
}
