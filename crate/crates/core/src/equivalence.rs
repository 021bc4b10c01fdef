//! The functor `F` from bounded complexes to the formal model, and its
//! realization `R` back to complexes of projectives.

use std::sync::Arc;

use rand::Rng;

use crate::complexes::{hom_mod_homotopy, mapping_cone, projective_replacement, ChainMap, ChainSystem, Cohomology, Complex};
use crate::cones::{compare_cones, cone_general};
use crate::error::{Error, Result};
use crate::formal::{is_exact, FormalMorphism, FormalObject, HomSpace, Triangle};
use crate::linalg::{self, Matrix};
use crate::quiver_rep::resolution::{p0, p0_generator, p0_map, p1, p1_map, standard_resolution};
use crate::quiver_rep::{ext_dim, hom_dim, ExtClass, IndecList, Quiver, RepMorphism, Representation};
use crate::random;
use crate::report::SuiteReport;

fn sign(p: u32, k: i32) -> u32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        linalg::neg(p, 1)
    }
}

/// `E(e) : P¹(A) -> P⁰(B)` for `e ∈ Ext¹(A, B)`: generator `(a, k)` goes to
/// `Σ_l (e_a)_{lk} (t(a), l)`.
pub fn ext_generator_map(e: &ExtClass, src: &Representation, dst: &Representation) -> RepMorphism {
    let a = e.source();
    let b = e.target();
    let q = a.quiver();
    let fb = dst.free_basis().expect("free target");
    let mut images = Vec::new();
    for (ai, arr) in q.arrows().iter().enumerate() {
        let j = arr.target;
        let m = &e.matrices()[ai];
        for k in 0..a.dim(arr.source) {
            let mut v = vec![0; dst.dim(j)];
            for l in 0..b.dim(j) {
                let c = m.get(l, k);
                if c != 0 {
                    v[fb.generator_position(p0_generator(b, j, l))] = c;
                }
            }
            images.push(v);
        }
    }
    RepMorphism::from_generator_images(src, dst, &images)
}

/// Term `m` of `R(X)`: `P⁰(X_m) ⊕ P¹(X_{m+1})`.
fn realize_term(x: &FormalObject, m: i32) -> (Representation, Representation, Representation) {
    let a0 = p0(&x.component(m));
    let a1 = p1(&x.component(m + 1));
    (a0.direct_sum(&a1), a0, a1)
}

/// `R(X)`: each component `X_n` becomes its standard resolution in degrees
/// `n-1, n` with differential `(-1)^n ∂`.
pub fn realize_object(x: &FormalObject) -> Complex {
    let q = x.quiver().clone();
    let p = x.prime();
    let (Some(lo), Some(hi)) = (x.min_degree(), x.max_degree()) else {
        return Complex::zero(q, p);
    };
    let lo = lo - 1;
    let terms: Vec<_> = (lo..=hi).map(|m| realize_term(x, m)).collect();
    let diffs = (lo..hi)
        .map(|m| {
            let i = (m - lo) as usize;
            let (src, s0, s1) = &terms[i];
            let (dst, d0, d1) = &terms[i + 1];
            let bd = standard_resolution(&x.component(m + 1)).boundary.scale(sign(p, m + 1));
            let maps = (0..q.vertex_count())
                .map(|v| {
                    let top = Matrix::zeros(p, d0.dim(v), s0.dim(v)).hstack(bd.map(v));
                    let bottom = Matrix::zeros(p, d1.dim(v), s0.dim(v) + s1.dim(v));
                    top.vstack(&bottom)
                })
                .collect();
            RepMorphism::new(src.clone(), dst.clone(), maps).expect("differential of the realization")
        })
        .collect();
    Complex::new(q, p, lo, terms.into_iter().map(|t| t.0).collect(), diffs).expect("realization is a complex")
}

/// `R(φ)`: hom parts act by `P⁰, P¹`; ext parts by `E(e)` one degree down.
pub fn realize_morphism(f: &FormalMorphism) -> ChainMap {
    let x = f.source();
    let y = f.target();
    let rx = realize_object(x);
    let ry = realize_object(y);
    let q = x.quiver().clone();
    let p = x.prime();
    ChainMap::new(&rx, &ry, |m| {
        let (src, s0, s1) = realize_term(x, m);
        let (dst, d0, d1) = realize_term(y, m);
        let h0 = p0_map(&f.hom(m), &s0, &d0);
        let h1 = p1_map(&f.hom(m + 1), &s1, &d1);
        let e = ext_generator_map(&f.ext(m + 1), &s1, &d0);
        let maps = (0..q.vertex_count())
            .map(|v| {
                let top = h0.map(v).hstack(e.map(v));
                let bottom = Matrix::zeros(p, d1.dim(v), s0.dim(v)).hstack(h1.map(v));
                top.vstack(&bottom)
            })
            .collect();
        Some(RepMorphism::new_unchecked(src, dst, maps))
    })
    .expect("realization of a formal morphism is a chain map")
}

/// A formal object as a complex with zero differential.
pub fn formal_complex(x: &FormalObject) -> Complex {
    let q = x.quiver().clone();
    let p = x.prime();
    let (Some(lo), Some(hi)) = (x.min_degree(), x.max_degree()) else {
        return Complex::zero(q, p);
    };
    let terms: Vec<Representation> = (lo..=hi).map(|n| x.component(n)).collect();
    let diffs = terms.windows(2).map(|w| RepMorphism::zero(&w[0], &w[1])).collect();
    Complex::new(q, p, lo, terms, diffs).expect("zero differential")
}

/// `F(C)` together with the quasi-isomorphism `ψ : R(F C) -> C` that plays
/// the role of the fixed isomorphism `C ≅ ⊕_n H^n(C)[-n]`.
#[derive(Clone, Debug)]
pub struct Strictification {
    pub complex: Complex,
    pub formal: FormalObject,
    pub realization: Complex,
    pub psi: ChainMap,
    pub cohomology: Vec<Cohomology>,
}

pub fn f_object(c: &Complex) -> FormalObject {
    let comps = c.degrees().map(|n| (n, c.cohomology(n).rep));
    FormalObject::from_components(c.quiver().clone(), c.prime(), comps)
}

pub fn strictify(c: &Complex) -> Strictification {
    let q = c.quiver().clone();
    let p = c.prime();
    let cohomology: Vec<Cohomology> = c.degrees().map(|n| c.cohomology(n)).collect();
    let hcomp = |n: i32| -> Option<&Cohomology> {
        let i = n - c.lo();
        (i >= 0).then(|| cohomology.get(i as usize)).flatten()
    };
    let formal = FormalObject::from_components(q.clone(), p, cohomology.iter().map(|h| (h.degree, h.rep.clone())));
    let realization = realize_object(&formal);
    // ψ on P⁰(H^m): generator (i, k) goes to the chosen cycle representative
    let psi0 = |m: i32| -> RepMorphism {
        let h = formal.component(m);
        let src = p0(&h);
        let tgt = c.term(m);
        let images: Vec<Vec<u32>> = match hcomp(m) {
            Some(hc) => (0..q.vertex_count())
                .flat_map(|i| {
                    let s = hc.section(i);
                    (0..h.dim(i)).map(move |k| s.column(k)).collect::<Vec<_>>()
                })
                .collect(),
            None => vec![],
        };
        RepMorphism::from_generator_images(&src, &tgt, &images)
    };
    let psi = ChainMap::new(&realization, c, |m| {
        let (src, _, s1) = realize_term(&formal, m);
        let tgt = c.term(m);
        let mut images = psi0(m).generator_images();
        let h1 = formal.component(m + 1);
        if !h1.is_zero() {
            let res = standard_resolution(&h1);
            let up = psi0(m + 1);
            let d = c.diff(m);
            let s = sign(p, m + 1);
            let fb = s1.free_basis().expect("free").clone();
            for (g, &j) in fb.gens.iter().enumerate() {
                let col = res.boundary.map(j).column(fb.generator_position(g));
                let rhs: Vec<u32> = up.map(j).mul_vec(&col).into_iter().map(|x| linalg::mul(p, x, s)).collect();
                let sol = d.map(j).solve_vec(&rhs).expect("boundary of a resolution maps to a boundary");
                images.push(sol);
            }
        }
        Some(RepMorphism::from_generator_images(&src, &tgt, &images))
    })
    .expect("ψ is a chain map");
    Strictification { complex: c.clone(), formal, realization, psi, cohomology }
}

/// `F(f)`: the unique formal morphism with `f ψ_X ≃ ψ_Y R(F f)`.
pub fn f_morphism(f: &ChainMap) -> FormalMorphism {
    let sx = strictify(f.source());
    let sy = strictify(f.target());
    f_morphism_with(f, &sx, &sy).expect("F is defined on every chain map")
}

pub fn f_morphism_with(f: &ChainMap, sx: &Strictification, sy: &Strictification) -> Result<FormalMorphism> {
    let pc = &sx.realization;
    let yc = f.target();
    let space = HomSpace::new(&sx.formal, &sy.formal);
    if pc.is_zero() {
        return Ok(FormalMorphism::zero(&sx.formal, &sy.formal));
    }
    let sys = ChainSystem::new(pc, yc);
    let p = f.prime();
    let cols: Vec<Vec<u32>> = space
        .basis()
        .iter()
        .map(|b| sys.coords_of(&sy.psi.compose(&realize_morphism(b))))
        .collect();
    let mphi = Matrix::from_columns(p, sys.map_len, &cols);
    let h = sys.homotopy_matrix(pc, yc);
    let a = mphi.hstack(&h);
    let rhs = sys.coords_of(&f.compose(&sx.psi));
    let sol = a
        .solve_vec(&rhs)
        .ok_or_else(|| Error::Inconsistent("no formal morphism matches the chain map".into()))?;
    Ok(space.from_coords(&sol[..space.dim()]))
}

/// Outcome of [`verify_equivalence`].
pub type FunctorReport = SuiteReport;

/// One row of the Hom comparison `Hom_D(X, Y[n])`, `Extⁿ_H(X, Y)`, `Hom_T(X, Y[n])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomProfileRow {
    pub x: usize,
    pub y: usize,
    pub n: i32,
    pub homotopy: usize,
    pub ext: usize,
    pub formal: usize,
    /// Rank of `F` applied to a basis of homotopy classes.
    pub image_rank: usize,
}

impl HomProfileRow {
    pub fn consistent(&self) -> bool {
        self.homotopy == self.ext && self.ext == self.formal && self.image_rank == self.homotopy
    }
}

/// Hom dimensions between all pairs of indecomposables `X`, `Y[n]`.
pub fn hom_profile(indecs: &IndecList, shifts: std::ops::RangeInclusive<i32>) -> Result<Vec<HomProfileRow>> {
    let reps = &indecs.reps;
    let px: Vec<Strictification> = reps.iter().map(|x| strictify(&projective_replacement(&Complex::stalk(x, 0)).complex)).collect();
    let mut out = Vec::new();
    for n in shifts {
        let py: Vec<Strictification> = reps.iter().map(|y| strictify(&projective_replacement(&Complex::stalk(y, -n)).complex)).collect();
        for (i, x) in reps.iter().enumerate() {
            for (j, y) in reps.iter().enumerate() {
                let hh = hom_mod_homotopy(&px[i].complex, &py[j].complex)?;
                let ext = match n {
                    0 => hom_dim(x, y),
                    1 => ext_dim(x, y),
                    _ => 0,
                };
                let space = HomSpace::new(&FormalObject::stalk(x, 0), &FormalObject::stalk(y, -n));
                let target = HomSpace::new(&px[i].formal, &py[j].formal);
                let cols: Vec<Vec<u32>> = hh
                    .basis()
                    .iter()
                    .map(|b| f_morphism_with(b, &px[i], &py[j]).map(|m| target.coords(&m)))
                    .collect::<Result<_>>()?;
                let image_rank = Matrix::from_columns(x.prime(), target.dim(), &cols).rank();
                out.push(HomProfileRow { x: i, y: j, n, homotopy: hh.dim(), ext, formal: space.dim(), image_rank });
            }
        }
    }
    Ok(out)
}

fn stalk_map(f: &RepMorphism) -> ChainMap {
    ChainMap::new(&Complex::stalk(f.source(), 0), &Complex::stalk(f.target(), 0), |n| (n == 0).then(|| f.clone())).expect("stalk map")
}

fn same(a: &FormalMorphism, b: &FormalMorphism) -> bool {
    a.source().same_components(b.source()) && a.target().same_components(b.target()) && *a == b.with_endpoints(a.source(), a.target())
}

/// Random-trial verification that `F` is a fully faithful, essentially
/// surjective triangle functor. Hom dimensions are compared for all
/// indecomposables `X`, `Y[n]` with `n` in the differences of `window`.
pub fn verify_equivalence(q: &Arc<Quiver>, p: u32, seed: u64, trials: usize, window: (i32, i32)) -> Result<FunctorReport> {
    let indecs = IndecList::new(q, p)?;
    let mut report = SuiteReport::new(trials, seed);
    let span = window.1 - window.0;
    for row in hom_profile(&indecs, -span..=span)? {
        let ok = row.homotopy == row.formal;
        let label = || format!("X = {}, Y = {}[{}]: {:?}", indecs.names[row.x], indecs.names[row.y], row.n, row);
        report.record("fullness dims", 0, seed, ok, label);
        report.record("hom profile", 0, seed, row.consistent(), label);
        report.record("faithfulness", 0, seed, row.image_rank == row.homotopy, label);
    }
    for t in 0..trials {
        let s = random::trial_seed(seed, t as u64);
        let mut rng = random::rng(s);
        let lo = rng.gen_range(window.0..=window.1);
        let w = (lo, (lo + 2).min(window.1));
        let x = random::free_complex(q, p, w, 2, &mut rng);
        let y = random::free_complex(q, p, w, 2, &mut rng);
        let z = random::complex(&indecs.reps, w, 2, &mut rng);
        let f = random::chain_map(&x, &y, &mut rng);
        let f2 = random::chain_map(&x, &y, &mut rng);
        let g = random::chain_map(&y, &z, &mut rng);
        let (sx, sy, sz) = (strictify(&x), strictify(&y), strictify(&z));
        let ff = f_morphism_with(&f, &sx, &sy)?;
        let ff2 = f_morphism_with(&f2, &sx, &sy)?;
        let fg = f_morphism_with(&g, &sy, &sz)?;

        let fgf = f_morphism_with(&g.compose(&f), &sx, &sz)?;
        report.record("functoriality", t, s, same(&fgf, &fg.compose(&ff)), || "F(g∘f) ≠ F(g)∘F(f)".into());
        let fid = f_morphism_with(&ChainMap::identity(&x), &sx, &sx)?;
        report.record("identity", t, s, same(&fid, &FormalMorphism::identity(&sx.formal)), || "F(id) ≠ id".into());

        let fsum = f_morphism_with(&f.add(&f2), &sx, &sy)?;
        let fds = f_morphism(&f.direct_sum(&g));
        let ok = same(&fsum, &ff.add(&ff2)) && same(&fds, &ff.direct_sum(&fg));
        report.record("additivity", t, s, ok, || "F(f + f') ≠ F(f) + F(f') or F(f ⊕ g) ≠ F(f) ⊕ F(g)".into());

        let ok = f_object(&x.shift(1)) == sx.formal.shift(1) && same(&f_morphism(&f.shift(1)), &ff.shift(1));
        report.record("shift", t, s, ok, || "F(f[1]) ≠ F(f)[1]".into());

        let a = random::rep(&indecs.reps, 2, &mut rng);
        let b = random::rep(&indecs.reps, 2, &mut rng);
        let phi = random::rep_morphism(&a, &b, &mut rng);
        let ok = same(&f_morphism(&stalk_map(&phi)), &FormalMorphism::from_hom(&FormalObject::stalk(&a, 0), &FormalObject::stalk(&b, 0), 0, phi));
        report.record("restriction to H", t, s, ok, || "F on a stalk map differs from the degree-0 embedding".into());

        let o = random::formal_object(&indecs.reps, window, 3, &mut rng);
        let ok = f_object(&realize_object(&o)).is_isomorphic(&o);
        report.record("essential surjectivity", t, s, ok, || format!("F(R(X)) ≇ X for {:?}", o));

        let mc = mapping_cone(&f);
        let sc = strictify(&mc.cone);
        let sx1 = strictify(&x.shift(1));
        let fi = f_morphism_with(&mc.incl, &sy, &sc)?;
        let fp = f_morphism_with(&mc.proj, &sc, &sx1)?;
        let tri = Triangle::new(ff.clone(), fi, fp.with_endpoints(&sc.formal, &sx.formal.shift(1)))?;
        let ex = is_exact(&tri, &indecs.reps, None);
        report.record("triangle exactness", t, s, ex.passed, || ex.failures.join("; "));
        let iso = compare_cones(&tri, &cone_general(&ff), s)?;
        report.record("triangle iso", t, s, iso.is_some(), || "F(mapping cone) is not isomorphic to cone_general(F f)".into());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{hom_mod_homotopy, mapping_cone, projective_replacement};
    use crate::quiver_rep::{IndecList, Quiver};
    use std::sync::Arc;

    fn a2() -> (Arc<Quiver>, IndecList) {
        let q = Arc::new(Quiver::a(2));
        let l = IndecList::new(&q, 101).unwrap();
        (q, l)
    }

    fn p2_to_p1(l: &IndecList) -> RepMorphism {
        RepMorphism::new(l.reps[1].clone(), l.reps[2].clone(), vec![Matrix::zeros(101, 1, 0), Matrix::identity(101, 1)]).unwrap()
    }

    #[test]
    fn realization_is_a_resolution() {
        let (_, l) = a2();
        let x = FormalObject::stalk(&l.reps[0], 0).direct_sum(&FormalObject::stalk(&l.reps[2], 2));
        let r = realize_object(&x);
        assert!(r.is_projective());
        assert_eq!(f_object(&r), x);
        assert_eq!(realize_object(&x.shift(1)), r.shift(1));
    }

    #[test]
    fn strictification_examples() {
        let (_, l) = a2();
        let c = Complex::two_term(&p2_to_p1(&l), 0);
        let s = strictify(&c);
        assert_eq!(s.formal, FormalObject::stalk(&l.reps[0], 1));
        assert!(s.psi.is_quasi_iso());
        let sh = strictify(&c.shift(1));
        assert_eq!(sh.formal, s.formal.shift(1));
        assert_eq!(sh.psi, s.psi.shift(1));
    }

    #[test]
    fn f_of_identity_and_realized_maps() {
        let (_, l) = a2();
        let x = FormalObject::stalk(&l.reps[0], 0).direct_sum(&FormalObject::stalk(&l.reps[1], -1));
        let e = ExtClass::from_coords(&l.reps[0], &l.reps[1], &[3]);
        let phi = FormalMorphism::identity(&x).add(&FormalMorphism::from_ext(&x, &x, 0, e));
        let r = realize_morphism(&phi);
        assert_eq!(f_morphism(&r), phi);
        let c = Complex::two_term(&p2_to_p1(&l), 0);
        assert_eq!(f_morphism(&ChainMap::identity(&c)), FormalMorphism::identity(&f_object(&c)));
    }

    #[test]
    fn ext_class_from_homotopy_basis() {
        let (_, l) = a2();
        let r1 = projective_replacement(&Complex::stalk(&l.reps[0], 0)).complex;
        let r2 = projective_replacement(&Complex::stalk(&l.reps[1], 0)).complex.shift(1);
        let hh = hom_mod_homotopy(&r1, &r2).unwrap();
        assert_eq!(hh.dim(), 1);
        let f = f_morphism(&hh.basis()[0]);
        assert!(f.hom_parts().is_empty());
        assert_eq!(f.ext_parts().len(), 1);
    }

    #[test]
    fn cone_cohomology() {
        let (_, l) = a2();
        let f = ChainMap::new(&Complex::stalk(&l.reps[1], 0), &Complex::stalk(&l.reps[2], 0), |n| (n == 0).then(|| p2_to_p1(&l))).unwrap();
        let mc = mapping_cone(&f);
        assert_eq!(f_object(&mc.cone), FormalObject::stalk(&l.reps[0], 0));
    }

    #[test]
    fn functor_verification_small_run() {
        for q in [Quiver::a(2), Quiver::a(3)] {
            let r = verify_equivalence(&Arc::new(q), 101, 7, 12, (-1, 1)).unwrap();
            assert!(r.passed(), "{:#?}", r.failures);
            assert_eq!(r.checks["triangle iso"].total, 12);
        }
    }

    #[test]
    fn shift_commutes_on_the_nose() {
        let mut rng = random::rng(21);
        let q = Arc::new(Quiver::a(3));
        let l = IndecList::new(&q, 101).unwrap();
        for _ in 0..10 {
            let x = random::free_complex(&q, 101, (-1, 1), 2, &mut rng);
            let y = random::complex(&l.reps, (-1, 1), 2, &mut rng);
            let f = random::chain_map(&x, &y, &mut rng);
            for k in [-1, 1, 2] {
                assert_eq!(f_object(&y.shift(k)), f_object(&y).shift(k));
                assert_eq!(f_morphism(&f.shift(k)), f_morphism(&f).shift(k));
            }
        }
    }
}
