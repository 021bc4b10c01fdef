//! Cones in the formal model: maps in `H`, pure extensions, the general
//! closed form and the realization oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{mapping_cone, ChainMap, Complex};
use crate::equivalence::{f_morphism_with, formal_complex, realize_morphism, strictify};
use crate::error::{Error, Result};
use crate::formal::{tr3_solutions, FormalMorphism, FormalObject, HomSpace, Tr3Solutions, Triangle};
use crate::linalg::{self, Matrix};
use crate::quiver_rep::decompose::DEFAULT_RETRIES;
use crate::quiver_rep::{extension_middle, factorize, hom_ext, ses_class, ExtClass, RepMorphism, Representation};

/// The pull-back/push-out diagram of `f = f₂∘f₁ : X -> Y`:
///
/// ```text
/// 0 -> K -x-> X -f₁-> I -> 0
///      ‖      ι       f₂
/// 0 -> K -ι'-> E -π-> Y -> 0
///             π'      y
///              C  ==  C
/// ```
#[derive(Clone, Debug)]
pub struct PbpoDiagram {
    pub k: Representation,
    pub x_obj: Representation,
    pub i: Representation,
    pub e: Representation,
    pub y_obj: Representation,
    pub c: Representation,
    pub x: RepMorphism,
    pub f1: RepMorphism,
    pub f2: RepMorphism,
    pub iota: RepMorphism,
    pub iota_prime: RepMorphism,
    pub pi: RepMorphism,
    pub pi_prime: RepMorphism,
    pub y: RepMorphism,
    /// Class of the middle row, in `Ext¹(Y, K)`.
    pub eps: ExtClass,
    /// Class of the middle column, in `Ext¹(C, X)`.
    pub eta: ExtClass,
}

impl PbpoDiagram {
    pub fn new(f: &RepMorphism) -> PbpoDiagram {
        let fac = factorize(f);
        let (x, f1, f2, y) = (fac.kernel, fac.coimage, fac.image, fac.cokernel);
        let k = x.source().clone();
        let i = f1.target().clone();
        let top = ses_class(&x, &f1).expect("kernel and coimage form a short exact sequence");
        let eps = lift_along(&top, &f2);
        let (e, iota_prime, pi) = extension_middle(&eps);
        let iota = pullback_map(&eps, &x, f, &e);
        let pi_prime = y.compose(&pi);
        let eta = ses_class(&iota, &pi_prime).expect("middle column is short exact");
        PbpoDiagram {
            k,
            x_obj: f.source().clone(),
            i,
            e,
            y_obj: f.target().clone(),
            c: y.target().clone(),
            x,
            f1,
            f2,
            iota,
            iota_prime,
            pi,
            pi_prime,
            y,
            eps,
            eta,
        }
    }

    /// Rows and columns are short exact, `f = f₂∘f₁`, and `ε`, `η` are their classes.
    pub fn check(&self, f: &RepMorphism) -> bool {
        let short = |a: &RepMorphism, b: &RepMorphism| ses_class(a, b).ok();
        self.f2.compose(&self.f1) == *f
            && short(&self.x, &self.f1).is_some()
            && short(&self.iota_prime, &self.pi).as_ref() == Some(&self.eps)
            && short(&self.iota, &self.pi_prime).as_ref() == Some(&self.eta)
            && self.iota.compose(&self.x) == self.iota_prime
            && self.pi.compose(&self.iota) == *f
            && self.eps.pullback(&self.f2) == short(&self.x, &self.f1).unwrap()
    }
}

/// Matrix of a linear map on `Ext¹` given by its action on a basis.
fn ext_map_matrix(src: &Representation, tgt: &Representation, out: (&Representation, &Representation), op: impl Fn(&ExtClass) -> ExtClass) -> Matrix {
    let p = src.prime();
    let basis = hom_ext(src, tgt).ext_basis();
    let rows = hom_ext(out.0, out.1).ext_dim();
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| op(b).coords()).collect();
    Matrix::from_columns(p, rows, &cols)
}

/// A preimage of `e ∈ Ext¹(I, K)` under pull-back along the mono `f₂ : I -> Y`.
fn lift_along(e: &ExtClass, f2: &RepMorphism) -> ExtClass {
    let y = f2.target();
    let k = e.target();
    let m = ext_map_matrix(y, k, (f2.source(), k), |b| b.pullback(f2));
    let sol = m.solve_vec(&e.coords()).expect("pull-back along a mono is onto Ext¹");
    ExtClass::from_coords(y, k, &sol)
}

/// The map `ι = (κ; f) : X -> E` into the middle of `ε`, with `ι∘x = ι'`.
fn pullback_map(eps: &ExtClass, x: &RepMorphism, f: &RepMorphism, e: &Representation) -> RepMorphism {
    let xo = f.source();
    let k = eps.target();
    let q = xo.quiver();
    let p = xo.prime();
    let he = hom_ext(xo, k);
    let nv = q.vertex_count();
    let mut off = vec![0usize];
    for v in 0..nv {
        off.push(off[v] + k.dim(v) * xo.dim(v));
    }
    let n = off[nv];
    // κ_t X_a - K_a κ_s = ε_a f_s
    let mut rhs: Vec<u32> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        rhs.extend_from_slice(eps.matrices()[ai].mul(f.map(a.source)).data());
    }
    // κ_v x_v = 1
    let mut rows = he.phi().clone();
    for v in 0..nv {
        let (kd, xd) = (k.dim(v), xo.dim(v));
        let xv = x.map(v);
        let mut block = Matrix::zeros(p, kd * kd, n);
        for r in 0..kd {
            for c in 0..kd {
                for m in 0..xd {
                    block.set(r * kd + c, off[v] + r * xd + m, xv.get(m, c));
                }
                rhs.push(u32::from(r == c));
            }
        }
        rows = rows.vstack(&block);
    }
    let sol = rows.solve_vec(&rhs).expect("pull-back map exists");
    let maps = (0..nv)
        .map(|v| {
            let kappa = Matrix::from_vec(p, k.dim(v), xo.dim(v), sol[off[v]..off[v + 1]].to_vec());
            kappa.vstack(f.map(v))
        })
        .collect();
    RepMorphism::new(xo.clone(), e.clone(), maps).expect("ι is a morphism")
}

/// The exact triangle `X -f-> Y -(-ε; y)-> K[1] ⊕ C -(x[1], η)-> X[1]` of a map in `H`.
pub fn cone_in_h(f: &RepMorphism) -> (Triangle, PbpoDiagram) {
    let d = PbpoDiagram::new(f);
    let q = f.source().quiver().clone();
    let p = f.prime();
    let xs = FormalObject::stalk(f.source(), 0);
    let ys = FormalObject::stalk(f.target(), 0);
    let z = FormalObject::from_components(q, p, [(-1, d.k.clone()), (0, d.c.clone())]);
    let g = FormalMorphism::new(&ys, &z, [(0, d.y.clone())], [(0, d.eps.neg())]).expect("(-ε; y)");
    let h = FormalMorphism::new(&z, &xs.shift(1), [(-1, d.x.clone())], [(0, d.eta.clone())]).expect("(x[1], η)");
    let t = Triangle::new(FormalMorphism::stalk(f), g, h).expect("cone triangle chains");
    (t, d)
}

/// The triangle `X[-n] -e-> B[-n+1] -> E[-n+1] -> X[-n+1]` of `0 -> B -> E -> X -> 0`.
pub fn cone_pure_ext(e: &ExtClass, n: i32) -> Triangle {
    let (m, iota, pi) = extension_middle(e);
    let xs = FormalObject::stalk(e.source(), n);
    let bs = FormalObject::stalk(e.target(), n - 1);
    let ms = FormalObject::stalk(&m, n - 1);
    let f = FormalMorphism::from_ext(&xs, &bs, n, e.clone());
    let g = FormalMorphism::from_hom(&bs, &ms, n - 1, iota);
    let h = FormalMorphism::from_hom(&ms, &xs.shift(1), n - 1, pi.scale(sign(e.source().prime(), n)));
    Triangle { f, g, h }
}

fn sign(p: u32, n: i32) -> u32 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        linalg::neg(p, 1)
    }
}

/// Cone of an arbitrary formal morphism. Component `n` of the cone is the
/// extension of `ker f⁰_{n+1}` by `coker f⁰_n` with class
/// `q_n ∘ f¹_{n+1} ∘ k_{n+1}`; the ext parts of the triangle maps are solved
/// from the diagram classes of each `f⁰_n` and the vanishing of composites.
pub fn cone_general(f: &FormalMorphism) -> Triangle {
    let x = f.source();
    let y = f.target();
    let q = x.quiver().clone();
    let p = f.prime();
    let degs: Vec<i32> = x.degrees().into_iter().chain(y.degrees()).collect();
    if degs.is_empty() {
        return Triangle::identity_triangle(x);
    }
    let lo = *degs.iter().min().unwrap();
    let hi = *degs.iter().max().unwrap();
    let diags: Vec<PbpoDiagram> = (lo - 1..=hi + 1).map(|n| PbpoDiagram::new(&f.hom(n))).collect();
    let at = |n: i32| &diags[(n - lo + 1) as usize];
    // cone components
    let mut middles = Vec::new();
    for n in lo - 1..=hi {
        let kn1 = at(n + 1);
        let qn = at(n);
        let cls = f.ext(n + 1).pullback(&kn1.x).pushout(&qn.y);
        middles.push((n, extension_middle(&cls)));
    }
    let mid = |n: i32| -> Option<&(Representation, RepMorphism, RepMorphism)> {
        (n >= lo - 1 && n <= hi).then(|| &middles[(n - lo + 1) as usize].1)
    };
    let z = FormalObject::from_components(q.clone(), p, middles.iter().map(|(n, m)| (*n, m.0.clone())));
    let cz = |n: i32| z.component(n);
    // hom parts: g⁰_n = ι_n q_n, h⁰_n = ±k_{n+1} π_n
    let g0 = |n: i32| -> RepMorphism {
        match mid(n) {
            Some((_, iota, _)) => iota.compose(&at(n).y).with_endpoints(&y.component(n), &cz(n)),
            None => RepMorphism::zero(&y.component(n), &cz(n)),
        }
    };
    let h0 = |n: i32| -> RepMorphism {
        match mid(n) {
            Some((_, _, pi)) => at(n + 1).x.compose(pi).scale(sign(p, n + 1)).with_endpoints(&cz(n), &x.component(n + 1)),
            None => RepMorphism::zero(&cz(n), &x.component(n + 1)),
        }
    };
    let mut g_ext = Vec::new();
    let mut h_ext = Vec::new();
    for n in lo..=hi + 1 {
        let (gn, hn) = solve_ext_parts(f, n, at(n), &g0, &h0, mid(n - 1), mid(n), &cz);
        g_ext.push((n, gn));
        h_ext.push((n, hn));
    }
    let g = FormalMorphism::new(y, &z, (lo - 1..=hi + 1).map(|n| (n, g0(n))), g_ext).expect("g assembles");
    let h = FormalMorphism::new(&z, &x.shift(1), (lo - 1..=hi + 1).map(|n| (n, h0(n))), h_ext).expect("h assembles");
    Triangle::new(f.clone(), g, h).expect("cone triangle chains")
}

type Middle = (Representation, RepMorphism, RepMorphism);

/// Solve for `g¹_n ∈ Ext¹(Y_n, C_{n-1})` and `h¹_n ∈ Ext¹(C_n, X_n)`.
#[allow(clippy::too_many_arguments)]
fn solve_ext_parts(
    f: &FormalMorphism,
    n: i32,
    d: &PbpoDiagram,
    g0: &dyn Fn(i32) -> RepMorphism,
    h0: &dyn Fn(i32) -> RepMorphism,
    below: Option<&Middle>,
    here: Option<&Middle>,
    cz: &dyn Fn(i32) -> Representation,
) -> (ExtClass, ExtClass) {
    let p = f.prime();
    let xn = f.source().component(n);
    let yn = f.target().component(n);
    let cb = cz(n - 1);
    let ch = cz(n);
    let gspace = hom_ext(&yn, &cb);
    let hspace = hom_ext(&ch, &xn);
    let (dg, dh) = (gspace.ext_dim(), hspace.ext_dim());
    let gb = gspace.ext_basis();
    let hb = hspace.ext_basis();
    let s = sign(p, n);
    let mut blocks: Vec<(Matrix, Vec<u32>)> = Vec::new();
    let stack = |gcols: Vec<Vec<u32>>, hcols: Vec<Vec<u32>>, rows: usize| -> Matrix {
        Matrix::from_columns(p, rows, &gcols).hstack(&Matrix::from_columns(p, rows, &hcols))
    };
    // (a) π_{n-1*} g¹_n = -ε_n
    if let Some((_, _, pi)) = below {
        let kn = &d.k;
        let pi = pi.with_endpoints(&cb, kn);
        let rows = hom_ext(&yn, kn).ext_dim();
        let gc = gb.iter().map(|b| b.pushout(&pi).coords()).collect();
        blocks.push((stack(gc, vec![vec![0; rows]; dh], rows), d.eps.with_endpoints(&yn, kn).neg().coords()));
    }
    // (c) ι_n^* h¹_n = s η_n
    if let Some((_, iota, _)) = here {
        let qn = &d.c;
        let iota = iota.with_endpoints(qn, &ch);
        let rows = hom_ext(qn, &xn).ext_dim();
        let hc = hb.iter().map(|b| b.pullback(&iota).coords()).collect();
        blocks.push((stack(vec![vec![0; rows]; dg], hc, rows), d.eta.with_endpoints(qn, &xn).scale(s).coords()));
    }
    // (b) (g∘f)¹_n = 0
    {
        let f0 = f.hom(n);
        let rows = hom_ext(&xn, &cb).ext_dim();
        let gc = gb.iter().map(|b| b.pullback(&f0).coords()).collect();
        let rhs = f.ext(n).pushout(&g0(n - 1)).neg().coords();
        blocks.push((stack(gc, vec![vec![0; rows]; dh], rows), rhs));
    }
    // (d) (f[1]∘h)¹_n = 0
    {
        let f0 = f.hom(n);
        let rows = hom_ext(&ch, &yn).ext_dim();
        let hc = hb.iter().map(|b| b.pushout(&f0).coords()).collect();
        let rhs = f.ext(n + 1).pullback(&h0(n)).neg().coords();
        blocks.push((stack(vec![vec![0; rows]; dg], hc, rows), rhs));
    }
    // (e) (h∘g)¹_n = 0
    {
        let rows = hom_ext(&yn, &xn).ext_dim();
        let gc = gb.iter().map(|b| b.pushout(&h0(n - 1)).coords()).collect();
        let hc = hb.iter().map(|b| b.pullback(&g0(n)).coords()).collect();
        blocks.push((stack(gc, hc, rows), vec![0; rows]));
    }
    let mut a = Matrix::zeros(p, 0, dg + dh);
    let mut rhs = Vec::new();
    for (m, r) in blocks {
        a = a.vstack(&m);
        rhs.extend(r);
    }
    let sol = a.solve_vec(&rhs).expect("ext parts of the cone maps exist");
    (gspace.ext_from_coords(&sol[..dg]), hspace.ext_from_coords(&sol[dg..]))
}

/// A roof `X <-s- X̃ -φ-> Y` of chain maps representing a formal morphism,
/// with `X̃ = R(X)` and `X`, `Y` as complexes with zero differential.
#[derive(Clone, Debug)]
pub struct Roof {
    pub source: Complex,
    pub target: Complex,
    pub tilde: Complex,
    pub quasi_iso: ChainMap,
    pub map: ChainMap,
}

pub fn realize(f: &FormalMorphism) -> Roof {
    let xc = formal_complex(f.source());
    let yc = formal_complex(f.target());
    let sx = strictify(&xc);
    let sy = strictify(&yc);
    let map = sy.psi.compose(&realize_morphism(f));
    Roof { source: xc, target: yc, tilde: sx.realization, quasi_iso: sx.psi, map }
}

/// The cone triangle of `f` computed through its roof: the mapping cone of
/// `φ`, pushed through `F` with `X̃` identified with `X` by `s`.
pub fn oracle_cone(f: &FormalMorphism) -> Result<Triangle> {
    let roof = realize(f);
    let mc = mapping_cone(&roof.map);
    let sy = strictify(&roof.target);
    let sc = strictify(&mc.cone);
    let xs = roof.source.shift(1);
    let sxs = strictify(&xs);
    let g = f_morphism_with(&mc.incl, &sy, &sc)?;
    let to_x = roof.quasi_iso.shift(1).compose(&mc.proj);
    let h = f_morphism_with(&to_x, &sc, &sxs)?;
    let g = g.with_endpoints(f.target(), &sc.formal);
    let h = h.with_endpoints(&sc.formal, &f.source().shift(1));
    Triangle::new(f.clone(), g, h)
}

/// An isomorphism from the cone of `t` to the cone of `t2` extending the
/// identities of `X` and `Y`, searched in the affine space of TR3 solutions.
pub fn compare_cones(t: &Triangle, t2: &Triangle, seed: u64) -> Result<Option<FormalMorphism>> {
    if !t.x().same_components(t2.x()) || !t.y().same_components(t2.y()) {
        return Err(Error::Endpoint("triangles have different X or Y".into()));
    }
    let ix = FormalMorphism::identity(t.x()).with_endpoints(t.x(), t2.x());
    let iy = FormalMorphism::identity(t.y()).with_endpoints(t.y(), t2.y());
    let Some(sol) = tr3_solutions(t, t2, &ix, &iy)? else {
        return Ok(None);
    };
    Ok(find_iso_in(&sol, t.f.prime(), seed))
}

/// The pieces of a triangle whose first map has a zero component.
#[derive(Clone, Debug)]
pub struct SplitOff {
    /// Cone triangle of `f' = p'∘f`.
    pub main: Triangle,
    /// `0 -> Y'' -> Y'' -> 0`.
    pub trivial: Triangle,
    /// Isomorphism of cones from `t` to `main ⊕ trivial` over `id_X` and `(p'; p'')`.
    pub iso: FormalMorphism,
}

/// Split `t` along `Y ≅ Y' ⊕ Y''` given by `p' : Y -> Y'`, `p'' : Y -> Y''`
/// with `p''∘f = 0`.
pub fn split_off(t: &Triangle, p1: &FormalMorphism, p2: &FormalMorphism) -> Result<SplitOff> {
    if !p2.compose(&t.f).is_zero() {
        return Err(Error::Hypothesis("the component of f into Y'' is not zero".into()));
    }
    let theta = p1.stack(p2);
    if !theta.is_iso() {
        return Err(Error::Hypothesis("(p'; p'') is not an isomorphism".into()));
    }
    let main = cone_general(&p1.compose(&t.f));
    let trivial = Triangle::trivial(p2.target());
    let sum = main.direct_sum(&trivial);
    let ix = FormalMorphism::identity(t.x()).with_endpoints(t.x(), sum.x());
    let theta = theta.with_endpoints(t.y(), sum.y());
    let sol = tr3_solutions(t, &sum, &ix, &theta)?.ok_or_else(|| Error::NotExact("triangle is not isomorphic to the split sum".into()))?;
    let iso = find_iso_in(&sol, p1.prime(), 0x5eed).ok_or_else(|| Error::NotExact("no invertible completion".into()))?;
    Ok(SplitOff { main, trivial, iso })
}

pub(crate) fn find_iso_in(sol: &Tr3Solutions, p: u32, seed: u64) -> Option<FormalMorphism> {
    if sol.particular.is_iso() {
        return Some(sol.particular.clone());
    }
    if sol.kernel.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RETRIES {
        let mut cand = sol.particular.clone();
        for k in &sol.kernel {
            cand = cand.add(&k.scale(rng.gen_range(0..p)));
        }
        if cand.is_iso() {
            return Some(cand);
        }
    }
    None
}

/// The grid of the Key Lemma:
///
/// ```text
/// row1: I -a-> X -f'-> Y' -y'-> I[1]
/// row2: I -f''a-> Y'' -g''-> Z -b-> I[1]
/// col2: X -f''-> Y'' -y''-> E[1] -x[1]-> X[1]
/// col3: Y' -g'-> Z -z-> E[1] -(f'x)[1]-> Y'[1]
/// ```
#[derive(Clone, Debug)]
pub struct KeyLemmaGrid {
    pub row1: Triangle,
    pub row2: Triangle,
    pub col2: Triangle,
    pub col3: Triangle,
}

impl KeyLemmaGrid {
    /// All commutativity relations of the grid, each with a name.
    pub fn relations(&self) -> Vec<(&'static str, bool)> {
        let (r1, r2, c2, c3) = (&self.row1, &self.row2, &self.col2, &self.col3);
        let same = |a: &FormalObject, b: &FormalObject| a.same_components(b);
        let objects = same(r1.x(), r2.x())
            && same(r1.y(), c2.x())
            && same(r1.z(), c3.x())
            && same(r2.y(), c2.y())
            && same(r2.z(), c3.y())
            && same(c2.z(), c3.z());
        if !objects {
            return vec![("shared objects", false)];
        }
        vec![
            ("shared objects", true),
            ("f''∘a = row2.f", c2.f.compose(&r1.f) == r2.f.with_endpoints(r1.x(), c2.y())),
            ("g'∘f' = g''∘f''", c3.f.compose(&r1.g) == r2.g.compose(&c2.f).with_endpoints(r1.y(), c3.y())),
            ("z∘g'' = y''", c3.g.compose(&r2.g) == c2.g.with_endpoints(r2.y(), c3.z())),
            ("(f'x)[1] = col3.h", r1.g.shift(1).compose(&c2.h).with_endpoints(c3.z(), &c3.x().shift(1)) == c3.h),
            ("a[1]∘b = x[1]∘z", r1.f.shift(1).compose(&r2.h).with_endpoints(r2.z(), &c2.x().shift(1)) == c2.h.compose(&c3.g).with_endpoints(r2.z(), &c2.x().shift(1))),
        ]
    }
}

/// The triangle `X -(-f'; f'')-> Y' ⊕ Y'' -(g', g'')-> Z -h-> X[1]` with
/// `h = x[1]∘z`, provided the grid commutes and `Hom(Y'', g') = 0`.
pub fn key_lemma_assemble(grid: &KeyLemmaGrid) -> Result<Triangle> {
    for (name, ok) in grid.relations() {
        if !ok {
            return Err(Error::Hypothesis(format!("grid relation fails: {}", name)));
        }
    }
    let (r1, r2, c2, c3) = (&grid.row1, &grid.row2, &grid.col2, &grid.col3);
    let y2 = r2.y();
    let gp = &c3.f;
    for u in HomSpace::new(y2, gp.source()).basis() {
        let c = gp.compose(&u);
        if !c.is_zero() {
            return Err(Error::Hypothesis(format!("Hom(Y'', g') ≠ 0: g'∘u = {:?} for u = {:?}", c, u)));
        }
    }
    let x = c2.x();
    let f = r1.g.with_endpoints(x, r1.z()).neg().stack(&c2.f);
    let g = gp.with_endpoints(r1.z(), r2.z()).juxtapose(&r2.g.with_endpoints(y2, r2.z()));
    let h = c2.h.compose(&c3.g).with_endpoints(r2.z(), &x.shift(1));
    let g = g.with_endpoints(f.target(), r2.z());
    Triangle::new(f, g, h)
}

/// The grid whose assembly, rotated back, is the triangle of [`cone_in_h`].
pub fn pbpo_grid(d: &PbpoDiagram) -> KeyLemmaGrid {
    let st = |r: &Representation, n: i32| FormalObject::stalk(r, n);
    let (i, y, c) = (st(&d.i, 0), st(&d.y_obj, 0), st(&d.c, 0));
    let (k1, x1, e1) = (st(&d.k, -1), st(&d.x_obj, -1), st(&d.e, -1));
    let ses = |iota: &RepMorphism, pi: &RepMorphism, n: i32| -> Triangle {
        // B -ι-> E -π-> A -e-> B[1], shifted to degree n
        let e = ses_class(iota, pi).expect("short exact");
        let (b, m, a) = (st(iota.source(), n), st(iota.target(), n), st(pi.target(), n));
        Triangle {
            f: FormalMorphism::from_hom(&b, &m, n, iota.clone()),
            g: FormalMorphism::from_hom(&m, &a, n, pi.clone()),
            h: FormalMorphism::from_ext(&a, &b.shift(1), n, e),
        }
    };
    let rot2 = |t: Triangle| t.rotate().rotate();
    let row1 = ses(&d.f2, &d.y, 0);
    let row2 = rot2(ses(&d.x, &d.f1, 0));
    let col2 = rot2(ses(&d.iota_prime, &d.pi, 0));
    let col3 = rot2(ses(&d.iota, &d.pi_prime, 0));
    let fix = |t: Triangle, a: &FormalObject, b: &FormalObject, z: &FormalObject| -> Triangle {
        Triangle {
            f: t.f.with_endpoints(a, b),
            g: t.g.with_endpoints(b, z),
            h: t.h.with_endpoints(z, &a.shift(1)),
        }
    };
    KeyLemmaGrid {
        row1: fix(row1, &i, &y, &c),
        row2: fix(row2, &i, &k1, &x1),
        col2: fix(col2, &y, &k1, &e1),
        col3: fix(col3, &c, &x1, &e1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::is_exact;
    use crate::quiver_rep::{IndecList, Quiver};
    use crate::random;
    use std::sync::Arc;

    fn setup(q: Quiver) -> IndecList {
        IndecList::new(&Arc::new(q), 101).unwrap()
    }

    fn hom(x: &Representation, y: &Representation, c: &[u32]) -> RepMorphism {
        hom_ext(x, y).hom_from_coords(c)
    }

    fn obj(parts: &[(&Representation, i32)]) -> FormalObject {
        parts.iter().fold(FormalObject::zero(parts[0].0.quiver().clone(), 101), |acc, (r, n)| acc.direct_sum(&FormalObject::stalk(r, *n)))
    }

    fn agrees_with_oracle(t: &Triangle) -> bool {
        let o = oracle_cone(&t.f).unwrap();
        compare_cones(t, &o, 1).unwrap().is_some()
    }

    #[test]
    fn cones_of_maps_in_h() {
        let l = setup(Quiver::a(2));
        let (s1, s2, p1) = (&l.reps[0], &l.reps[1], &l.reps[2]);
        let (t, d) = cone_in_h(&hom(s2, p1, &[1]));
        assert!(d.k.is_zero());
        assert_eq!(t.z(), &FormalObject::stalk(s1, 0));
        let (t, d) = cone_in_h(&hom(p1, s1, &[1]));
        assert!(d.c.is_zero());
        assert_eq!(t.z(), &FormalObject::stalk(s2, -1));
        assert!(t.g.hom_parts().is_empty());
        assert_eq!(t.g.ext(0).coords().len(), 1);
        assert!(!t.g.ext(0).is_zero());
        assert!(is_exact(&t, &l.reps, None).passed && agrees_with_oracle(&t));
        let (t, _) = cone_in_h(&RepMorphism::identity(p1));
        assert!(t.z().is_zero());
    }

    #[test]
    fn cones_of_pure_extensions() {
        let l = setup(Quiver::a(2));
        let (s1, s2, p1) = (&l.reps[0], &l.reps[1], &l.reps[2]);
        let t = cone_pure_ext(&ExtClass::from_coords(s1, s2, &[1]), 0);
        assert!(t.z().component(-1).dims() == p1.dims());
        assert!(is_exact(&t, &l.reps, None).passed);
        let ss = s1.direct_sum(s1);
        let e = ExtClass::from_matrices(&ss, s2, vec![Matrix::from_rows(101, &[vec![1, 0]])]).unwrap();
        let t = cone_pure_ext(&e, 0);
        assert_eq!(t.z().component(-1).dims(), p1.direct_sum(s1).dims());
        let t = cone_pure_ext(&ExtClass::zero(s1, s2), 3);
        assert!(t.z().is_isomorphic(&obj(&[(s1, 2), (s2, 2)])));
        for n in -2..=2 {
            let t = cone_pure_ext(&ExtClass::from_coords(s1, s2, &[5]), n);
            assert!(agrees_with_oracle(&t));
            let wrong = Triangle { h: t.h.neg(), ..t.clone() };
            assert!(is_exact(&wrong, &l.reps, None).passed);
            assert!(!agrees_with_oracle(&wrong));
        }
    }

    #[test]
    fn general_cone_examples() {
        let l = setup(Quiver::a(2));
        let (s1, s2, p1) = (&l.reps[0], &l.reps[1], &l.reps[2]);
        let x = obj(&[(s1, 0), (p1, 1)]);
        assert!(cone_general(&FormalMorphism::identity(&x)).z().is_zero());
        let y = obj(&[(s2, -1), (s1, 2)]);
        let t = cone_general(&FormalMorphism::zero(&x, &y));
        assert!(t.z().is_isomorphic(&y.direct_sum(&x.shift(1))));
        assert!(agrees_with_oracle(&t));
        let x = obj(&[(s1, 0)]);
        let y = obj(&[(p1, -1), (s1, 0)]);
        let f = FormalMorphism::from_hom(&x, &y, 0, RepMorphism::identity(s1));
        let t = cone_general(&f);
        assert_eq!(t.z(), &FormalObject::stalk(p1, -1));
        assert!(is_exact(&t, &l.reps, None).passed && agrees_with_oracle(&t));
    }

    #[test]
    fn general_cone_matches_oracle() {
        for (q, seed) in [(Quiver::a(3), 1), (Quiver::d(4), 2)] {
            let l = setup(q);
            let mut rng = random::rng(seed);
            for _ in 0..25 {
                let x = random::formal_object(&l.reps, (-1, 1), 3, &mut rng);
                let y = random::formal_object(&l.reps, (-1, 1), 3, &mut rng);
                let f = random::formal_morphism(&x, &y, &mut rng);
                let t = cone_general(&f);
                assert!(is_exact(&t, &l.reps, None).passed);
                assert!(agrees_with_oracle(&t), "{:?}", f);
                let z = t.z();
                for n in z.degrees() {
                    let k = crate::quiver_rep::factor::kernel(&f.hom(n + 1));
                    let c = crate::quiver_rep::factor::cokernel(&f.hom(n));
                    let dims: Vec<usize> = (0..k.source().dims().len()).map(|v| k.source().dim(v) + c.target().dim(v)).collect();
                    assert_eq!(z.component(n).dims(), dims.as_slice());
                }
                assert!(cone_general(&t.g).z().is_isomorphic(&x.shift(1)));
            }
        }
    }

    #[test]
    fn cones_of_sums() {
        let l = setup(Quiver::a(3));
        let mut rng = random::rng(3);
        for _ in 0..10 {
            let mut pair = Vec::new();
            for _ in 0..2 {
                let x = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
                let y = random::formal_object(&l.reps, (-1, 1), 2, &mut rng);
                pair.push(random::formal_morphism(&x, &y, &mut rng));
            }
            let t = cone_general(&pair[0].direct_sum(&pair[1]));
            let z = cone_general(&pair[0]).z().direct_sum(cone_general(&pair[1]).z());
            assert!(t.z().is_isomorphic(&z));
        }
    }

    #[test]
    fn splitting_off_a_zero_component() {
        let l = setup(Quiver::a(2));
        let (s1, s2, p1) = (&l.reps[0], &l.reps[1], &l.reps[2]);
        let x = obj(&[(s1, 0)]);
        let (y1, y2) = (obj(&[(p1, 0)]), obj(&[(s2, -2)]));
        let (y, _, _, p1m, p2m) = crate::formal::biproduct(&y1, &y2);
        let t = cone_general(&FormalMorphism::zero(&x, &y));
        let sp = split_off(&t, &p1m, &p2m).unwrap();
        assert_eq!(sp.trivial.y(), &y2);
        assert!(sp.iso.is_iso());
        let sum = sp.main.direct_sum(&sp.trivial);
        assert!(t.z().is_isomorphic(sum.z()));
        let bad = FormalMorphism::from_hom(&y, &y, 0, RepMorphism::identity(p1));
        let t2 = cone_general(&FormalMorphism::identity(&y));
        assert!(matches!(split_off(&t2, &bad, &bad), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn key_lemma_reassembles_cones_in_h() {
        let l = setup(Quiver::a(3));
        let mut rng = random::rng(4);
        let l2 = setup(Quiver::a(2));
        let mut cases = vec![hom(&l2.reps[2], &l2.reps[0], &[1])];
        for _ in 0..10 {
            let x = random::rep(&l.reps, 2, &mut rng);
            let y = random::rep(&l.reps, 2, &mut rng);
            cases.push(random::rep_morphism(&x, &y, &mut rng));
        }
        for f in cases {
            let (t, d) = cone_in_h(&f);
            let grid = pbpo_grid(&d);
            let a = key_lemma_assemble(&grid).unwrap();
            let rb = a.rotate_back();
            let neg = FormalMorphism::identity(t.x()).neg();
            let sol = tr3_solutions(&rb, &t, &neg, &FormalMorphism::identity(t.y())).unwrap().unwrap();
            assert!(find_iso_in(&sol, 101, 1).is_some());
        }
    }

    #[test]
    fn key_lemma_degenerate_and_violated() {
        let l = setup(Quiver::a(2));
        let s1 = &l.reps[0];
        let x = FormalObject::stalk(s1, 0);
        let zero = FormalObject::zero(x.quiver().clone(), 101);
        let id = Triangle::trivial(&x);
        let grid = KeyLemmaGrid {
            row1: Triangle { f: FormalMorphism::zero(&zero, &x), g: FormalMorphism::identity(&x), h: FormalMorphism::zero(&x, &zero) },
            row2: id.clone(),
            col2: Triangle::identity_triangle(&x),
            col3: Triangle::identity_triangle(&x),
        };
        assert!(matches!(key_lemma_assemble(&grid), Err(Error::Hypothesis(_))));
        // Y'' = 0: the assembly is the rotation of the first row
        let (t, _) = cone_in_h(&hom(&l.reps[2], s1, &[1]));
        let rot2 = |t: Triangle| t.rotate().rotate();
        let grid = KeyLemmaGrid {
            row1: t.clone(),
            row2: rot2(Triangle::trivial(t.x())),
            col2: rot2(Triangle::trivial(t.y())),
            col3: rot2(t.clone()),
        };
        let a = key_lemma_assemble(&grid).unwrap();
        let r = t.rotate();
        let a = Triangle { f: a.f.with_endpoints(r.x(), r.y()), g: a.g.with_endpoints(r.y(), r.z()), h: a.h };
        assert!(compare_cones(&a, &r, 1).unwrap().is_some());
    }
}
