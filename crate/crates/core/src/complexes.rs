//! Bounded cochain complexes of representations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, kernel_coords, Matrix, QuotientChart};
use crate::quiver_rep::resolution::{p0_map, p1_map, standard_resolution};
use crate::quiver_rep::{Quiver, RepMorphism, Representation};

/// A bounded cochain complex `C^n -> C^{n+1}`; terms outside `lo..lo+len` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    quiver: Arc<Quiver>,
    p: u32,
    lo: i32,
    terms: Vec<Representation>,
    diffs: Vec<RepMorphism>,
}

fn sign(p: u32, k: i32) -> u32 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        linalg::neg(p, 1)
    }
}

impl Complex {
    /// `terms[i]` sits in degree `lo + i`; `diffs[i] : terms[i] -> terms[i + 1]`.
    pub fn new(quiver: Arc<Quiver>, p: u32, lo: i32, terms: Vec<Representation>, diffs: Vec<RepMorphism>) -> Result<Self> {
        if terms.len() != diffs.len() + 1 && !(terms.is_empty() && diffs.is_empty()) {
            return Err(Error::NotAComplex("need exactly one differential between consecutive terms".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source().dims() != terms[i].dims() || d.target().dims() != terms[i + 1].dims() {
                return Err(Error::NotAComplex(format!("differential in degree {} has the wrong endpoints", lo + i as i32)));
            }
            if !d.is_valid() {
                return Err(Error::NotAComplex(format!("differential in degree {} is not a morphism", lo + i as i32)));
            }
        }
        for (i, w) in diffs.windows(2).enumerate() {
            if !w[1].compose(&w[0]).is_zero() {
                return Err(Error::NotAComplex(format!("d∘d ≠ 0 starting in degree {}", lo + i as i32)));
            }
        }
        for t in &terms {
            t.check_same_quiver(&Representation::zero(quiver.clone(), p))?;
        }
        let diffs = diffs.into_iter().enumerate().map(|(i, d)| d.with_endpoints(&terms[i], &terms[i + 1])).collect();
        Ok(Complex::from_parts(quiver, p, lo, terms, diffs))
    }

    /// Build without validation, trimming zero terms at both ends.
    pub(crate) fn from_parts(quiver: Arc<Quiver>, p: u32, mut lo: i32, mut terms: Vec<Representation>, mut diffs: Vec<RepMorphism>) -> Self {
        while terms.last().is_some_and(Representation::is_zero) {
            terms.pop();
            diffs.pop();
        }
        while terms.first().is_some_and(Representation::is_zero) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        if terms.is_empty() {
            lo = 0;
            diffs.clear();
        }
        Complex { quiver, p, lo, terms, diffs }
    }

    pub fn zero(quiver: Arc<Quiver>, p: u32) -> Self {
        Complex { quiver, p, lo: 0, terms: vec![], diffs: vec![] }
    }

    /// `x` concentrated in degree `n`.
    pub fn stalk(x: &Representation, n: i32) -> Self {
        Complex::from_parts(x.quiver().clone(), x.prime(), n, vec![x.clone()], vec![])
    }

    /// Two-term complex `x -f-> y` with `x` in degree `n`.
    pub fn two_term(f: &RepMorphism, n: i32) -> Self {
        Complex::from_parts(f.source().quiver().clone(), f.prime(), n, vec![f.source().clone(), f.target().clone()], vec![f.clone()])
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn term(&self, n: i32) -> Representation {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.terms.len() {
            self.terms[i as usize].clone()
        } else {
            Representation::zero(self.quiver.clone(), self.p)
        }
    }

    pub fn term_ref(&self, n: i32) -> Option<&Representation> {
        let i = n - self.lo;
        (i >= 0).then(|| self.terms.get(i as usize)).flatten()
    }

    /// `d^n : C^n -> C^{n+1}`.
    pub fn diff(&self, n: i32) -> RepMorphism {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            RepMorphism::zero(&self.term(n), &self.term(n + 1))
        }
    }

    /// `C[k]`: term `n` is `C^{n+k}`, differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Complex {
        let s = sign(self.p, k);
        Complex {
            quiver: self.quiver.clone(),
            p: self.p,
            lo: if self.terms.is_empty() { 0 } else { self.lo - k },
            terms: self.terms.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(s)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms: Vec<Representation> = (lo..=hi).map(|n| self.term(n).direct_sum(&other.term(n))).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let i = (n - lo) as usize;
                self.diff(n).direct_sum(&other.diff(n)).with_endpoints(&terms[i], &terms[i + 1])
            })
            .collect();
        Complex::from_parts(self.quiver.clone(), self.p, lo, terms, diffs)
    }

    pub fn cohomology(&self, n: i32) -> Cohomology {
        Cohomology::new(self, n)
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.cohomology(n).rep.is_zero())
    }

    pub fn is_projective(&self) -> bool {
        self.terms.iter().all(Representation::is_projective)
    }

    pub fn is_free(&self) -> bool {
        self.terms.iter().all(|t| t.free_basis().is_some())
    }

    /// Whether every differential vanishes.
    pub fn has_zero_differential(&self) -> bool {
        self.diffs.iter().all(RepMorphism::is_zero)
    }
}

/// `H^n` of a complex together with the data to move between cycles and classes.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub rep: Representation,
    /// `Z^n -> C^n`
    pub cycles: RepMorphism,
    /// `Z^n -> H^n`
    pub projection: RepMorphism,
    zfree: Vec<Vec<usize>>,
    charts: Vec<QuotientChart>,
}

impl Cohomology {
    fn new(c: &Complex, n: i32) -> Cohomology {
        let x = c.term(n);
        let d = c.diff(n);
        let dprev = c.diff(n - 1);
        let nv = c.quiver.vertex_count();
        let mut zb = Vec::with_capacity(nv);
        let mut zfree = Vec::with_capacity(nv);
        let mut bz = Vec::with_capacity(nv);
        for v in 0..nv {
            let dv = d.map(v);
            let k = dv.kernel_basis();
            let free = dv.rref().free_columns();
            let b = dprev.map(v);
            let cols: Vec<Vec<u32>> = (0..b.cols()).map(|j| kernel_coords(&free, &b.column(j))).collect();
            bz.push(Matrix::from_columns(c.p, free.len(), &cols));
            zb.push(k);
            zfree.push(free);
        }
        let z = x.subrep(&zb).expect("cycles form a subrepresentation");
        let (h, proj) = z.quotient(&bz);
        let charts = bz.iter().map(QuotientChart::new).collect();
        let cycles = RepMorphism::new(z, x, zb).expect("inclusion of cycles");
        Cohomology { degree: n, rep: h, cycles, projection: proj, zfree, charts }
    }

    /// Class in `H^n_v` of a cycle vector in `C^n_v`.
    pub fn class_of(&self, v: usize, cycle: &[u32]) -> Vec<u32> {
        self.charts[v].coords(&kernel_coords(&self.zfree[v], cycle))
    }

    /// Matrix `H^n_v -> C^n_v` choosing the standard cycle representative of each class.
    pub fn section(&self, v: usize) -> Matrix {
        self.cycles.map(v).mul(&self.charts[v].section())
    }

    /// Whether a vector of `C^n_v` is a cycle.
    pub fn is_cycle(&self, v: usize, x: &[u32]) -> bool {
        let z = self.cycles.map(v);
        let coords = kernel_coords(&self.zfree[v], x);
        z.mul_vec(&coords) == x
    }
}

/// A chain map; components outside the stored range are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    lo: i32,
    maps: Vec<RepMorphism>,
}

fn union_range(a: &Complex, b: &Complex) -> (i32, i32) {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

impl ChainMap {
    /// `comps(n) : X^n -> Y^n` for every degree where both sides can be nonzero.
    pub fn new(source: &Complex, target: &Complex, comps: impl Fn(i32) -> Option<RepMorphism>) -> Result<Self> {
        let f = ChainMap::build(source, target, |n| comps(n).unwrap_or_else(|| RepMorphism::zero(&source.term(n), &target.term(n))));
        for n in f.lo..=f.lo + f.maps.len() as i32 - 1 {
            let m = f.map(n);
            if m.source().dims() != source.term(n).dims() || m.target().dims() != target.term(n).dims() {
                return Err(Error::Endpoint(format!("component in degree {} has the wrong endpoints", n)));
            }
            if !m.is_valid() {
                return Err(Error::NotAMorphism(format!("component in degree {}", n)));
            }
        }
        if !f.commutes() {
            return Err(Error::NotAMorphism("components do not commute with the differentials".into()));
        }
        Ok(f)
    }

    pub(crate) fn build(source: &Complex, target: &Complex, comps: impl Fn(i32) -> RepMorphism) -> Self {
        let (lo, hi) = union_range(source, target);
        let maps = (lo..=hi)
            .map(|n| comps(n).with_endpoints(&source.term(n), &target.term(n)))
            .collect();
        ChainMap { source: source.clone(), target: target.clone(), lo, maps }
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        ChainMap::build(source, target, |n| RepMorphism::zero(&source.term(n), &target.term(n)))
    }

    pub fn identity(c: &Complex) -> Self {
        ChainMap::build(c, c, |n| RepMorphism::identity(&c.term(n)))
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn prime(&self) -> u32 {
        self.source.p
    }

    pub fn map(&self, n: i32) -> RepMorphism {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.maps.len() {
            self.maps[i as usize].clone()
        } else {
            RepMorphism::zero(&self.source.term(n), &self.target.term(n))
        }
    }

    pub fn commutes(&self) -> bool {
        let (lo, hi) = union_range(&self.source, &self.target);
        (lo - 1..=hi).all(|n| self.target.diff(n).compose(&self.map(n)) == self.map(n + 1).compose(&self.source.diff(n)))
    }

    pub fn is_valid(&self) -> bool {
        self.maps.iter().all(RepMorphism::is_valid) && self.commutes()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> ChainMap {
        ChainMap::build(&f.source, &self.target, |n| self.map(n).compose(&f.map(n)))
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap::build(&self.source, &self.target, |n| self.map(n).add(&other.map(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> ChainMap {
        ChainMap::build(&self.source, &self.target, |n| self.map(n).scale(s))
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(linalg::neg(self.prime(), 1))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(RepMorphism::is_zero)
    }

    /// `f[k]` with `f[k]^n = f^{n+k}`.
    pub fn shift(&self, k: i32) -> ChainMap {
        let s = self.source.shift(k);
        let t = self.target.shift(k);
        ChainMap::build(&s, &t, |n| self.map(n + k))
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let s = self.source.direct_sum(&other.source);
        let t = self.target.direct_sum(&other.target);
        ChainMap::build(&s, &t, |n| self.map(n).direct_sum(&other.map(n)))
    }

    /// Induced map `H^n(X) -> H^n(Y)`.
    pub fn cohomology_map(&self, n: i32) -> RepMorphism {
        self.cohomology_map_with(&self.source.cohomology(n), &self.target.cohomology(n))
    }

    pub fn cohomology_map_with(&self, hx: &Cohomology, hy: &Cohomology) -> RepMorphism {
        let n = hx.degree;
        let f = self.map(n);
        let p = self.prime();
        let maps = (0..self.source.quiver.vertex_count())
            .map(|v| {
                let s = hx.section(v);
                let img = f.map(v).mul(&s);
                let cols: Vec<Vec<u32>> = (0..img.cols()).map(|j| hy.class_of(v, &img.column(j))).collect();
                Matrix::from_columns(p, hy.rep.dim(v), &cols)
            })
            .collect();
        RepMorphism::new(hx.rep.clone(), hy.rep.clone(), maps).expect("induced map on cohomology")
    }

    pub fn is_quasi_iso(&self) -> bool {
        let (lo, hi) = union_range(&self.source, &self.target);
        (lo..=hi).all(|n| self.cohomology_map(n).is_iso())
    }
}

/// The mapping cone `C^n = X^{n+1} ⊕ Y^n` of `f : X -> Y`, with
/// `d = [[-d_X, 0], [f, d_Y]]`, the inclusion `g : Y -> C` and the
/// projection `h : C -> X[1]`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub cone: Complex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

pub fn mapping_cone(f: &ChainMap) -> MappingCone {
    let x = &f.source;
    let y = &f.target;
    let q = x.quiver.clone();
    let p = x.p;
    let (lo, hi) = union_range(&x.shift(1), y);
    let terms: Vec<Representation> = (lo..=hi).map(|n| x.term(n + 1).direct_sum(&y.term(n))).collect();
    let diffs: Vec<RepMorphism> = (lo..hi)
        .map(|n| {
            let i = (n - lo) as usize;
            let dx = x.diff(n + 1);
            let dy = y.diff(n);
            let fm = f.map(n + 1);
            let maps = (0..q.vertex_count())
                .map(|v| {
                    let top = dx.map(v).neg().hstack(&Matrix::zeros(p, x.term(n + 2).dim(v), y.term(n).dim(v)));
                    let bottom = fm.map(v).hstack(dy.map(v));
                    top.vstack(&bottom)
                })
                .collect();
            RepMorphism::new_unchecked(terms[i].clone(), terms[i + 1].clone(), maps)
        })
        .collect();
    let cone = Complex::from_parts(q.clone(), p, lo, terms, diffs);
    let xs = x.shift(1);
    let incl = ChainMap::build(y, &cone, |n| {
        let maps = (0..q.vertex_count())
            .map(|v| Matrix::zeros(p, x.term(n + 1).dim(v), y.term(n).dim(v)).vstack(&Matrix::identity(p, y.term(n).dim(v))))
            .collect();
        RepMorphism::new_unchecked(y.term(n), cone.term(n), maps)
    });
    let proj = ChainMap::build(&cone, &xs, |n| {
        let maps = (0..q.vertex_count())
            .map(|v| Matrix::identity(p, x.term(n + 1).dim(v)).hstack(&Matrix::zeros(p, x.term(n + 1).dim(v), y.term(n).dim(v))))
            .collect();
        RepMorphism::new_unchecked(cone.term(n), xs.term(n), maps)
    });
    MappingCone { cone, incl, proj }
}

/// A complex of free representations with a quasi-isomorphism onto the input.
#[derive(Clone, Debug)]
pub struct Replacement {
    pub complex: Complex,
    pub quasi_iso: ChainMap,
}

/// Rewrite a complex of projectives with free terms, via termwise isomorphisms.
pub fn free_form(c: &Complex) -> Result<Replacement> {
    let mut isos = Vec::new();
    for n in c.degrees() {
        let t = c.term(n);
        let iso = t
            .as_free()
            .ok_or_else(|| Error::NonProjective(format!("term in degree {} is not projective", n)))?;
        isos.push(iso);
    }
    let terms: Vec<Representation> = isos.iter().map(|i| i.source().clone()).collect();
    let diffs: Vec<RepMorphism> = (0..isos.len().saturating_sub(1))
        .map(|i| {
            let inv = isos[i + 1].inverse().expect("termwise isomorphism");
            let d = c.diff(c.lo() + i as i32);
            inv.compose(&d.compose(&isos[i]))
        })
        .collect();
    let complex = Complex::from_parts(c.quiver.clone(), c.p, c.lo(), terms, diffs);
    let quasi_iso = ChainMap::build(&complex, c, |n| {
        let i = n - c.lo();
        if i >= 0 && (i as usize) < isos.len() {
            isos[i as usize].clone()
        } else {
            RepMorphism::zero(&complex.term(n), &c.term(n))
        }
    });
    Ok(Replacement { complex, quasi_iso })
}

/// Projective replacement. Complexes of projectives are rewritten in free
/// form; otherwise the total complex of the standard resolutions is used:
/// `Tot^m = P⁰(X^m) ⊕ P¹(X^{m+1})`.
pub fn projective_replacement(c: &Complex) -> Replacement {
    if c.is_projective() {
        return free_form(c).expect("terms are projective");
    }
    let q = c.quiver.clone();
    let p = c.p;
    let lo = c.lo() - 1;
    let hi = c.hi();
    let res: Vec<_> = (lo..=hi + 1).map(|n| standard_resolution(&c.term(n))).collect();
    let r = |n: i32| &res[(n - lo) as usize];
    let terms: Vec<Representation> = (lo..=hi).map(|m| r(m).p0.direct_sum(&r(m + 1).p1)).collect();
    let diffs: Vec<RepMorphism> = (lo..hi)
        .map(|m| {
            let i = (m - lo) as usize;
            let d0 = p0_map(&c.diff(m), &r(m).p0, &r(m + 1).p0);
            let d1 = p1_map(&c.diff(m + 1), &r(m + 1).p1, &r(m + 2).p1).neg();
            let bd = &r(m + 1).boundary;
            let maps = (0..q.vertex_count())
                .map(|v| {
                    let top = d0.map(v).hstack(bd.map(v));
                    let bottom = Matrix::zeros(p, r(m + 2).p1.dim(v), r(m).p0.dim(v)).hstack(d1.map(v));
                    top.vstack(&bottom)
                })
                .collect();
            RepMorphism::new_unchecked(terms[i].clone(), terms[i + 1].clone(), maps)
        })
        .collect();
    let complex = Complex::from_parts(q.clone(), p, lo, terms, diffs);
    let quasi_iso = ChainMap::build(&complex, c, |m| {
        if m < lo || m > hi {
            return RepMorphism::zero(&complex.term(m), &c.term(m));
        }
        let eps = &r(m).augmentation;
        let maps = (0..q.vertex_count())
            .map(|v| eps.map(v).hstack(&Matrix::zeros(p, c.term(m).dim(v), r(m + 1).p1.dim(v))))
            .collect();
        RepMorphism::new_unchecked(complex.term(m), c.term(m), maps)
    });
    Replacement { complex, quasi_iso }
}

/// Functoriality of the standard replacement on a chain map.
pub fn replacement_map(f: &ChainMap, rx: &Replacement, ry: &Replacement) -> Result<ChainMap> {
    lift_through_quasi_iso(&f.compose(&rx.quasi_iso), &ry.quasi_iso)
}

/// Evaluation of a morphism out of a free representation `src` into `tgt`
/// on the element `x ∈ src_v`, as a matrix acting on the concatenated
/// generator images.
pub(crate) fn eval_matrix(src: &Representation, tgt: &Representation, v: usize, x: &[u32]) -> Matrix {
    let fb = src.free_basis().expect("free source");
    let q = src.quiver();
    let p = src.prime();
    let offs: Vec<usize> = fb
        .gens
        .iter()
        .scan(0, |acc, &g| {
            let o = *acc;
            *acc += tgt.dim(g);
            Some(o)
        })
        .collect();
    let width: usize = fb.gens.iter().map(|&g| tgt.dim(g)).sum();
    let mut m = Matrix::zeros(p, tgt.dim(v), width);
    for (idx, &(g, pi)) in fb.basis[v].iter().enumerate() {
        let c = x[idx];
        if c == 0 {
            continue;
        }
        let path = &q.paths_from(fb.gens[g])[pi];
        let pm = tgt.path_matrix(&path.arrows, fb.gens[g]).scale(c);
        let cur = m.block(0, offs[g], tgt.dim(v), tgt.dim(fb.gens[g]));
        m.set_block(0, offs[g], &cur.add(&pm));
    }
    m
}

/// Column layout of generator unknowns `u_g ∈ tgt_{v(g)}` for a free `src`.
pub(crate) fn generator_width(src: &Representation, tgt: &Representation) -> usize {
    src.free_basis().expect("free source").gens.iter().map(|&g| tgt.dim(g)).sum()
}

/// Linear systems on chain maps and homotopies out of a free complex `P`.
pub(crate) struct ChainSystem {
    /// degree range of unknowns
    pub lo: i32,
    pub hi: i32,
    /// offsets of the chain-map unknowns per degree
    pub map_off: Vec<usize>,
    pub map_len: usize,
    /// offsets of the homotopy unknowns per degree (`h^n : P^n -> Q^{n-1}`)
    pub htp_off: Vec<usize>,
    pub htp_len: usize,
}

impl ChainSystem {
    pub fn new(pc: &Complex, qc: &Complex) -> Self {
        let lo = pc.lo();
        let hi = pc.hi();
        let mut map_off = vec![0];
        let mut htp_off = vec![0];
        for n in lo..=hi {
            let pn = pc.term(n);
            map_off.push(map_off.last().unwrap() + generator_width(&pn, &qc.term(n)));
            htp_off.push(htp_off.last().unwrap() + generator_width(&pn, &qc.term(n - 1)));
        }
        let map_len = *map_off.last().unwrap();
        let htp_len = *htp_off.last().unwrap();
        ChainSystem { lo, hi, map_off, map_len, htp_off, htp_len }
    }

    fn idx(&self, n: i32) -> Option<usize> {
        (n >= self.lo && n <= self.hi).then(|| (n - self.lo) as usize)
    }

    /// Rows: for every generator `g` of `P^n`, `d_Q u^n_g - u^{n+1}(d_P g) = 0`.
    pub fn commutation_matrix(&self, pc: &Complex, qc: &Complex) -> Matrix {
        let p = pc.prime();
        let mut blocks: Vec<Matrix> = Vec::new();
        for n in self.lo..=self.hi {
            let pn = pc.term(n);
            let fb = pn.free_basis().expect("free").clone();
            let qn = qc.term(n);
            let qn1 = qc.term(n + 1);
            let dq = qc.diff(n);
            let dp = pc.diff(n);
            let pn1 = pc.term(n + 1);
            let i = self.idx(n).unwrap();
            let mut goff = 0;
            for (g, &v) in fb.gens.iter().enumerate() {
                let mut row = Matrix::zeros(p, qn1.dim(v), self.map_len);
                row.set_block(0, self.map_off[i] + goff, dq.map(v));
                goff += qn.dim(v);
                if let Some(j) = self.idx(n + 1) {
                    let col = dp.map(v).column(fb.generator_position(g));
                    let e = eval_matrix(&pn1, &qn1, v, &col).neg();
                    let cur = row.block(0, self.map_off[j], qn1.dim(v), e.cols());
                    row.set_block(0, self.map_off[j], &cur.add(&e));
                }
                blocks.push(row);
            }
        }
        blocks.into_iter().fold(Matrix::zeros(p, 0, self.map_len), |a, b| a.vstack(&b))
    }

    /// Matrix sending homotopy unknowns to the chain-map unknowns of `dh + hd`.
    pub fn homotopy_matrix(&self, pc: &Complex, qc: &Complex) -> Matrix {
        let p = pc.prime();
        let mut m = Matrix::zeros(p, self.map_len, self.htp_len);
        for n in self.lo..=self.hi {
            let i = self.idx(n).unwrap();
            let pn = pc.term(n);
            let fb = pn.free_basis().expect("free").clone();
            let qn = qc.term(n);
            let qprev = qc.term(n - 1);
            let dq = qc.diff(n - 1);
            let dp = pc.diff(n);
            let pn1 = pc.term(n + 1);
            let mut goff = 0;
            let mut hoff = 0;
            for (g, &v) in fb.gens.iter().enumerate() {
                let r0 = self.map_off[i] + goff;
                // d_Q h^n(g)
                let cur = m.block(r0, self.htp_off[i] + hoff, qn.dim(v), qprev.dim(v));
                m.set_block(r0, self.htp_off[i] + hoff, &cur.add(dq.map(v)));
                // h^{n+1}(d_P g)
                if let Some(j) = self.idx(n + 1) {
                    let col = dp.map(v).column(fb.generator_position(g));
                    let e = eval_matrix(&pn1, &qn, v, &col);
                    let cur = m.block(r0, self.htp_off[j], qn.dim(v), e.cols());
                    m.set_block(r0, self.htp_off[j], &cur.add(&e));
                }
                goff += qn.dim(v);
                hoff += qprev.dim(v);
            }
        }
        m
    }

    pub fn coords_of(&self, f: &ChainMap) -> Vec<u32> {
        (self.lo..=self.hi).flat_map(|n| f.map(n).generator_coords()).collect()
    }

    pub fn chain_map(&self, pc: &Complex, qc: &Complex, u: &[u32]) -> ChainMap {
        ChainMap::build(pc, qc, |n| match self.idx(n) {
            Some(i) => {
                let pn = pc.term(n);
                let qn = qc.term(n);
                let fb = pn.free_basis().expect("free");
                let mut off = self.map_off[i];
                let images: Vec<Vec<u32>> = fb
                    .gens
                    .iter()
                    .map(|&v| {
                        let img = u[off..off + qn.dim(v)].to_vec();
                        off += qn.dim(v);
                        img
                    })
                    .collect();
                RepMorphism::from_generator_images(&pn, &qn, &images)
            }
            None => RepMorphism::zero(&pc.term(n), &qc.term(n)),
        })
    }
}

/// `Hom(P, Q)` in the homotopy category for complexes of projectives.
#[derive(Debug)]
pub struct HomotopyHom {
    pub source: Complex,
    pub target: Complex,
    free_source: Replacement,
    system: ChainSystem,
    zfree: Vec<usize>,
    zbasis: Matrix,
    chart: QuotientChart,
}

impl std::fmt::Debug for ChainSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainSystem[{}..{}]", self.lo, self.hi)
    }
}

pub fn hom_mod_homotopy(pc: &Complex, qc: &Complex) -> Result<HomotopyHom> {
    if !pc.is_projective() || !qc.is_projective() {
        return Err(Error::NonProjective("homotopy Hom needs complexes of projectives".into()));
    }
    let free_source = free_form(pc)?;
    let fp = &free_source.complex;
    let system = ChainSystem::new(fp, qc);
    let c = system.commutation_matrix(fp, qc);
    let zbasis = c.kernel_basis();
    let zfree = c.rref().free_columns();
    let h = system.homotopy_matrix(fp, qc);
    let cols: Vec<Vec<u32>> = (0..h.cols()).map(|j| kernel_coords(&zfree, &h.column(j))).collect();
    let bz = Matrix::from_columns(pc.prime(), zfree.len(), &cols);
    let chart = QuotientChart::new(&bz);
    Ok(HomotopyHom { source: pc.clone(), target: qc.clone(), free_source, system, zfree, zbasis, chart })
}

impl HomotopyHom {
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn basis(&self) -> Vec<ChainMap> {
        let d = self.dim();
        (0..d)
            .map(|k| {
                let mut e = vec![0; d];
                e[k] = 1;
                self.from_coords(&e)
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> ChainMap {
        let z = self.chart.lift(coords);
        let u = self.zbasis.mul_vec(&z);
        let fp = &self.free_source.complex;
        let f = self.system.chain_map(fp, &self.target, &u);
        let inv = ChainMap::build(&self.source, fp, |n| {
            self.free_source.quasi_iso.map(n).inverse().expect("termwise isomorphism")
        });
        f.compose(&inv)
    }

    /// Class of a chain map `P -> Q`.
    pub fn coords(&self, f: &ChainMap) -> Vec<u32> {
        let g = f.compose(&self.free_source.quasi_iso);
        let u = self.system.coords_of(&g);
        self.chart.coords(&kernel_coords(&self.zfree, &u))
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.coords(f).iter().all(|&x| x == 0)
    }
}

/// Given `f : P -> Y` with `P` free and a quasi-isomorphism `s : X -> Y`,
/// find `g : P -> X` with `s g` homotopic to `f`.
pub fn lift_through_quasi_iso(f: &ChainMap, s: &ChainMap) -> Result<ChainMap> {
    let pc = f.source();
    if !pc.is_free() {
        return Err(Error::NonProjective("lift needs a free source".into()));
    }
    let xc = s.source();
    let yc = s.target();
    let sx = ChainSystem::new(pc, xc);
    let sy = ChainSystem::new(pc, yc);
    let cx = sx.commutation_matrix(pc, xc);
    let hy = sy.homotopy_matrix(pc, yc);
    // unknowns: (g in chain coords for X, homotopy into Y); s∘g - f = dh + hd, g a chain map
    let p = pc.prime();
    let smat = {
        let mut m = Matrix::zeros(p, sy.map_len, sx.map_len);
        for n in sx.lo..=sx.hi {
            let i = (n - sx.lo) as usize;
            let fb = pc.term(n).free_basis().expect("free").clone();
            let (mut ox, mut oy) = (sx.map_off[i], sy.map_off[i]);
            for &v in &fb.gens {
                m.set_block(oy, ox, s.map(n).map(v));
                ox += xc.term(n).dim(v);
                oy += yc.term(n).dim(v);
            }
        }
        m
    };
    let top = smat.hstack(&hy.neg());
    let bottom = cx.hstack(&Matrix::zeros(p, cx.rows(), sy.htp_len));
    let a = top.vstack(&bottom);
    let fu = sy.coords_of(f);
    let mut rhs = fu;
    rhs.extend(std::iter::repeat_n(0, cx.rows()));
    let sol = a
        .solve_vec(&rhs)
        .ok_or_else(|| Error::Inconsistent("no lift through the quasi-isomorphism".into()))?;
    Ok(sx.chain_map(pc, xc, &sol[..sx.map_len]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::a(2))
    }

    fn p2_to_p1(q: &Arc<Quiver>) -> RepMorphism {
        let p1 = Representation::projective(q.clone(), 101, 0);
        let p2 = Representation::projective(q.clone(), 101, 1);
        RepMorphism::new(p2, p1, vec![Matrix::zeros(101, 1, 0), Matrix::identity(101, 1)]).unwrap()
    }

    #[test]
    fn cohomology_of_two_term_complex() {
        let q = a2();
        let c = Complex::two_term(&p2_to_p1(&q), 0);
        assert!(c.cohomology(0).rep.is_zero());
        assert_eq!(c.cohomology(1).rep.dims(), &[1, 0]);
    }

    #[test]
    fn shift_conventions() {
        let q = a2();
        let c = Complex::two_term(&p2_to_p1(&q), 0);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(1), c.shift(2));
        assert_eq!(c.shift(1).cohomology(0).rep.dims(), &[1, 0]);
        let s = Complex::stalk(&Representation::simple(q, 101, 0), 0).shift(1);
        assert_eq!(s.lo(), -1);
    }

    #[test]
    fn cones() {
        let q = a2();
        let c = Complex::two_term(&p2_to_p1(&q), 0);
        let id = ChainMap::identity(&c);
        assert!(mapping_cone(&id).cone.is_acyclic());
        let f = ChainMap::build(&Complex::stalk(&p2_to_p1(&q).source().clone(), 0), &Complex::stalk(p2_to_p1(&q).target(), 0), |n| {
            if n == 0 {
                p2_to_p1(&q)
            } else {
                RepMorphism::zero(&Representation::zero(q.clone(), 101), &Representation::zero(q.clone(), 101))
            }
        });
        assert!(f.is_valid());
        let mc = mapping_cone(&f);
        assert!(mc.incl.is_valid() && mc.proj.is_valid());
        assert!(mc.cone.cohomology(-1).rep.is_zero());
        assert_eq!(mc.cone.cohomology(0).rep.dims(), &[1, 0]);
    }

    #[test]
    fn replacement_of_simple() {
        let q = a2();
        let s1 = Representation::simple(q.clone(), 101, 0);
        let r = projective_replacement(&Complex::stalk(&s1, 0));
        assert!(r.complex.is_projective());
        assert!(r.quasi_iso.is_valid());
        assert!(r.quasi_iso.is_quasi_iso());
        let p1 = Representation::projective(q, 101, 0);
        let r = projective_replacement(&Complex::stalk(&p1, 0));
        assert_eq!(r.complex.lo(), 0);
        assert_eq!(r.complex.hi(), 0);
    }

    #[test]
    fn homotopy_hom_dimensions() {
        let q = a2();
        let p1 = Representation::projective(q.clone(), 101, 0);
        let s1 = Representation::simple(q.clone(), 101, 0);
        let s2 = Representation::simple(q.clone(), 101, 1);
        let sp1 = Complex::stalk(&p1, 0);
        assert_eq!(hom_mod_homotopy(&sp1, &sp1).unwrap().dim(), 1);
        let r1 = projective_replacement(&Complex::stalk(&s1, 0)).complex;
        let r2 = projective_replacement(&Complex::stalk(&s2, 0)).complex;
        for n in -2..=3 {
            let h = hom_mod_homotopy(&r1, &r2.shift(n)).unwrap();
            assert_eq!(h.dim(), usize::from(n == 1), "n = {}", n);
            for b in h.basis() {
                assert!(b.is_valid());
            }
        }
        assert!(matches!(hom_mod_homotopy(&Complex::stalk(&s1, 0), &sp1), Err(Error::NonProjective(_))));
    }
}
