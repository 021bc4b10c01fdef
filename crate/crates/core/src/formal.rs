//! The formal model: graded objects `⊕_n X_n[-n]` over `rep(Q)` and their morphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::quiver_rep::decompose::{decompose_rep, find_iso};
use crate::quiver_rep::{hom_ext, ExtClass, HomExt, Quiver, RepMorphism, Representation};

/// `⊕_n X_n[-n]`: component `n` is the representation `X_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalObject {
    quiver: Arc<Quiver>,
    p: u32,
    comps: BTreeMap<i32, Representation>,
}

impl fmt::Debug for FormalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formal{{")?;
        for (n, x) in &self.comps {
            write!(f, " {}: {:?}", n, x.dims())?;
        }
        write!(f, " }}")
    }
}

impl FormalObject {
    pub fn zero(quiver: Arc<Quiver>, p: u32) -> Self {
        FormalObject { quiver, p, comps: BTreeMap::new() }
    }

    /// `x[-n]`, i.e. `x` placed in component `n`.
    pub fn stalk(x: &Representation, n: i32) -> Self {
        FormalObject::from_components(x.quiver().clone(), x.prime(), [(n, x.clone())])
    }

    pub fn from_components(quiver: Arc<Quiver>, p: u32, comps: impl IntoIterator<Item = (i32, Representation)>) -> Self {
        let comps = comps.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        FormalObject { quiver, p, comps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn component(&self, n: i32) -> Representation {
        self.comps.get(&n).cloned().unwrap_or_else(|| Representation::zero(self.quiver.clone(), self.p))
    }

    pub fn components(&self) -> &BTreeMap<i32, Representation> {
        &self.comps
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.comps.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.comps.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.comps.keys().next_back().copied()
    }

    /// `max degree - min degree`; `None` for the zero object.
    pub fn amplitude(&self) -> Option<i32> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    /// `X[k]`: component `n` moves to `n - k`.
    pub fn shift(&self, k: i32) -> FormalObject {
        FormalObject {
            quiver: self.quiver.clone(),
            p: self.p,
            comps: self.comps.iter().map(|(&n, x)| (n - k, x.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FormalObject) -> FormalObject {
        let mut comps = self.comps.clone();
        for (&n, x) in &other.comps {
            let merged = match comps.get(&n) {
                Some(y) => y.direct_sum(x),
                None => x.clone(),
            };
            comps.insert(n, merged);
        }
        FormalObject { quiver: self.quiver.clone(), p: self.p, comps }
    }

    /// Indecomposable summands `(I, n)` meaning `I[-n]`, with inclusion and projection.
    pub fn decompose(&self, seed: u64) -> Vec<(Representation, i32, FormalMorphism, FormalMorphism)> {
        let mut out = Vec::new();
        for (&n, x) in &self.comps {
            for s in decompose_rep(x, seed) {
                let part = FormalObject::stalk(&s.rep, n);
                let inc = FormalMorphism::from_hom(&part, self, n, s.inclusion.clone());
                let proj = FormalMorphism::from_hom(self, &part, n, s.projection.clone());
                out.push((s.rep, n, inc, proj));
            }
        }
        out
    }

    /// Whether the two objects are isomorphic (componentwise).
    pub fn is_isomorphic(&self, other: &FormalObject) -> bool {
        find_formal_iso(self, other).is_some()
    }

    pub fn same_quiver(&self, other: &FormalObject) -> bool {
        self.p == other.p && (Arc::ptr_eq(&self.quiver, &other.quiver) || *self.quiver == *other.quiver)
    }

    /// Same components up to representation equality (ignoring quiver handles).
    pub fn same_components(&self, other: &FormalObject) -> bool {
        self.comps == other.comps
    }
}

/// An isomorphism between formal objects with pure hom parts, if one is found.
pub fn find_formal_iso(x: &FormalObject, y: &FormalObject) -> Option<FormalMorphism> {
    if x.degrees() != y.degrees() {
        return None;
    }
    let mut hom = BTreeMap::new();
    for (&n, a) in &x.comps {
        hom.insert(n, find_iso(a, &y.component(n), 0x150u64.wrapping_add(n as u64))?);
    }
    Some(FormalMorphism { source: x.clone(), target: y.clone(), hom, ext: BTreeMap::new() })
}

/// A morphism of formal objects: hom parts `X_n -> Y_n` and ext parts in
/// `Ext¹(X_n, Y_{n-1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalMorphism {
    source: FormalObject,
    target: FormalObject,
    hom: BTreeMap<i32, RepMorphism>,
    ext: BTreeMap<i32, ExtClass>,
}

impl fmt::Debug for FormalMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} [", self.source, self.target)?;
        for (n, m) in &self.hom {
            write!(f, " hom{}:{:?}", n, m.maps().iter().map(|x| x.to_signed_rows()).collect::<Vec<_>>())?;
        }
        for (n, e) in &self.ext {
            write!(f, " ext{}:{:?}", n, e.coords())?;
        }
        write!(f, " ]")
    }
}

impl FormalMorphism {
    /// Assemble from parts; zero parts are dropped and endpoints are checked.
    pub fn new(
        source: &FormalObject,
        target: &FormalObject,
        hom: impl IntoIterator<Item = (i32, RepMorphism)>,
        ext: impl IntoIterator<Item = (i32, ExtClass)>,
    ) -> Result<Self> {
        let mut h = BTreeMap::new();
        for (n, m) in hom {
            if m.source().dims() != source.component(n).dims() || m.target().dims() != target.component(n).dims() {
                return Err(Error::Endpoint(format!("hom part in degree {}", n)));
            }
            if !m.is_valid() {
                return Err(Error::NotAMorphism(format!("hom part in degree {}", n)));
            }
            if !m.is_zero() {
                h.insert(n, m.with_endpoints(&source.component(n), &target.component(n)));
            }
        }
        let mut e = BTreeMap::new();
        for (n, c) in ext {
            if c.source().dims() != source.component(n).dims() || c.target().dims() != target.component(n - 1).dims() {
                return Err(Error::Endpoint(format!("ext part in degree {}", n)));
            }
            let c = ExtClass::from_matrices(&source.component(n), &target.component(n - 1), c.matrices().to_vec())?;
            if !c.is_zero() {
                e.insert(n, c);
            }
        }
        Ok(FormalMorphism { source: source.clone(), target: target.clone(), hom: h, ext: e })
    }

    pub fn zero(source: &FormalObject, target: &FormalObject) -> Self {
        FormalMorphism { source: source.clone(), target: target.clone(), hom: BTreeMap::new(), ext: BTreeMap::new() }
    }

    pub fn identity(x: &FormalObject) -> Self {
        let hom = x.comps.iter().map(|(&n, a)| (n, RepMorphism::identity(a))).collect();
        FormalMorphism { source: x.clone(), target: x.clone(), hom, ext: BTreeMap::new() }
    }

    /// Single hom part in degree `n`.
    pub fn from_hom(source: &FormalObject, target: &FormalObject, n: i32, f: RepMorphism) -> Self {
        let mut m = FormalMorphism::zero(source, target);
        if !f.is_zero() {
            m.hom.insert(n, f.with_endpoints(&source.component(n), &target.component(n)));
        }
        m
    }

    /// Single ext part in degree `n`.
    pub fn from_ext(source: &FormalObject, target: &FormalObject, n: i32, e: ExtClass) -> Self {
        let mut m = FormalMorphism::zero(source, target);
        if !e.is_zero() {
            m.ext.insert(n, e.with_endpoints(&source.component(n), &target.component(n - 1)));
        }
        m
    }

    /// A morphism of `H` viewed between degree-0 stalks.
    pub fn stalk(f: &RepMorphism) -> Self {
        let s = FormalObject::stalk(f.source(), 0);
        let t = FormalObject::stalk(f.target(), 0);
        FormalMorphism::from_hom(&s, &t, 0, f.clone())
    }

    pub fn source(&self) -> &FormalObject {
        &self.source
    }

    pub fn target(&self) -> &FormalObject {
        &self.target
    }

    pub fn prime(&self) -> u32 {
        self.source.p
    }

    pub fn hom(&self, n: i32) -> RepMorphism {
        self.hom
            .get(&n)
            .cloned()
            .unwrap_or_else(|| RepMorphism::zero(&self.source.component(n), &self.target.component(n)))
    }

    /// Ext part in `Ext¹(X_n, Y_{n-1})`.
    pub fn ext(&self, n: i32) -> ExtClass {
        self.ext
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ExtClass::zero(&self.source.component(n), &self.target.component(n - 1)))
    }

    pub fn hom_parts(&self) -> &BTreeMap<i32, RepMorphism> {
        &self.hom
    }

    pub fn ext_parts(&self) -> &BTreeMap<i32, ExtClass> {
        &self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.hom.is_empty() && self.ext.is_empty()
    }

    pub fn has_ext(&self) -> bool {
        !self.ext.is_empty()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &FormalMorphism) -> FormalMorphism {
        debug_assert!(f.target.same_components(&self.source), "composition endpoints differ");
        let mut hom = BTreeMap::new();
        for (&n, a) in &f.hom {
            if let Some(b) = self.hom.get(&n) {
                let c = b.compose(a);
                if !c.is_zero() {
                    hom.insert(n, c);
                }
            }
        }
        let mut ext: BTreeMap<i32, ExtClass> = BTreeMap::new();
        let mut add = |n: i32, e: ExtClass| {
            if e.is_zero() {
                return;
            }
            let v = match ext.remove(&n) {
                Some(old) => old.add(&e),
                None => e,
            };
            if !v.is_zero() {
                ext.insert(n, v);
            }
        };
        for (&n, g1) in &self.ext {
            if let Some(f0) = f.hom.get(&n) {
                add(n, g1.pullback(f0));
            }
        }
        for (&n, f1) in &f.ext {
            if let Some(g0) = self.hom.get(&(n - 1)) {
                add(n, f1.pushout(g0));
            }
        }
        let ext = ext
            .into_iter()
            .map(|(n, e)| (n, e.with_endpoints(&f.source.component(n), &self.target.component(n - 1))))
            .collect();
        FormalMorphism { source: f.source.clone(), target: self.target.clone(), hom, ext }
    }

    pub fn add(&self, other: &FormalMorphism) -> FormalMorphism {
        let mut hom = self.hom.clone();
        for (&n, m) in &other.hom {
            let v = match hom.remove(&n) {
                Some(a) => a.add(m),
                None => m.clone(),
            };
            if !v.is_zero() {
                hom.insert(n, v);
            }
        }
        let mut ext = self.ext.clone();
        for (&n, e) in &other.ext {
            let v = match ext.remove(&n) {
                Some(a) => a.add(e),
                None => e.clone(),
            };
            if !v.is_zero() {
                ext.insert(n, v);
            }
        }
        FormalMorphism { source: self.source.clone(), target: self.target.clone(), hom, ext }
    }

    pub fn scale(&self, s: u32) -> FormalMorphism {
        let s = s % self.prime();
        if s == 0 {
            return FormalMorphism::zero(&self.source, &self.target);
        }
        FormalMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            hom: self.hom.iter().map(|(&n, m)| (n, m.scale(s))).collect(),
            ext: self.ext.iter().map(|(&n, e)| (n, e.scale(s))).collect(),
        }
    }

    pub fn neg(&self) -> FormalMorphism {
        self.scale(linalg::neg(self.prime(), 1))
    }

    pub fn sub(&self, other: &FormalMorphism) -> FormalMorphism {
        self.add(&other.neg())
    }

    /// `f[k]`: parts relabelled from degree `n` to `n - k`.
    pub fn shift(&self, k: i32) -> FormalMorphism {
        FormalMorphism {
            source: self.source.shift(k),
            target: self.target.shift(k),
            hom: self.hom.iter().map(|(&n, m)| (n - k, m.clone())).collect(),
            ext: self.ext.iter().map(|(&n, e)| (n - k, e.clone())).collect(),
        }
    }

    /// Hom-only part.
    pub fn diagonal(&self) -> FormalMorphism {
        FormalMorphism { ext: BTreeMap::new(), ..self.clone() }
    }

    /// Ext-only part.
    pub fn off_diagonal(&self) -> FormalMorphism {
        FormalMorphism { hom: BTreeMap::new(), ..self.clone() }
    }

    /// Iso iff every hom part is invertible (the ext parts are nilpotent).
    pub fn is_iso(&self) -> bool {
        if self.source.degrees() != self.target.degrees() {
            return false;
        }
        self.source.comps.keys().all(|&n| self.hom(n).is_iso())
    }

    pub fn inverse(&self) -> Option<FormalMorphism> {
        if !self.is_iso() {
            return None;
        }
        let mut hom = BTreeMap::new();
        for &n in self.source.comps.keys() {
            hom.insert(n, self.hom(n).inverse()?);
        }
        let dinv = FormalMorphism { source: self.target.clone(), target: self.source.clone(), hom, ext: BTreeMap::new() };
        let nil = self.off_diagonal();
        Some(dinv.sub(&dinv.compose(&nil).compose(&dinv)))
    }

    pub fn direct_sum(&self, other: &FormalMorphism) -> FormalMorphism {
        let (_, i1, i2, _, _) = biproduct(&self.target, &other.target);
        let (_, _, _, p1, p2) = biproduct(&self.source, &other.source);
        i1.compose(self).compose(&p1).add(&i2.compose(other).compose(&p2))
    }

    /// `(self; other) : X -> Y ⊕ Y'`.
    pub fn stack(&self, other: &FormalMorphism) -> FormalMorphism {
        let (_, i1, i2, _, _) = biproduct(&self.target, &other.target);
        i1.compose(self).add(&i2.compose(other))
    }

    /// `(self, other) : X ⊕ X' -> Y`.
    pub fn juxtapose(&self, other: &FormalMorphism) -> FormalMorphism {
        let (_, _, _, p1, p2) = biproduct(&self.source, &other.source);
        self.compose(&p1).add(&other.compose(&p2))
    }

    /// Rebind the endpoints to objects with identical components.
    pub fn with_endpoints(&self, source: &FormalObject, target: &FormalObject) -> FormalMorphism {
        FormalMorphism {
            source: source.clone(),
            target: target.clone(),
            hom: self.hom.iter().map(|(&n, m)| (n, m.with_endpoints(&source.component(n), &target.component(n)))).collect(),
            ext: self.ext.iter().map(|(&n, e)| (n, e.with_endpoints(&source.component(n), &target.component(n - 1)))).collect(),
        }
    }
}

/// `a ⊕ b` with inclusions and projections.
pub fn biproduct(a: &FormalObject, b: &FormalObject) -> (FormalObject, FormalMorphism, FormalMorphism, FormalMorphism, FormalMorphism) {
    let s = a.direct_sum(b);
    let mut i1 = FormalMorphism::zero(a, &s);
    let mut i2 = FormalMorphism::zero(b, &s);
    let mut p1 = FormalMorphism::zero(&s, a);
    let mut p2 = FormalMorphism::zero(&s, b);
    for &n in s.comps.keys() {
        let (_, [ia, ib, pa, pb]) = crate::quiver_rep::biproduct(&a.component(n), &b.component(n));
        let sn = s.component(n);
        let an = a.component(n);
        let bn = b.component(n);
        for (m, slot) in [(ia.with_endpoints(&an, &sn), &mut i1), (ib.with_endpoints(&bn, &sn), &mut i2)] {
            if !m.is_zero() {
                slot.hom.insert(n, m);
            }
        }
        for (m, slot) in [(pa.with_endpoints(&sn, &an), &mut p1), (pb.with_endpoints(&sn, &bn), &mut p2)] {
            if !m.is_zero() {
                slot.hom.insert(n, m);
            }
        }
    }
    (s, i1, i2, p1, p2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartKind {
    Hom,
    Ext,
}

#[derive(Debug)]
struct Block {
    degree: i32,
    kind: PartKind,
    offset: usize,
    he: Rc<HomExt>,
}

impl Block {
    fn len(&self) -> usize {
        match self.kind {
            PartKind::Hom => self.he.hom_dim(),
            PartKind::Ext => self.he.ext_dim(),
        }
    }
}

/// Coordinates on `Hom(X, Y)` in the formal model: degrees ascending, hom
/// coordinates before ext coordinates in each degree.
#[derive(Debug)]
pub struct HomSpace {
    pub source: FormalObject,
    pub target: FormalObject,
    blocks: Vec<Block>,
    dim: usize,
}

impl HomSpace {
    pub fn new(x: &FormalObject, y: &FormalObject) -> HomSpace {
        let mut blocks = Vec::new();
        let mut off = 0;
        for (&n, a) in &x.comps {
            for (kind, b) in [(PartKind::Hom, y.comps.get(&n)), (PartKind::Ext, y.comps.get(&(n - 1)))] {
                if let Some(b) = b {
                    let he = hom_ext(a, b);
                    let blk = Block { degree: n, kind, offset: off, he };
                    off += blk.len();
                    if blk.len() > 0 {
                        blocks.push(blk);
                    }
                }
            }
        }
        HomSpace { source: x.clone(), target: y.clone(), blocks, dim: off }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total hom and ext contributions.
    pub fn split_dims(&self) -> (usize, usize) {
        let h = self.blocks.iter().filter(|b| b.kind == PartKind::Hom).map(Block::len).sum();
        (h, self.dim - h)
    }

    pub fn coords(&self, f: &FormalMorphism) -> Vec<u32> {
        let mut out = vec![0; self.dim];
        for b in &self.blocks {
            let c = match b.kind {
                PartKind::Hom => match f.hom.get(&b.degree) {
                    Some(m) => b.he.hom_coords(m),
                    None => continue,
                },
                PartKind::Ext => match f.ext.get(&b.degree) {
                    Some(e) => b.he.ext_chart().coords(&e.raw()),
                    None => continue,
                },
            };
            out[b.offset..b.offset + c.len()].copy_from_slice(&c);
        }
        out
    }

    pub fn from_coords(&self, c: &[u32]) -> FormalMorphism {
        let mut m = FormalMorphism::zero(&self.source, &self.target);
        for b in &self.blocks {
            let part = &c[b.offset..b.offset + b.len()];
            if part.iter().all(|&x| x == 0) {
                continue;
            }
            match b.kind {
                PartKind::Hom => {
                    let h = b.he.hom_from_coords(part);
                    m.hom.insert(b.degree, h.with_endpoints(&self.source.component(b.degree), &self.target.component(b.degree)));
                }
                PartKind::Ext => {
                    let e = b.he.ext_from_coords(part);
                    m.ext.insert(b.degree, e.with_endpoints(&self.source.component(b.degree), &self.target.component(b.degree - 1)));
                }
            }
        }
        m
    }

    pub fn basis(&self) -> Vec<FormalMorphism> {
        (0..self.dim)
            .map(|k| {
                let mut e = vec![0; self.dim];
                e[k] = 1;
                self.from_coords(&e)
            })
            .collect()
    }
}

pub fn hom_formal_dim(x: &FormalObject, y: &FormalObject) -> usize {
    HomSpace::new(x, y).dim()
}

/// Matrix of `φ ↦ f ∘ φ` from `Hom(u, source f)` to `Hom(u, target f)`.
pub fn postcompose_matrix(u: &FormalObject, f: &FormalMorphism) -> Matrix {
    let dom = HomSpace::new(u, &f.source);
    let cod = HomSpace::new(u, &f.target);
    let cols: Vec<Vec<u32>> = dom.basis().iter().map(|b| cod.coords(&f.compose(b))).collect();
    Matrix::from_columns(f.prime(), cod.dim(), &cols)
}

/// Matrix of `φ ↦ φ ∘ f` from `Hom(target f, w)` to `Hom(source f, w)`.
pub fn precompose_matrix(f: &FormalMorphism, w: &FormalObject) -> Matrix {
    let dom = HomSpace::new(&f.target, w);
    let cod = HomSpace::new(&f.source, w);
    let cols: Vec<Vec<u32>> = dom.basis().iter().map(|b| cod.coords(&b.compose(f))).collect();
    Matrix::from_columns(f.prime(), cod.dim(), &cols)
}

/// `X -f-> Y -g-> Z -h-> X[1]`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub f: FormalMorphism,
    pub g: FormalMorphism,
    pub h: FormalMorphism,
}

impl Triangle {
    pub fn new(f: FormalMorphism, g: FormalMorphism, h: FormalMorphism) -> Result<Self> {
        if !f.target.same_components(&g.source) || !g.target.same_components(&h.source) || !h.target.same_components(&f.source.shift(1)) {
            return Err(Error::Endpoint("triangle maps do not chain".into()));
        }
        Ok(Triangle { f, g, h })
    }

    pub fn x(&self) -> &FormalObject {
        &self.f.source
    }

    pub fn y(&self) -> &FormalObject {
        &self.f.target
    }

    pub fn z(&self) -> &FormalObject {
        &self.g.target
    }

    /// `0 -> X -id-> X -> 0`.
    pub fn trivial(x: &FormalObject) -> Triangle {
        let zero = FormalObject::zero(x.quiver.clone(), x.p);
        Triangle {
            f: FormalMorphism::zero(&zero, x),
            g: FormalMorphism::identity(x),
            h: FormalMorphism::zero(x, &zero),
        }
    }

    /// `X -id-> X -> 0 -> X[1]`.
    pub fn identity_triangle(x: &FormalObject) -> Triangle {
        let zero = FormalObject::zero(x.quiver.clone(), x.p);
        Triangle {
            f: FormalMorphism::identity(x),
            g: FormalMorphism::zero(x, &zero),
            h: FormalMorphism::zero(&zero, &x.shift(1)),
        }
    }

    /// `(-g, -h, -f[1])`.
    pub fn rotate(&self) -> Triangle {
        Triangle { f: self.g.neg(), g: self.h.neg(), h: self.f.shift(1).neg() }
    }

    /// `(-h[-1], -f, -g)`.
    pub fn rotate_back(&self) -> Triangle {
        Triangle { f: self.h.shift(-1).neg(), g: self.f.neg(), h: self.g.neg() }
    }

    pub fn direct_sum(&self, other: &Triangle) -> Triangle {
        let f = self.f.direct_sum(&other.f);
        let g = self.g.direct_sum(&other.g);
        let h = self.h.direct_sum(&other.h).with_endpoints(&g.target, &f.source.shift(1));
        Triangle { f, g, h }
    }

    /// Degree window spanned by the three objects, widened by one on each side.
    pub fn default_window(&self) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for o in [self.x(), self.y(), self.z()] {
            if let (Some(a), Some(b)) = (o.min_degree(), o.max_degree()) {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        if lo > hi {
            (0, 0)
        } else {
            (lo - 1, hi + 1)
        }
    }

    pub fn shift(&self, k: i32) -> Triangle {
        let s = if k.rem_euclid(2) == 0 { 1 } else { linalg::neg(self.f.prime(), 1) };
        Triangle { f: self.f.shift(k).scale(s), g: self.g.shift(k).scale(s), h: self.h.shift(k).scale(s) }
    }
}

/// Outcome of an exactness check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactReport {
    pub passed: bool,
    pub tested: usize,
    pub failures: Vec<String>,
}

/// Test objects `I[-k]` for an exactness check.
pub fn test_family(indecs: &[Representation], window: (i32, i32)) -> Vec<FormalObject> {
    (window.0..=window.1).flat_map(|k| indecs.iter().map(move |i| FormalObject::stalk(i, k))).collect()
}

/// Exactness via the long exact Hom sequences of all `U = I[-k]`.
pub fn is_exact(t: &Triangle, indecs: &[Representation], window: Option<(i32, i32)>) -> ExactReport {
    let window = window.unwrap_or_else(|| t.default_window());
    let mut failures = Vec::new();
    if !t.g.compose(&t.f).is_zero() {
        failures.push("g∘f ≠ 0".to_string());
    }
    if !t.h.compose(&t.g).is_zero() {
        failures.push("h∘g ≠ 0".to_string());
    }
    let f1 = t.f.shift(1);
    if !f1.compose(&t.h).is_zero() {
        failures.push("f[1]∘h ≠ 0".to_string());
    }
    let family = test_family(indecs, window);
    if failures.is_empty() {
        for u in &family {
            let mf = postcompose_matrix(u, &t.f);
            let mg = postcompose_matrix(u, &t.g);
            let mh = postcompose_matrix(u, &t.h);
            let mf1 = postcompose_matrix(u, &f1);
            let (rf, rg, rh, rf1) = (mf.rank(), mg.rank(), mh.rank(), mf1.rank());
            let label = || {
                let (n, x) = u.comps.iter().next().expect("stalk");
                format!("U = {:?}[{}]", x.dims(), -n)
            };
            if rf + rg != mg.cols() {
                failures.push(format!("not exact at Y for {}", label()));
            }
            if rg + rh != mh.cols() {
                failures.push(format!("not exact at Z for {}", label()));
            }
            if rh + rf1 != mf1.cols() {
                failures.push(format!("not exact at X[1] for {}", label()));
            }
        }
    }
    ExactReport { passed: failures.is_empty(), tested: family.len(), failures }
}

/// Solution set `z0 + span(kernel)` of the TR3 system.
#[derive(Clone, Debug)]
pub struct Tr3Solutions {
    pub particular: FormalMorphism,
    pub kernel: Vec<FormalMorphism>,
}

/// All `z : Z -> Z'` with `z∘g = g'∘y` and `h'∘z = x[1]∘h`.
pub fn tr3_solutions(t: &Triangle, t2: &Triangle, x: &FormalMorphism, y: &FormalMorphism) -> Result<Option<Tr3Solutions>> {
    if y.compose(&t.f) != t2.f.compose(x).with_endpoints(t.x(), t2.y()) {
        return Err(Error::Hypothesis("square y∘f = f'∘x does not commute".into()));
    }
    let space = HomSpace::new(t.z(), t2.z());
    let cod1 = HomSpace::new(t.y(), t2.z());
    let cod2 = HomSpace::new(t.z(), &t2.x().shift(1));
    let p = x.prime();
    let basis = space.basis();
    let c1: Vec<Vec<u32>> = basis.iter().map(|b| cod1.coords(&b.compose(&t.g))).collect();
    let c2: Vec<Vec<u32>> = basis.iter().map(|b| cod2.coords(&t2.h.compose(b))).collect();
    let a = Matrix::from_columns(p, cod1.dim(), &c1).vstack(&Matrix::from_columns(p, cod2.dim(), &c2));
    let mut rhs = cod1.coords(&t2.g.compose(y));
    rhs.extend(cod2.coords(&x.shift(1).compose(&t.h)));
    let Some(sol) = a.solve_vec(&rhs) else {
        return Ok(None);
    };
    let k = a.kernel_basis();
    let kernel = (0..k.cols()).map(|j| space.from_coords(&k.column(j))).collect();
    Ok(Some(Tr3Solutions { particular: space.from_coords(&sol), kernel }))
}

/// The deterministic TR3 completion, or `None` if the system is inconsistent.
pub fn tr3_complete(t: &Triangle, t2: &Triangle, x: &FormalMorphism, y: &FormalMorphism) -> Result<Option<FormalMorphism>> {
    Ok(tr3_solutions(t, t2, x, y)?.map(|s| s.particular))
}

/// Whether `(x, y, z)` is a morphism of triangles `t -> t2`.
pub fn is_triangle_morphism(t: &Triangle, t2: &Triangle, x: &FormalMorphism, y: &FormalMorphism, z: &FormalMorphism) -> bool {
    y.compose(&t.f) == t2.f.compose(x)
        && z.compose(&t.g) == t2.g.compose(y)
        && t2.h.compose(z) == x.shift(1).compose(&t.h)
}

pub fn direct_sum_triangle(t: &Triangle, t2: &Triangle) -> Triangle {
    t.direct_sum(t2)
}

/// For an exact triangle with `h = 0`, an isomorphism `θ : Y -> X ⊕ Z`
/// with `θ∘f` the inclusion and `π_Z∘θ = g`.
pub fn split_exact_normalize(t: &Triangle, indecs: &[Representation]) -> Result<FormalMorphism> {
    if !t.h.is_zero() {
        return Err(Error::Hypothesis("connecting morphism is not zero".into()));
    }
    let rep = is_exact(t, indecs, None);
    if !rep.passed {
        return Err(Error::NotExact(rep.failures.join("; ")));
    }
    let (s, i1, _, _, p2) = biproduct(t.x(), t.z());
    let zm1 = t.z().shift(-1);
    let split = Triangle { f: FormalMorphism::zero(&zm1, t.x()), g: i1, h: p2 };
    let rot = t.rotate_back();
    let rot = Triangle { f: rot.f.neg(), g: rot.g.neg(), h: rot.h.neg() };
    let x = FormalMorphism::identity(&zm1);
    let y = FormalMorphism::identity(t.x());
    let theta = tr3_complete(&rot, &split, &x, &y)?.ok_or_else(|| Error::Inconsistent("no splitting found".into()))?;
    let theta = theta.with_endpoints(t.y(), &s);
    if !theta.is_iso() {
        return Err(Error::Inconsistent("splitting map is not invertible".into()));
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::IndecList;

    fn setup() -> (Arc<Quiver>, IndecList) {
        let q = Arc::new(Quiver::a(2));
        let l = IndecList::new(&q, 101).unwrap();
        (q, l)
    }

    #[test]
    fn ext_composition_vanishes() {
        let (_, l) = setup();
        let (s1, s2) = (&l.reps[0], &l.reps[1]);
        let x = FormalObject::stalk(s1, 0);
        let y = FormalObject::stalk(s2, -1);
        let e = ExtClass::from_coords(s1, s2, &[1]);
        let eps = FormalMorphism::from_ext(&x, &y, 0, e);
        assert!(!eps.is_zero());
        let z = FormalObject::stalk(s1, -1);
        let e2 = FormalMorphism::zero(&y, &z);
        assert!(e2.compose(&eps).is_zero());
        assert_eq!(HomSpace::new(&x, &y).dim(), 1);
    }

    #[test]
    fn pullback_along_epi_kills_class() {
        let (_, l) = setup();
        let (s1, s2, p1) = (&l.reps[0], &l.reps[1], &l.reps[2]);
        let e = ExtClass::from_coords(s1, s2, &[1]);
        let eps = FormalMorphism::from_ext(&FormalObject::stalk(s1, 0), &FormalObject::stalk(s2, -1), 0, e);
        let hs = HomSpace::new(&FormalObject::stalk(p1, 0), &FormalObject::stalk(s1, 0));
        let pi = hs.basis()[0].clone();
        assert!(eps.compose(&pi).is_zero());
    }

    #[test]
    fn trivial_triangles_are_exact() {
        let (_, l) = setup();
        let x = FormalObject::stalk(&l.reps[2], 0).direct_sum(&FormalObject::stalk(&l.reps[0], 1));
        assert!(is_exact(&Triangle::trivial(&x), &l.reps, None).passed);
        assert!(is_exact(&Triangle::identity_triangle(&x), &l.reps, None).passed);
        let bad = Triangle { f: FormalMorphism::identity(&x), g: FormalMorphism::zero(&x, &x), h: FormalMorphism::zero(&x, &x.shift(1)) };
        assert!(!is_exact(&bad, &l.reps, None).passed);
    }

    #[test]
    fn iso_inverse_with_ext_part() {
        let (_, l) = setup();
        let (s1, s2) = (&l.reps[0], &l.reps[1]);
        let x = FormalObject::stalk(s1, 0).direct_sum(&FormalObject::stalk(s2, -1));
        let e = ExtClass::from_coords(s1, s2, &[7]);
        let f = FormalMorphism::identity(&x).add(&FormalMorphism::from_ext(&x, &x, 0, e));
        let g = f.inverse().unwrap();
        assert_eq!(g.compose(&f), FormalMorphism::identity(&x));
        assert_eq!(f.compose(&g), FormalMorphism::identity(&x));
    }

    #[test]
    fn split_triangle_normalizes() {
        let (_, l) = setup();
        let x = FormalObject::stalk(&l.reps[0], 0);
        let z = FormalObject::stalk(&l.reps[2], 1);
        let (s, i1, _, _, p2) = biproduct(&x, &z);
        let t = Triangle { f: i1, g: p2, h: FormalMorphism::zero(&z, &x.shift(1)) };
        let theta = split_exact_normalize(&t, &l.reps).unwrap();
        assert_eq!(theta, FormalMorphism::identity(&s));
    }
}
