use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, QuotientChart};

use super::quiver::Quiver;

/// Generator data of a free (projective) representation `⊕_g P_{v(g)}`.
///
/// The basis of the representation at vertex `j` lists pairs
/// `(generator, path)` for every path from `v(g)` to `j`, generators in
/// order, paths in the order of [`Quiver::paths_from`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBasis {
    pub gens: Vec<usize>,
    pub basis: Vec<Vec<(usize, usize)>>,
}

impl FreeBasis {
    fn new(q: &Quiver, gens: Vec<usize>) -> Self {
        let mut basis = vec![Vec::new(); q.vertex_count()];
        for (g, &v) in gens.iter().enumerate() {
            for (pi, path) in q.paths_from(v).iter().enumerate() {
                basis[path.end].push((g, pi));
            }
        }
        FreeBasis { gens, basis }
    }

    /// Index of generator `g` (as its trivial path) inside the basis at its vertex.
    pub fn generator_position(&self, g: usize) -> usize {
        let v = self.gens[g];
        self.basis[v].iter().position(|&(h, pi)| h == g && pi == 0).expect("trivial path is listed")
    }
}

/// A finite-dimensional representation of a quiver over `F_p`.
#[derive(Clone)]
pub struct Representation {
    quiver: Arc<Quiver>,
    p: u32,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
    free: Option<Arc<FreeBasis>>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.dims == other.dims && self.mats == other.mats && same_quiver(&self.quiver, &other.quiver)
    }
}
impl Eq for Representation {}

impl Hash for Representation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.dims.hash(state);
        self.mats.hash(state);
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)?;
        for (a, m) in self.quiver.arrows().iter().zip(&self.mats) {
            if m.rows() > 0 && m.cols() > 0 {
                write!(f, " {}={:?}", a.label, m.to_signed_rows())?;
            }
        }
        Ok(())
    }
}

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, p: u32, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} dimensions, got {}",
                quiver.vertex_count(),
                dims.len()
            )));
        }
        if mats.len() != quiver.arrows().len() {
            return Err(Error::InvalidRepresentation(format!(
                "expected {} arrow matrices, got {}",
                quiver.arrows().len(),
                mats.len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.prime() != p {
                return Err(Error::InvalidRepresentation(format!("arrow {} over the wrong field", a.label)));
            }
        }
        Ok(Representation { quiver, p, dims, mats, free: None })
    }

    pub(crate) fn new_unchecked(quiver: Arc<Quiver>, p: u32, dims: Vec<usize>, mats: Vec<Matrix>) -> Self {
        debug_assert!(quiver.arrows().iter().zip(&mats).all(|(a, m)| m.shape() == (dims[a.target], dims[a.source])));
        Representation { quiver, p, dims, mats, free: None }
    }

    pub fn zero(quiver: Arc<Quiver>, p: u32) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let mats = quiver.arrows().iter().map(|_| Matrix::zeros(p, 0, 0)).collect();
        Representation { quiver, p, dims, mats, free: None }
    }

    pub fn simple(quiver: Arc<Quiver>, p: u32, v: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[v] = 1;
        let mats = quiver.arrows().iter().map(|a| Matrix::zeros(p, dims[a.target], dims[a.source])).collect();
        Representation { quiver, p, dims, mats, free: None }
    }

    /// The free representation on generators sitting at the given vertices.
    pub fn free(quiver: Arc<Quiver>, p: u32, gens: Vec<usize>) -> Self {
        let fb = FreeBasis::new(&quiver, gens);
        let dims: Vec<usize> = fb.basis.iter().map(Vec::len).collect();
        let mut mats = Vec::with_capacity(quiver.arrows().len());
        for (ai, a) in quiver.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(p, dims[a.target], dims[a.source]);
            for (c, &(g, pi)) in fb.basis[a.source].iter().enumerate() {
                let path = &quiver.paths_from(fb.gens[g])[pi];
                let mut arrows = path.arrows.clone();
                arrows.push(ai);
                let pj = quiver.paths_from(fb.gens[g]).iter().position(|q| q.arrows == arrows).expect("extended path exists");
                let r = fb.basis[a.target].iter().position(|&(h, pk)| h == g && pk == pj).expect("basis lists every path");
                m.set(r, c, 1);
            }
            mats.push(m);
        }
        Representation { quiver, p, dims, mats, free: Some(Arc::new(fb)) }
    }

    /// Indecomposable projective at `v`: paths starting at `v`.
    pub fn projective(quiver: Arc<Quiver>, p: u32, v: usize) -> Self {
        Representation::free(quiver, p, vec![v])
    }

    /// Indecomposable injective at `v`: dual of paths ending at `v`.
    pub fn injective(quiver: Arc<Quiver>, p: u32, v: usize) -> Self {
        // basis at j: paths j -> v; arrow a: i -> j sends path (j ~> v) to its
        // precomposite with a, which is a path i ~> v; dualised that is a map
        // I_i -> I_j given by transposing.
        let n = quiver.vertex_count();
        let basis: Vec<Vec<Vec<usize>>> = (0..n)
            .map(|j| quiver.paths_between(j, v).map(|pth| pth.arrows.clone()).collect())
            .collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mats = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = Matrix::zeros(p, dims[a.target], dims[a.source]);
                for (r, path) in basis[a.target].iter().enumerate() {
                    let mut ext = vec![ai];
                    ext.extend(path);
                    if let Some(c) = basis[a.source].iter().position(|q| *q == ext) {
                        m.set(r, c, 1);
                    }
                }
                m
            })
            .collect();
        Representation { quiver, p, dims, mats, free: None }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn free_basis(&self) -> Option<&Arc<FreeBasis>> {
        self.free.as_ref()
    }

    pub fn same_quiver(&self, other: &Representation) -> bool {
        self.p == other.p && same_quiver(&self.quiver, &other.quiver)
    }

    pub fn check_same_quiver(&self, other: &Representation) -> Result<()> {
        if self.same_quiver(other) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch("representations over different quivers or fields".into()))
        }
    }

    /// Same data attached to another (structurally equal) quiver handle.
    pub fn with_quiver(&self, quiver: Arc<Quiver>) -> Representation {
        Representation { quiver, ..self.clone() }
    }

    /// Matrix of the path action `M_p : M_start -> M_end`.
    pub fn path_matrix(&self, arrows: &[usize], start: usize) -> Matrix {
        let mut m = Matrix::identity(self.p, self.dims[start]);
        for &a in arrows {
            m = self.mats[a].mul(&m);
        }
        m
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert!(self.same_quiver(other), "direct sum over different quivers");
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.block_diag(b)).collect();
        let free = match (&self.free, &other.free) {
            (Some(a), Some(b)) => {
                let off = a.gens.len();
                let mut gens = a.gens.clone();
                gens.extend(&b.gens);
                let basis = a
                    .basis
                    .iter()
                    .zip(&b.basis)
                    .map(|(x, y)| x.iter().copied().chain(y.iter().map(|&(g, pi)| (g + off, pi))).collect())
                    .collect();
                Some(Arc::new(FreeBasis { gens, basis }))
            }
            _ => None,
        };
        Representation { quiver: self.quiver.clone(), p: self.p, dims, mats, free }
    }

    pub fn direct_sum_all<'a>(quiver: &Arc<Quiver>, p: u32, parts: impl IntoIterator<Item = &'a Representation>) -> Representation {
        let mut acc: Option<Representation> = None;
        for r in parts {
            acc = Some(match acc {
                None => r.clone(),
                Some(a) => a.direct_sum(r),
            });
        }
        acc.unwrap_or_else(|| Representation::free(quiver.clone(), p, vec![]))
    }

    /// Subrepresentation spanned vertexwise by the columns of `bases`.
    /// The caller guarantees the spans are stable under the arrows.
    pub fn subrep(&self, bases: &[Matrix]) -> Result<Representation> {
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let mut mats = Vec::with_capacity(self.mats.len());
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let img = self.mats[ai].mul(&bases[a.source]);
            let m = bases[a.target]
                .solve(&img)?
                .ok_or_else(|| Error::InvalidRepresentation(format!("span not stable under arrow {}", a.label)))?;
            mats.push(m);
        }
        Ok(Representation::new_unchecked(self.quiver.clone(), self.p, dims, mats))
    }

    /// Quotient by the subrepresentation spanned by `bases`, with its projection.
    pub fn quotient(&self, bases: &[Matrix]) -> (Representation, RepMorphism) {
        let charts: Vec<QuotientChart> = bases.iter().map(QuotientChart::new).collect();
        let proj: Vec<Matrix> = charts.iter().map(QuotientChart::projection).collect();
        let sect: Vec<Matrix> = charts.iter().map(QuotientChart::section).collect();
        let dims: Vec<usize> = charts.iter().map(QuotientChart::dim).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| proj[a.target].mul(&self.mats[ai]).mul(&sect[a.source]))
            .collect();
        let q = Representation::new_unchecked(self.quiver.clone(), self.p, dims, mats);
        let pi = RepMorphism::new_unchecked(self.clone(), q.clone(), proj);
        (q, pi)
    }

    /// Euler-form check data: dimension vector as a slice.
    pub fn dimension_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }

    /// Vertexwise top: `M_i / Σ_{a: j -> i} im M_a`.
    pub fn top_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| {
                let incoming: Vec<usize> = self.quiver.arrows_in(i).collect();
                if incoming.is_empty() {
                    return self.dims[i];
                }
                let mut span = Matrix::zeros(self.p, self.dims[i], 0);
                for a in incoming {
                    span = span.hstack(&self.mats[a]);
                }
                self.dims[i] - span.rank()
            })
            .collect()
    }

    /// Projective iff the dimension equals that of its projective cover.
    pub fn is_projective(&self) -> bool {
        let top = self.top_dims();
        let cover: usize = top
            .iter()
            .enumerate()
            .map(|(i, &m)| m * self.quiver.paths_from(i).len())
            .sum();
        cover == self.total_dim()
    }

    /// An isomorphism from a free representation onto `self`, if projective.
    pub fn as_free(&self) -> Option<RepMorphism> {
        if !self.is_projective() {
            return None;
        }
        let mut gens = Vec::new();
        let mut images = Vec::new();
        for i in 0..self.dims.len() {
            let mut span = Matrix::zeros(self.p, self.dims[i], 0);
            for a in self.quiver.arrows_in(i) {
                span = span.hstack(&self.mats[a]);
            }
            let chart = QuotientChart::new(&span);
            for k in 0..chart.dim() {
                let mut e = vec![0; chart.dim()];
                e[k] = 1;
                gens.push(i);
                images.push(chart.lift(&e));
            }
        }
        let free = Representation::free(self.quiver.clone(), self.p, gens);
        let iso = RepMorphism::from_generator_images(&free, self, &images);
        iso.is_iso().then_some(iso)
    }
}

/// A morphism of representations: one matrix per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl fmt::Debug for RepMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom{:?}->{:?}", self.source.dims, self.target.dims)?;
        for (v, m) in self.maps.iter().enumerate() {
            if m.rows() > 0 && m.cols() > 0 {
                write!(f, " {}:{:?}", v + 1, m.to_signed_rows())?;
            }
        }
        Ok(())
    }
}

impl RepMorphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self> {
        source.check_same_quiver(&target)?;
        if maps.len() != source.dims.len() {
            return Err(Error::NotAMorphism("one matrix per vertex required".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            if m.shape() != (target.dims[v], source.dims[v]) {
                return Err(Error::NotAMorphism(format!("vertex {} has the wrong shape", v + 1)));
            }
        }
        for (ai, a) in source.quiver.arrows().iter().enumerate() {
            let lhs = maps[a.target].mul(&source.mats[ai]);
            let rhs = target.mats[ai].mul(&maps[a.source]);
            if lhs != rhs {
                return Err(Error::NotAMorphism(format!("square at arrow {} does not commute", a.label)));
            }
        }
        Ok(RepMorphism { source, target, maps })
    }

    pub(crate) fn new_unchecked(source: Representation, target: Representation, maps: Vec<Matrix>) -> Self {
        debug_assert!(maps.iter().enumerate().all(|(v, m)| m.shape() == (target.dims[v], source.dims[v])));
        RepMorphism { source, target, maps }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let maps = (0..source.dims.len()).map(|v| Matrix::zeros(source.p, target.dims[v], source.dims[v])).collect();
        RepMorphism { source: source.clone(), target: target.clone(), maps }
    }

    pub fn identity(x: &Representation) -> Self {
        let maps = x.dims.iter().map(|&d| Matrix::identity(x.p, d)).collect();
        RepMorphism { source: x.clone(), target: x.clone(), maps }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    pub fn prime(&self) -> u32 {
        self.source.p
    }

    pub fn is_valid(&self) -> bool {
        RepMorphism::new(self.source.clone(), self.target.clone(), self.maps.clone()).is_ok()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &RepMorphism) -> RepMorphism {
        assert_eq!(f.target.dims, self.source.dims, "composition endpoints differ");
        let maps = self.maps.iter().zip(&f.maps).map(|(g, f)| g.mul(f)).collect();
        RepMorphism { source: f.source.clone(), target: self.target.clone(), maps }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn sub(&self, other: &RepMorphism) -> RepMorphism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RepMorphism {
        self.scale(linalg::neg(self.prime(), 1))
    }

    pub fn scale(&self, s: u32) -> RepMorphism {
        let maps = self.maps.iter().map(|m| m.scale(s)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        let maps = self.maps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(RepMorphism { source: self.target.clone(), target: self.source.clone(), maps })
    }

    /// Rebind the endpoints (same dimensions) without changing the matrices.
    pub fn with_endpoints(&self, source: &Representation, target: &Representation) -> RepMorphism {
        assert_eq!(source.dims, self.source.dims);
        assert_eq!(target.dims, self.target.dims);
        RepMorphism { source: source.clone(), target: target.clone(), maps: self.maps.clone() }
    }

    /// Flattened entries, vertex by vertex, row-major.
    pub fn raw(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn from_raw(source: &Representation, target: &Representation, raw: &[u32]) -> RepMorphism {
        let mut off = 0;
        let maps = (0..source.dims.len())
            .map(|v| {
                let (r, c) = (target.dims[v], source.dims[v]);
                let m = Matrix::from_vec(source.p, r, c, raw[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        assert_eq!(off, raw.len(), "raw vector has the wrong length");
        RepMorphism { source: source.clone(), target: target.clone(), maps }
    }

    /// The unique morphism out of a free representation with the given
    /// generator images (`images[g]` lives in `target` at vertex `v(g)`).
    pub fn from_generator_images(source: &Representation, target: &Representation, images: &[Vec<u32>]) -> RepMorphism {
        let fb = source.free.as_ref().expect("source must be free");
        let q = &source.quiver;
        let maps = (0..source.dims.len())
            .map(|j| {
                let mut m = Matrix::zeros(source.p, target.dims[j], source.dims[j]);
                for (c, &(g, pi)) in fb.basis[j].iter().enumerate() {
                    let path = &q.paths_from(fb.gens[g])[pi];
                    let mut v = images[g].clone();
                    for &a in &path.arrows {
                        v = target.mats[a].mul_vec(&v);
                    }
                    for (r, x) in v.into_iter().enumerate() {
                        m.set(r, c, x);
                    }
                }
                m
            })
            .collect();
        RepMorphism { source: source.clone(), target: target.clone(), maps }
    }

    /// Images of the generators of a free source.
    pub fn generator_images(&self) -> Vec<Vec<u32>> {
        let fb = self.source.free.as_ref().expect("source must be free");
        (0..fb.gens.len())
            .map(|g| self.maps[fb.gens[g]].column(fb.generator_position(g)))
            .collect()
    }

    /// Concatenated generator images of a free source.
    pub fn generator_coords(&self) -> Vec<u32> {
        self.generator_images().concat()
    }

    /// `f ⊕ g : X ⊕ X' -> Y ⊕ Y'`.
    pub fn direct_sum(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        RepMorphism {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            maps,
        }
    }

    /// `(f; g) : X -> Y ⊕ Y'`.
    pub fn stack(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.vstack(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.direct_sum(&other.target), maps }
    }

    /// `(f, g) : X ⊕ X' -> Y`.
    pub fn juxtapose(&self, other: &RepMorphism) -> RepMorphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.hstack(b)).collect();
        RepMorphism { source: self.source.direct_sum(&other.source), target: self.target.clone(), maps }
    }
}

/// Canonical inclusions and projections of `a ⊕ b`.
pub fn biproduct(a: &Representation, b: &Representation) -> (Representation, [RepMorphism; 4]) {
    let s = a.direct_sum(b);
    let p = a.p;
    let mut ia = Vec::new();
    let mut ib = Vec::new();
    let mut pa = Vec::new();
    let mut pb = Vec::new();
    for v in 0..a.dims.len() {
        let (da, db) = (a.dims[v], b.dims[v]);
        ia.push(Matrix::identity(p, da).vstack(&Matrix::zeros(p, db, da)));
        ib.push(Matrix::zeros(p, da, db).vstack(&Matrix::identity(p, db)));
        pa.push(Matrix::identity(p, da).hstack(&Matrix::zeros(p, da, db)));
        pb.push(Matrix::zeros(p, db, da).hstack(&Matrix::identity(p, db)));
    }
    let maps = [
        RepMorphism::new_unchecked(a.clone(), s.clone(), ia),
        RepMorphism::new_unchecked(b.clone(), s.clone(), ib),
        RepMorphism::new_unchecked(s.clone(), a.clone(), pa),
        RepMorphism::new_unchecked(s.clone(), b.clone(), pb),
    ];
    (s, maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::a(2))
    }

    #[test]
    fn projectives_and_injectives_of_a2() {
        let q = a2();
        assert_eq!(Representation::projective(q.clone(), 101, 0).dims(), &[1, 1]);
        assert_eq!(Representation::projective(q.clone(), 101, 1).dims(), &[0, 1]);
        assert_eq!(Representation::injective(q.clone(), 101, 0).dims(), &[1, 0]);
        assert_eq!(Representation::injective(q.clone(), 101, 1).dims(), &[1, 1]);
        let p1 = Representation::projective(q.clone(), 101, 0);
        assert_eq!(p1.mat(0), &Matrix::identity(101, 1));
        assert!(p1.is_projective());
        assert!(!Representation::simple(q, 101, 0).is_projective());
    }

    #[test]
    fn morphism_validation() {
        let q = a2();
        let p1 = Representation::projective(q.clone(), 101, 0);
        let s1 = Representation::simple(q.clone(), 101, 0);
        let good = RepMorphism::new(p1.clone(), s1.clone(), vec![Matrix::identity(101, 1), Matrix::zeros(101, 0, 1)]);
        assert!(good.is_ok());
        let s2 = Representation::simple(q, 101, 1);
        let bad = RepMorphism::new(s2.clone(), p1.clone(), vec![Matrix::zeros(101, 1, 0), Matrix::identity(101, 1)]);
        assert!(bad.is_ok(), "S2 -> P1 is the inclusion of the socle");
        let bad = RepMorphism::new(s1, p1, vec![Matrix::identity(101, 1), Matrix::zeros(101, 1, 0)]);
        assert!(matches!(bad, Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn free_generator_images_roundtrip() {
        let q = Arc::new(Quiver::a(3));
        let f = Representation::free(q.clone(), 101, vec![0, 1]);
        let target = Representation::projective(q, 101, 0);
        let imgs = vec![vec![5], vec![7]];
        let m = RepMorphism::from_generator_images(&f, &target, &imgs);
        assert!(m.is_valid());
        assert_eq!(m.generator_images(), imgs);
    }

    #[test]
    fn as_free_detects_projectives() {
        let q = a2();
        let x = Representation::projective(q.clone(), 101, 0).direct_sum(&Representation::projective(q.clone(), 101, 1));
        let iso = x.as_free().unwrap();
        assert!(iso.is_iso());
        assert!(Representation::simple(q, 101, 0).as_free().is_none());
    }
}
