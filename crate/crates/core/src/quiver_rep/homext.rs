use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::linalg::{self, kernel_coords, Matrix, QuotientChart};

use super::rep::{RepMorphism, Representation};

/// Hom and Ext¹ between two representations, presented by the map
/// `Φ : ⊕_i Hom(X_i, Y_i) -> ⊕_a Hom(X_{s(a)}, Y_{t(a)})`,
/// `φ ↦ φ_{t(a)} X_a - Y_a φ_{s(a)}`. Hom is its kernel, Ext¹ its cokernel.
#[derive(Debug)]
pub struct HomExt {
    pub source: Representation,
    pub target: Representation,
    phi: Matrix,
    hom_basis: Matrix,
    hom_free: Vec<usize>,
    ext_chart: QuotientChart,
}

const CACHE_LIMIT: usize = 20_000;

thread_local! {
    static CACHE: RefCell<HashMap<(Representation, Representation), Rc<HomExt>>> = RefCell::new(HashMap::new());
}

/// Drop all cached presentations of the current thread.
pub fn clear_cache() {
    CACHE.with(|c| c.borrow_mut().clear());
}

/// Cached presentation of `Hom(x, y)` and `Ext¹(x, y)`.
pub fn hom_ext(x: &Representation, y: &Representation) -> Rc<HomExt> {
    assert!(x.same_quiver(y), "hom/ext between representations of different quivers");
    let key = (x.clone(), y.clone());
    if let Some(h) = CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return h;
    }
    let h = Rc::new(HomExt::compute(x, y));
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() >= CACHE_LIMIT {
            c.clear();
        }
        c.insert(key, h.clone());
    });
    h
}

pub fn hom_dim(x: &Representation, y: &Representation) -> usize {
    hom_ext(x, y).hom_dim()
}

pub fn ext_dim(x: &Representation, y: &Representation) -> usize {
    hom_ext(x, y).ext_dim()
}

fn hom_offsets(x: &Representation, y: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(x.dims().len() + 1);
    let mut acc = 0;
    off.push(0);
    for v in 0..x.dims().len() {
        acc += y.dim(v) * x.dim(v);
        off.push(acc);
    }
    off
}

fn ext_offsets(x: &Representation, y: &Representation) -> Vec<usize> {
    let mut off = vec![0];
    let mut acc = 0;
    for a in x.quiver().arrows() {
        acc += y.dim(a.target) * x.dim(a.source);
        off.push(acc);
    }
    off
}

impl HomExt {
    fn compute(x: &Representation, y: &Representation) -> HomExt {
        let p = x.prime();
        let off0 = hom_offsets(x, y);
        let off1 = ext_offsets(x, y);
        let n0 = *off0.last().unwrap();
        let n1 = *off1.last().unwrap();
        let mut phi = Matrix::zeros(p, n1, n0);
        for (ai, a) in x.quiver().arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let xa = x.mat(ai);
            let ya = y.mat(ai);
            let (ys, yt, xs, xt) = (y.dim(s), y.dim(t), x.dim(s), x.dim(t));
            for r in 0..yt {
                for c in 0..xs {
                    let row = off1[ai] + r * xs + c;
                    // φ_t[r, m] X_a[m, c]
                    for m in 0..xt {
                        let v = xa.get(m, c);
                        if v != 0 {
                            let col = off0[t] + r * xt + m;
                            phi.set(row, col, linalg::add(p, phi.get(row, col), v));
                        }
                    }
                    // - Y_a[r, m] φ_s[m, c]
                    for m in 0..ys {
                        let v = ya.get(r, m);
                        if v != 0 {
                            let col = off0[s] + m * xs + c;
                            phi.set(row, col, linalg::sub(p, phi.get(row, col), v));
                        }
                    }
                }
            }
        }
        let hom_basis = phi.kernel_basis();
        let hom_free = phi.rref().free_columns();
        let ext_chart = QuotientChart::new(&phi);
        HomExt { source: x.clone(), target: y.clone(), phi, hom_basis, hom_free, ext_chart }
    }

    pub fn hom_dim(&self) -> usize {
        self.hom_basis.cols()
    }

    pub fn ext_dim(&self) -> usize {
        self.ext_chart.dim()
    }

    /// The matrix of `Φ`.
    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    /// Columns are raw morphism vectors forming a basis of Hom.
    pub fn hom_basis_matrix(&self) -> &Matrix {
        &self.hom_basis
    }

    pub fn hom_basis(&self) -> Vec<RepMorphism> {
        (0..self.hom_dim())
            .map(|j| RepMorphism::from_raw(&self.source, &self.target, &self.hom_basis.column(j)))
            .collect()
    }

    pub fn hom_from_coords(&self, coords: &[u32]) -> RepMorphism {
        let raw = self.hom_basis.mul_vec(coords);
        RepMorphism::from_raw(&self.source, &self.target, &raw)
    }

    pub fn hom_coords(&self, f: &RepMorphism) -> Vec<u32> {
        kernel_coords(&self.hom_free, &f.raw())
    }

    pub fn ext_chart(&self) -> &QuotientChart {
        &self.ext_chart
    }

    pub fn ext_from_coords(&self, coords: &[u32]) -> ExtClass {
        let raw = self.ext_chart.lift(coords);
        ExtClass::from_raw_unreduced(&self.source, &self.target, &raw)
    }

    pub fn ext_basis(&self) -> Vec<ExtClass> {
        let d = self.ext_dim();
        (0..d)
            .map(|k| {
                let mut e = vec![0; d];
                e[k] = 1;
                self.ext_from_coords(&e)
            })
            .collect()
    }

    /// Raw representative vector length.
    pub fn ext_raw_len(&self) -> usize {
        self.phi.rows()
    }

    pub fn hom_raw_len(&self) -> usize {
        self.phi.cols()
    }
}

/// A class in `Ext¹(source, target)`, stored by its normal-form representative:
/// one matrix `e_a : source_{s(a)} -> target_{t(a)}` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    source: Representation,
    target: Representation,
    reps: Vec<Matrix>,
}

impl ExtClass {
    pub fn zero(source: &Representation, target: &Representation) -> ExtClass {
        let p = source.prime();
        let reps = source
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(p, target.dim(a.target), source.dim(a.source)))
            .collect();
        ExtClass { source: source.clone(), target: target.clone(), reps }
    }

    fn from_raw_unreduced(source: &Representation, target: &Representation, raw: &[u32]) -> ExtClass {
        let p = source.prime();
        let mut off = 0;
        let reps = source
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (target.dim(a.target), source.dim(a.source));
                let m = Matrix::from_vec(p, r, c, raw[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        ExtClass { source: source.clone(), target: target.clone(), reps }
    }

    /// Class of an arbitrary representative vector (arrow by arrow, row-major).
    pub fn from_raw(source: &Representation, target: &Representation, raw: &[u32]) -> ExtClass {
        let he = hom_ext(source, target);
        let nf = he.ext_chart.normal_form(raw);
        ExtClass::from_raw_unreduced(source, target, &nf)
    }

    /// Class of a representative given as one matrix per arrow.
    pub fn from_matrices(source: &Representation, target: &Representation, mats: Vec<Matrix>) -> Result<ExtClass> {
        if mats.len() != source.quiver().arrows().len() {
            return Err(Error::Dimension("one matrix per arrow required".into()));
        }
        for (a, m) in source.quiver().arrows().iter().zip(&mats) {
            if m.shape() != (target.dim(a.target), source.dim(a.source)) {
                return Err(Error::Dimension(format!("extension matrix at arrow {} has the wrong shape", a.label)));
            }
        }
        let raw: Vec<u32> = mats.iter().flat_map(|m| m.data().iter().copied()).collect();
        Ok(ExtClass::from_raw(source, target, &raw))
    }

    pub fn from_coords(source: &Representation, target: &Representation, coords: &[u32]) -> ExtClass {
        hom_ext(source, target).ext_from_coords(coords)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.reps
    }

    pub fn raw(&self) -> Vec<u32> {
        self.reps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn coords(&self) -> Vec<u32> {
        hom_ext(&self.source, &self.target).ext_chart.coords(&self.raw())
    }

    pub fn is_zero(&self) -> bool {
        self.reps.iter().all(Matrix::is_zero)
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        let reps = self.reps.iter().zip(&other.reps).map(|(a, b)| a.add(b)).collect();
        ExtClass { source: self.source.clone(), target: self.target.clone(), reps }
    }

    pub fn scale(&self, s: u32) -> ExtClass {
        let reps = self.reps.iter().map(|m| m.scale(s)).collect();
        ExtClass { source: self.source.clone(), target: self.target.clone(), reps }
    }

    pub fn neg(&self) -> ExtClass {
        self.scale(linalg::neg(self.source.prime(), 1))
    }

    /// `e · θ` for `θ : A' -> A`.
    pub fn pullback(&self, theta: &RepMorphism) -> ExtClass {
        let q = self.source.quiver().clone();
        let raw: Vec<u32> = q
            .arrows()
            .iter()
            .enumerate()
            .flat_map(|(ai, a)| self.reps[ai].mul(theta.map(a.source)).data().to_vec())
            .collect();
        ExtClass::from_raw(theta.source(), &self.target, &raw)
    }

    /// `φ · e` for `φ : B -> B'`.
    pub fn pushout(&self, phi: &RepMorphism) -> ExtClass {
        let q = self.source.quiver().clone();
        let raw: Vec<u32> = q
            .arrows()
            .iter()
            .enumerate()
            .flat_map(|(ai, a)| phi.map(a.target).mul(&self.reps[ai]).data().to_vec())
            .collect();
        ExtClass::from_raw(&self.source, phi.target(), &raw)
    }

    /// Rebind endpoints of equal dimensions (used after relabelling quivers).
    pub fn with_endpoints(&self, source: &Representation, target: &Representation) -> ExtClass {
        ExtClass { source: source.clone(), target: target.clone(), reps: self.reps.clone() }
    }
}

/// The middle term of the extension `0 -> B -> E -> A -> 0` of class `e`,
/// with `E_i = B_i ⊕ A_i` and `E_a = [[B_a, e_a], [0, A_a]]`.
pub fn extension_middle(e: &ExtClass) -> (Representation, RepMorphism, RepMorphism) {
    let a = e.source();
    let b = e.target();
    let p = a.prime();
    let q = a.quiver().clone();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| b.dim(v) + a.dim(v)).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            let top = b.mat(ai).hstack(&e.matrices()[ai]);
            let bottom = Matrix::zeros(p, a.dim(arr.target), b.dim(arr.source)).hstack(a.mat(ai));
            top.vstack(&bottom)
        })
        .collect();
    let m = Representation::new_unchecked(q.clone(), p, dims, mats);
    let iota = (0..q.vertex_count())
        .map(|v| Matrix::identity(p, b.dim(v)).vstack(&Matrix::zeros(p, a.dim(v), b.dim(v))))
        .collect();
    let pi = (0..q.vertex_count())
        .map(|v| Matrix::zeros(p, a.dim(v), b.dim(v)).hstack(&Matrix::identity(p, a.dim(v))))
        .collect();
    let iota = RepMorphism::new_unchecked(b.clone(), m.clone(), iota);
    let pi = RepMorphism::new_unchecked(m.clone(), a.clone(), pi);
    (m, iota, pi)
}

/// Class in `Ext¹(A, B)` of a short exact sequence `0 -> B -ι-> E -π-> A -> 0`.
pub fn ses_class(iota: &RepMorphism, pi: &RepMorphism) -> Result<ExtClass> {
    let b = iota.source();
    let e = iota.target();
    let a = pi.target();
    if pi.source().dims() != e.dims() {
        return Err(Error::Endpoint("ι and π do not compose".into()));
    }
    if !iota.is_mono() || !pi.is_epi() || !pi.compose(iota).is_zero() {
        return Err(Error::NotExact("sequence is not short exact".into()));
    }
    for v in 0..a.dims().len() {
        if b.dim(v) + a.dim(v) != e.dim(v) {
            return Err(Error::NotExact(format!("not exact in the middle at vertex {}", v + 1)));
        }
    }
    let p = a.prime();
    let q = a.quiver().clone();
    let mut tinv = Vec::with_capacity(q.vertex_count());
    let mut t = Vec::with_capacity(q.vertex_count());
    for v in 0..q.vertex_count() {
        let sigma = pi
            .map(v)
            .solve(&Matrix::identity(p, a.dim(v)))?
            .ok_or_else(|| Error::NotExact("π is not surjective".into()))?;
        let tv = iota.map(v).hstack(&sigma);
        tinv.push(tv.inverse().ok_or_else(|| Error::NotExact("sequence is not short exact".into()))?);
        t.push(tv);
    }
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            let conj = tinv[arr.target].mul(e.mat(ai)).mul(&t[arr.source]);
            conj.block(0, b.dim(arr.source), b.dim(arr.target), a.dim(arr.source))
        })
        .collect();
    ExtClass::from_matrices(a, b, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::quiver::Quiver;
    use std::sync::Arc;

    #[test]
    fn a2_hom_ext_table() {
        let q = Arc::new(Quiver::a(2));
        let s1 = Representation::simple(q.clone(), 101, 0);
        let s2 = Representation::simple(q.clone(), 101, 1);
        let p1 = Representation::projective(q.clone(), 101, 0);
        assert_eq!(ext_dim(&s1, &s2), 1);
        assert_eq!(ext_dim(&s2, &s1), 0);
        assert_eq!(hom_dim(&p1, &s1), 1);
        assert_eq!(hom_dim(&s2, &p1), 1);
        assert_eq!(hom_dim(&s1, &p1), 0);
        assert_eq!(ext_dim(&p1, &s2), 0);
    }

    #[test]
    fn extension_roundtrip() {
        let q = Arc::new(Quiver::a(2));
        let s1 = Representation::simple(q.clone(), 101, 0);
        let s2 = Representation::simple(q.clone(), 101, 1);
        let e = ExtClass::from_coords(&s1, &s2, &[1]);
        let (m, i, p) = extension_middle(&e);
        assert_eq!(m.dims(), &[1, 1]);
        assert!(i.is_valid() && p.is_valid());
        assert_eq!(ses_class(&i, &p).unwrap(), e);
        let split = ExtClass::zero(&s1, &s2);
        let (m0, i0, p0) = extension_middle(&split);
        assert_eq!(m0.mat(0), &Matrix::zeros(101, 1, 1));
        assert!(ses_class(&i0, &p0).unwrap().is_zero());
    }

    #[test]
    fn non_exact_sequence_rejected() {
        let q = Arc::new(Quiver::a(2));
        let s1 = Representation::simple(q.clone(), 101, 0);
        let z = RepMorphism::zero(&s1, &s1);
        assert!(matches!(ses_class(&z, &z), Err(Error::NotExact(_))));
    }

    #[test]
    fn euler_form_matches_hom_minus_ext() {
        let q = Arc::new(Quiver::d(4));
        let reps: Vec<Representation> = (0..4)
            .flat_map(|v| {
                [
                    Representation::projective(q.clone(), 101, v),
                    Representation::injective(q.clone(), 101, v),
                    Representation::simple(q.clone(), 101, v),
                ]
            })
            .collect();
        for x in &reps {
            for y in &reps {
                let lhs = hom_dim(x, y) as i64 - ext_dim(x, y) as i64;
                assert_eq!(lhs, q.euler_form(x.dims(), y.dims()));
            }
        }
    }
}
