use crate::linalg;

use super::rep::{FreeBasis, RepMorphism, Representation};

/// The standard projective resolution `0 -> P¹ -∂-> P⁰ -ε-> M -> 0` with
/// `P⁰ = ⊕_i P_i ⊗ M_i` and `P¹ = ⊕_{a: i -> j} P_j ⊗ M_i`.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    pub p1: Representation,
    pub p0: Representation,
    pub boundary: RepMorphism,
    pub augmentation: RepMorphism,
}

fn vertex_offsets(m: &Representation) -> Vec<usize> {
    let mut off = vec![0];
    for &d in m.dims() {
        off.push(off.last().unwrap() + d);
    }
    off
}

fn arrow_offsets(m: &Representation) -> Vec<usize> {
    let mut off = vec![0];
    for a in m.quiver().arrows() {
        off.push(off.last().unwrap() + m.dim(a.source));
    }
    off
}

/// Generator `(i, k)` of `P⁰(M)`, indexed vertex by vertex.
pub fn p0(m: &Representation) -> Representation {
    let gens = (0..m.dims().len()).flat_map(|i| std::iter::repeat_n(i, m.dim(i))).collect();
    Representation::free(m.quiver().clone(), m.prime(), gens)
}

/// Generator `(a, k)` of `P¹(M)` sits at `t(a)`, indexed arrow by arrow.
pub fn p1(m: &Representation) -> Representation {
    let gens = m
        .quiver()
        .arrows()
        .iter()
        .flat_map(|a| std::iter::repeat_n(a.target, m.dim(a.source)))
        .collect();
    Representation::free(m.quiver().clone(), m.prime(), gens)
}

fn position(fb: &FreeBasis, vertex: usize, g: usize, pi: usize) -> usize {
    fb.basis[vertex].iter().position(|&(h, pj)| h == g && pj == pi).expect("basis element exists")
}

pub fn standard_resolution(m: &Representation) -> StandardResolution {
    let q = m.quiver().clone();
    let p = m.prime();
    let r0 = p0(m);
    let r1 = p1(m);
    let fb0 = r0.free_basis().expect("free").clone();
    let voff = vertex_offsets(m);
    let mut images = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let j = a.target;
        let pa = q.paths_from(a.source).iter().position(|pth| pth.arrows == [ai]).expect("arrow is a path");
        for k in 0..m.dim(a.source) {
            let mut v = vec![0; r0.dim(j)];
            v[position(&fb0, j, voff[a.source] + k, pa)] = 1;
            for l in 0..m.dim(j) {
                let c = m.mat(ai).get(l, k);
                if c != 0 {
                    let idx = position(&fb0, j, voff[j] + l, 0);
                    v[idx] = linalg::sub(p, v[idx], c);
                }
            }
            images.push(v);
        }
    }
    let boundary = RepMorphism::from_generator_images(&r1, &r0, &images);
    let aug_images: Vec<Vec<u32>> = (0..m.dims().len())
        .flat_map(|i| {
            (0..m.dim(i)).map(move |k| {
                let mut e = vec![0; m.dim(i)];
                e[k] = 1;
                e
            })
        })
        .collect();
    let augmentation = RepMorphism::from_generator_images(&r0, m, &aug_images);
    StandardResolution { p1: r1, p0: r0, boundary, augmentation }
}

/// `P⁰(f) : P⁰(M) -> P⁰(N)`.
pub fn p0_map(f: &RepMorphism, src: &Representation, dst: &Representation) -> RepMorphism {
    let m = f.source();
    let n = f.target();
    let noff = vertex_offsets(n);
    let images: Vec<Vec<u32>> = (0..m.dims().len())
        .flat_map(|i| {
            let noff = &noff;
            (0..m.dim(i)).map(move |k| {
                let fb = dst.free_basis().expect("free");
                let mut v = vec![0; dst.dim(i)];
                for l in 0..n.dim(i) {
                    let c = f.map(i).get(l, k);
                    if c != 0 {
                        v[position(fb, i, noff[i] + l, 0)] = c;
                    }
                }
                v
            })
        })
        .collect();
    RepMorphism::from_generator_images(src, dst, &images)
}

/// `P¹(f) : P¹(M) -> P¹(N)`.
pub fn p1_map(f: &RepMorphism, src: &Representation, dst: &Representation) -> RepMorphism {
    let m = f.source();
    let n = f.target();
    let q = m.quiver();
    let noff = arrow_offsets(n);
    let fb = dst.free_basis().expect("free");
    let mut images = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        for k in 0..m.dim(a.source) {
            let mut v = vec![0; dst.dim(a.target)];
            for l in 0..n.dim(a.source) {
                let c = f.map(a.source).get(l, k);
                if c != 0 {
                    v[position(fb, a.target, noff[ai] + l, 0)] = c;
                }
            }
            images.push(v);
        }
    }
    RepMorphism::from_generator_images(src, dst, &images)
}

/// Index of generator `(i, k)` in `P⁰(M)`.
pub fn p0_generator(m: &Representation, i: usize, k: usize) -> usize {
    vertex_offsets(m)[i] + k
}

/// Index of generator `(a, k)` in `P¹(M)`.
pub fn p1_generator(m: &Representation, a: usize, k: usize) -> usize {
    arrow_offsets(m)[a] + k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::factor::exact_at;
    use crate::quiver_rep::quiver::Quiver;
    use std::sync::Arc;

    fn check(m: &Representation) {
        let r = standard_resolution(m);
        assert!(r.boundary.is_valid());
        assert!(r.augmentation.is_valid());
        assert!(r.boundary.is_mono());
        assert!(r.augmentation.is_epi());
        assert!(exact_at(&r.boundary, &r.augmentation));
    }

    #[test]
    fn resolutions_are_exact() {
        for q in [Quiver::a(3), Quiver::d(4), Quiver::kronecker()] {
            let q = Arc::new(q);
            for v in 0..q.vertex_count() {
                check(&Representation::simple(q.clone(), 101, v));
                check(&Representation::injective(q.clone(), 101, v));
                check(&Representation::projective(q.clone(), 101, v));
            }
        }
    }

    #[test]
    fn resolution_maps_commute() {
        let q = Arc::new(Quiver::a(2));
        let p1r = Representation::projective(q.clone(), 101, 0);
        let s1 = Representation::simple(q.clone(), 101, 0);
        let f = RepMorphism::new(p1r.clone(), s1.clone(), vec![linalg::Matrix::identity(101, 1), linalg::Matrix::zeros(101, 0, 1)]).unwrap();
        let rm = standard_resolution(&p1r);
        let rn = standard_resolution(&s1);
        let f0 = p0_map(&f, &rm.p0, &rn.p0);
        let f1 = p1_map(&f, &rm.p1, &rn.p1);
        assert!(f0.is_valid() && f1.is_valid());
        assert_eq!(rn.augmentation.compose(&f0), f.compose(&rm.augmentation));
        assert_eq!(rn.boundary.compose(&f1), f0.compose(&rm.boundary));
    }
}
