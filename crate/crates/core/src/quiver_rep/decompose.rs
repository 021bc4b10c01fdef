use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;

use super::homext::hom_ext;
use super::rep::{RepMorphism, Representation};

/// Retries per summand before it is declared indecomposable.
pub const DEFAULT_RETRIES: usize = 64;

/// An indecomposable summand `S` of `X` with `inclusion : S -> X` and
/// `projection : X -> S`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Representation,
    pub inclusion: RepMorphism,
    pub projection: RepMorphism,
}

fn random_element(basis: &[RepMorphism], rng: &mut ChaCha8Rng) -> RepMorphism {
    let p = basis[0].prime();
    let mut acc = basis[0].scale(rng.gen_range(0..p));
    for b in &basis[1..] {
        acc = acc.add(&b.scale(rng.gen_range(0..p)));
    }
    acc
}

/// Try to split `x` by the Fitting decomposition of `φ - λ`.
fn fitting_split(x: &Representation, phi: &RepMorphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let p = x.prime();
    let n = x.total_dim();
    let mut candidates: Vec<u32> = Vec::new();
    for lambda in 0..p {
        let singular = phi.maps().iter().any(|m| {
            m.rows() > 0 && !m.sub(&Matrix::identity(p, m.rows()).scale(lambda)).is_invertible()
        });
        if singular {
            candidates.push(lambda);
        }
    }
    for lambda in candidates {
        let powered: Vec<Matrix> = phi
            .maps()
            .iter()
            .map(|m| m.sub(&Matrix::identity(p, m.rows()).scale(lambda)).pow(n))
            .collect();
        let ker: Vec<Matrix> = powered.iter().map(Matrix::kernel_basis).collect();
        let img: Vec<Matrix> = powered.iter().map(Matrix::column_space).collect();
        let kd: usize = ker.iter().map(Matrix::cols).sum();
        let id: usize = img.iter().map(Matrix::cols).sum();
        if kd > 0 && id > 0 {
            return Some((ker, img));
        }
    }
    None
}

/// Split `x` into a list of (summand, inclusion basis per vertex).
fn split_rec(x: &Representation, incl: Vec<Matrix>, rng: &mut ChaCha8Rng, retries: usize, out: &mut Vec<(Representation, Vec<Matrix>)>) {
    if x.is_zero() {
        return;
    }
    let he = hom_ext(x, x);
    if he.hom_dim() <= 1 {
        out.push((x.clone(), incl));
        return;
    }
    let basis = he.hom_basis();
    for _ in 0..retries {
        let phi = random_element(&basis, rng);
        if let Some((ker, img)) = fitting_split(x, &phi) {
            let k = x.subrep(&ker).expect("generalized kernel is a subrepresentation");
            let i = x.subrep(&img).expect("generalized image is a subrepresentation");
            let kin: Vec<Matrix> = incl.iter().zip(&ker).map(|(a, b)| a.mul(b)).collect();
            let iin: Vec<Matrix> = incl.iter().zip(&img).map(|(a, b)| a.mul(b)).collect();
            split_rec(&k, kin, rng, retries, out);
            split_rec(&i, iin, rng, retries, out);
            return;
        }
    }
    out.push((x.clone(), incl));
}

/// Decompose `x` into indecomposable summands, deterministically for a seed.
/// Summands are ordered by dimension vector.
pub fn decompose_rep(x: &Representation, seed: u64) -> Vec<Summand> {
    decompose_rep_with(x, seed, DEFAULT_RETRIES)
}

pub fn decompose_rep_with(x: &Representation, seed: u64, retries: usize) -> Vec<Summand> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = x.prime();
    let incl: Vec<Matrix> = x.dims().iter().map(|&d| Matrix::identity(p, d)).collect();
    let mut parts = Vec::new();
    split_rec(x, incl, &mut rng, retries, &mut parts);
    parts.sort_by(|a, b| a.0.dims().cmp(b.0.dims()));
    // projections from the inverse of the block matrix of inclusions
    let nv = x.dims().len();
    let mut inverses = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut all = Matrix::zeros(p, x.dim(v), 0);
        for (_, inc) in &parts {
            all = all.hstack(&inc[v]);
        }
        inverses.push(all.inverse().expect("summands span the representation"));
    }
    let mut offsets = vec![0; nv];
    parts
        .into_iter()
        .map(|(rep, inc)| {
            let proj: Vec<Matrix> = (0..nv)
                .map(|v| {
                    let m = inverses[v].block(offsets[v], 0, rep.dim(v), x.dim(v));
                    offsets[v] += rep.dim(v);
                    m
                })
                .collect();
            Summand {
                inclusion: RepMorphism::new_unchecked(rep.clone(), x.clone(), inc),
                projection: RepMorphism::new_unchecked(x.clone(), rep.clone(), proj),
                rep,
            }
        })
        .collect()
}

/// Whether `x` is indecomposable (as certified by [`decompose_rep`]).
pub fn is_indecomposable(x: &Representation, seed: u64) -> bool {
    !x.is_zero() && decompose_rep(x, seed).len() == 1
}

/// Search for an isomorphism `x -> y` among random elements of `Hom(x, y)`.
pub fn find_iso(x: &Representation, y: &Representation, seed: u64) -> Option<RepMorphism> {
    if x.dims() != y.dims() {
        return None;
    }
    if x.is_zero() {
        return Some(RepMorphism::zero(x, y));
    }
    let he = hom_ext(x, y);
    if he.hom_dim() == 0 {
        return None;
    }
    let basis = he.hom_basis();
    if basis.len() == 1 {
        return basis[0].is_iso().then(|| basis[0].clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RETRIES {
        let f = random_element(&basis, &mut rng);
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

/// Isomorphism test for representations.
pub fn rep_iso(x: &Representation, y: &Representation) -> bool {
    find_iso(x, y, 0x5eed).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::homext::{extension_middle, ExtClass};
    use crate::quiver_rep::quiver::Quiver;
    use std::sync::Arc;

    fn check_sum(x: &Representation, parts: &[Summand]) {
        let mut acc = RepMorphism::zero(x, x);
        for s in parts {
            assert!(s.inclusion.is_valid() && s.projection.is_valid());
            acc = acc.add(&s.inclusion.compose(&s.projection));
        }
        assert_eq!(acc, RepMorphism::identity(x));
    }

    #[test]
    fn decomposition_examples() {
        let q = Arc::new(Quiver::a(2));
        let p1 = Representation::projective(q.clone(), 101, 0);
        let d = decompose_rep(&p1, 1);
        assert_eq!(d.len(), 1);
        let s1 = Representation::simple(q.clone(), 101, 0);
        let s2 = Representation::simple(q.clone(), 101, 1);
        let x = s1.direct_sum(&s2);
        let d = decompose_rep(&x, 1);
        assert_eq!(d.len(), 2);
        check_sum(&x, &d);
        let e = ExtClass::from_coords(&s1, &s2, &[1]);
        let (m, _, _) = extension_middle(&e);
        let d = decompose_rep(&m, 3);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rep.dims(), &[1, 1]);
    }

    #[test]
    fn decomposes_isotypic_sums() {
        let q = Arc::new(Quiver::d(4));
        let p = Representation::projective(q.clone(), 101, 0);
        let i = Representation::injective(q.clone(), 101, 2);
        let x = p.direct_sum(&p).direct_sum(&i).direct_sum(&p);
        let d = decompose_rep(&x, 9);
        assert_eq!(d.len(), 4);
        check_sum(&x, &d);
        assert!(rep_iso(&d[0].rep, &p) || rep_iso(&d[0].rep, &i));
    }

    #[test]
    fn iso_search() {
        let q = Arc::new(Quiver::a(2));
        let s1 = Representation::simple(q.clone(), 101, 0);
        let s2 = Representation::simple(q.clone(), 101, 1);
        let p1 = Representation::projective(q, 101, 0);
        assert!(!rep_iso(&s1.direct_sum(&s2), &p1));
        assert!(rep_iso(&s1.direct_sum(&s2), &s2.direct_sum(&s1)));
    }
}
