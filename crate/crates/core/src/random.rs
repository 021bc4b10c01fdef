//! Seeded random objects and morphisms for property checks.

use rand::Rng;

use crate::complexes::{ChainMap, Complex};
use crate::formal::{FormalMorphism, FormalObject, HomSpace};
use crate::linalg::Matrix;
use crate::quiver_rep::{hom_ext, ExtClass, RepMorphism, Representation};

pub use rand_chacha::ChaCha8Rng as Rng8;

pub fn rng(seed: u64) -> Rng8 {
    use rand::SeedableRng;
    Rng8::seed_from_u64(seed)
}

fn combo(p: u32, n: usize, rng: &mut impl Rng) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

/// Seed for trial `i` of a run with master seed `seed`.
pub fn trial_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i.wrapping_mul(0xbf58_476d_1ce4_e5b9)) ^ i
}

/// A uniformly random element of `Hom(x, y)`.
pub fn rep_morphism(x: &Representation, y: &Representation, rng: &mut impl Rng) -> RepMorphism {
    let he = hom_ext(x, y);
    he.hom_from_coords(&combo(x.prime(), he.hom_dim(), rng))
}

/// A uniformly random element of `Ext¹(x, y)`.
pub fn ext_class(x: &Representation, y: &Representation, rng: &mut impl Rng) -> ExtClass {
    let he = hom_ext(x, y);
    he.ext_from_coords(&combo(x.prime(), he.ext_dim(), rng))
}

/// Direct sum of `1..=max_summands` indecomposables from `pool`.
pub fn rep(pool: &[Representation], max_summands: usize, rng: &mut impl Rng) -> Representation {
    let k = rng.gen_range(1..=max_summands.max(1));
    let mut acc = pool[rng.gen_range(0..pool.len())].clone();
    for _ in 1..k {
        acc = acc.direct_sum(&pool[rng.gen_range(0..pool.len())]);
    }
    acc
}

/// A formal object with `1..=max_summands` indecomposable summands in
/// degrees `window.0..=window.1`.
pub fn formal_object(pool: &[Representation], window: (i32, i32), max_summands: usize, rng: &mut impl Rng) -> FormalObject {
    let k = rng.gen_range(1..=max_summands.max(1));
    let x = &pool[0];
    let mut acc = FormalObject::zero(x.quiver().clone(), x.prime());
    for _ in 0..k {
        let r = &pool[rng.gen_range(0..pool.len())];
        let n = rng.gen_range(window.0..=window.1);
        acc = acc.direct_sum(&FormalObject::stalk(r, n));
    }
    acc
}

/// A uniformly random formal morphism `x -> y`.
pub fn formal_morphism(x: &FormalObject, y: &FormalObject, rng: &mut impl Rng) -> FormalMorphism {
    let space = HomSpace::new(x, y);
    space.from_coords(&combo(x.prime(), space.dim(), rng))
}

/// A random automorphism of `x` (rejection sampling; identity as a last resort).
pub fn formal_automorphism(x: &FormalObject, rng: &mut impl Rng) -> FormalMorphism {
    for _ in 0..100 {
        let a = formal_morphism(x, x, rng);
        if a.is_iso() {
            return a;
        }
    }
    FormalMorphism::identity(x)
}

/// A random bounded complex with terms drawn from `pool` in degrees
/// `window.0..=window.1`; each differential is a random element of the
/// maps killing the previous one.
pub fn complex(pool: &[Representation], window: (i32, i32), max_summands: usize, rng: &mut impl Rng) -> Complex {
    let x = &pool[0];
    let q = x.quiver().clone();
    let p = x.prime();
    let (lo, hi) = window;
    let terms: Vec<Representation> = (lo..=hi).map(|_| rep(pool, max_summands, rng)).collect();
    let mut diffs: Vec<RepMorphism> = Vec::new();
    for i in 0..terms.len().saturating_sub(1) {
        let (a, b) = (&terms[i], &terms[i + 1]);
        let prev = diffs.last().cloned();
        let d = match prev {
            None => rep_morphism(a, b, rng),
            Some(prev) => {
                // d with d∘prev = 0: random element of the kernel of precomposition
                let he = hom_ext(a, b);
                let basis = he.hom_basis();
                if basis.is_empty() {
                    RepMorphism::zero(a, b)
                } else {
                    let cols: Vec<Vec<u32>> = basis.iter().map(|m| m.compose(&prev).raw()).collect();
                    let rows = cols[0].len();
                    let m = Matrix::from_columns(p, rows, &cols);
                    let k = m.kernel_basis();
                    let c = combo(p, k.cols(), rng);
                    let coords = k.mul_vec(&c);
                    basis.iter().zip(&coords).fold(RepMorphism::zero(a, b), |acc, (m, &s)| acc.add(&m.scale(s)))
                }
            }
        };
        diffs.push(d);
    }
    Complex::new(q, p, lo, terms, diffs).expect("random complex satisfies d² = 0")
}

/// A random complex of free representations built from the indecomposable
/// projectives of the quiver.
pub fn free_complex(q: &std::sync::Arc<crate::quiver_rep::Quiver>, p: u32, window: (i32, i32), max_summands: usize, rng: &mut impl Rng) -> Complex {
    let pool: Vec<Representation> = (0..q.vertex_count()).map(|v| Representation::projective(q.clone(), p, v)).collect();
    let c = complex(&pool, window, max_summands, rng);
    crate::complexes::free_form(&c).expect("projective terms").complex
}

/// A random chain map between complexes whose terms are projective,
/// obtained as a random combination of a basis of chain maps. The source
/// must have free terms.
pub fn chain_map(x: &Complex, y: &Complex, rng: &mut impl Rng) -> ChainMap {
    let sys = crate::complexes::ChainSystem::new(x, y);
    let m = sys.commutation_matrix(x, y);
    let k = m.kernel_basis();
    let c = combo(x.prime(), k.cols(), rng);
    sys.chain_map(x, y, &k.mul_vec(&c))
}
