use crate::linalg::Matrix;

use super::rep::RepMorphism;

/// Kernel, image and cokernel of a morphism `f : X -> Y`.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// `k : K -> X`
    pub kernel: RepMorphism,
    /// `X -> I`, an epimorphism
    pub coimage: RepMorphism,
    /// `I -> Y`, a monomorphism
    pub image: RepMorphism,
    /// `c : Y -> C`
    pub cokernel: RepMorphism,
}

pub fn factorize(f: &RepMorphism) -> Factorization {
    let x = f.source();
    let y = f.target();
    let ker: Vec<Matrix> = f.maps().iter().map(Matrix::kernel_basis).collect();
    let img: Vec<Matrix> = f.maps().iter().map(Matrix::column_space).collect();
    let k = x.subrep(&ker).expect("kernel is a subrepresentation");
    let i = y.subrep(&img).expect("image is a subrepresentation");
    let kernel = RepMorphism::new_unchecked(k, x.clone(), ker);
    let coimage_maps = img
        .iter()
        .zip(f.maps())
        .map(|(b, m)| b.solve(m).expect("shapes agree").expect("image contains f"))
        .collect();
    let coimage = RepMorphism::new_unchecked(x.clone(), i.clone(), coimage_maps);
    let image = RepMorphism::new_unchecked(i, y.clone(), img.clone());
    let (_, cokernel) = y.quotient(&img);
    Factorization { kernel, coimage, image, cokernel }
}

/// Kernel inclusion of `f`.
pub fn kernel(f: &RepMorphism) -> RepMorphism {
    let ker: Vec<Matrix> = f.maps().iter().map(Matrix::kernel_basis).collect();
    let k = f.source().subrep(&ker).expect("kernel is a subrepresentation");
    RepMorphism::new_unchecked(k, f.source().clone(), ker)
}

/// Cokernel projection of `f`.
pub fn cokernel(f: &RepMorphism) -> RepMorphism {
    let img: Vec<Matrix> = f.maps().iter().map(Matrix::column_space).collect();
    f.target().quotient(&img).1
}

/// Whether `X -f-> Y -g-> Z` is exact at `Y`.
pub fn exact_at(f: &RepMorphism, g: &RepMorphism) -> bool {
    f.maps().iter().zip(g.maps()).all(|(a, b)| b.mul(a).is_zero() && a.rank() + b.rank() == a.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_rep::quiver::Quiver;
    use crate::quiver_rep::rep::Representation;
    use std::sync::Arc;

    #[test]
    fn factorization_of_projection_p1_to_s1() {
        let q = Arc::new(Quiver::a(2));
        let p1 = Representation::projective(q.clone(), 101, 0);
        let s1 = Representation::simple(q, 101, 0);
        let f = RepMorphism::new(p1, s1, vec![Matrix::identity(101, 1), Matrix::zeros(101, 0, 1)]).unwrap();
        let fac = factorize(&f);
        assert_eq!(fac.kernel.source().dims(), &[0, 1]);
        assert!(fac.kernel.is_valid());
        assert_eq!(fac.image.source().dims(), &[1, 0]);
        assert!(fac.cokernel.target().is_zero());
        assert_eq!(fac.image.compose(&fac.coimage), f);
        assert!(exact_at(&fac.kernel, &f));
    }
}
