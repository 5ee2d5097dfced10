//! Random metrics, algebras and homomorphisms for randomized sweeps.
//!
//! Every function draws from a caller-supplied [`Rng`], so a seeded generator
//! gives reproducible samples.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{EuclideanLieAlgebra, InnerProduct, LieAlgebra, Subalgebra};
use crate::catalog;
use crate::linalg::{self, Matrix, Tolerance};
use crate::maps::LieAlgebraMap;

/// Uniform on `[-1, 1)`.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..1.0)
}

/// `BᵀB + ½·I` with `B` uniform in `[-1,1)`: positive definite with
/// eigenvalues at least one half.
pub fn random_gram<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<f64> {
    let b = Matrix::from_fn(n, n, |_, _| uniform(rng));
    let mut g = &b.transpose() * &b;
    for i in 0..n {
        g[(i, i)] += 0.5;
    }
    g
}

pub fn random_metric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> InnerProduct {
    InnerProduct::new(random_gram(n, rng), &Tolerance::default())
        .expect("positive definite by construction")
}

/// `alg` with a random metric.
pub fn with_random_metric<R: Rng + ?Sized>(alg: &LieAlgebra, rng: &mut R) -> EuclideanLieAlgebra {
    EuclideanLieAlgebra::new(alg.clone(), random_metric(alg.dim(), rng)).expect("same dimension")
}

/// `R ⋉_D R^{n−1}`: `[e_0, e_i] = D e_i` for a random `D`. Unimodular iff `tr D = 0`.
pub fn random_solvable<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LieAlgebra {
    assert!(n >= 1, "dimension must be positive");
    let d = Matrix::from_fn(n - 1, n - 1, |_, _| uniform(rng));
    LieAlgebra::from_fn(n, |i, j, k| {
        if i == 0 && k > 0 {
            d[(k - 1, j - 1)]
        } else {
            0.0
        }
    })
}

/// Two-step nilpotent: `m` generators whose brackets land in `n − m` central directions.
pub fn random_two_step<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> LieAlgebra {
    assert!(m <= n, "generator count exceeds dimension");
    LieAlgebra::from_fn(
        n,
        |_, j, k| if j < m && k >= m { uniform(rng) } else { 0.0 },
    )
}

/// A random algebra of dimension `n` from the catalog and the families above.
pub fn random_algebra<R: Rng + ?Sized>(n: usize, rng: &mut R) -> LieAlgebra {
    match (n, rng.gen_range(0..4)) {
        (2, 0) => catalog::e1_algebra(rng.gen_range(0.2..2.0)),
        (3, 0) => catalog::heis3_algebra(rng.gen_range(0.2..2.0)),
        (3, 1) => catalog::so3_algebra(1.0),
        (3, 2) => catalog::sl2_algebra(),
        (5, 0) => catalog::nilp5_algebra(),
        (_, 1) if n >= 3 => random_two_step(n, 2, rng),
        (_, 3) => LieAlgebra::abelian(n),
        _ => random_solvable(n, rng),
    }
}

/// A Lie algebra homomorphism between random Euclidean algebras of
/// dimension at most `max_dim`, drawn from one of several families:
/// identity between two metrics, inner automorphism, subalgebra inclusion,
/// projection off a direct factor, character onto an abelian algebra, or a
/// two-dimensional self-map.
pub fn random_homomorphism<R: Rng + ?Sized>(max_dim: usize, rng: &mut R) -> LieAlgebraMap {
    let max_dim = max_dim.max(2);
    let tol = Tolerance::default();
    loop {
        let n = rng.gen_range(2..=max_dim);
        let map = match rng.gen_range(0..6) {
            0 => {
                let alg = random_algebra(n, rng);
                let src = with_random_metric(&alg, rng);
                let tgt = with_random_metric(&alg, rng);
                LieAlgebraMap::identity_between(src, tgt).ok()
            }
            1 => {
                let alg = random_algebra(n, rng);
                let tgt = with_random_metric(&alg, rng);
                let src = with_random_metric(&alg, rng);
                let u: Vec<f64> = (0..n).map(|_| 0.7 * uniform(rng)).collect();
                let xi = linalg::matrix_exp(&alg.ad(&u));
                LieAlgebraMap::homomorphism(src, tgt, xi, &tol.times(100.0)).ok()
            }
            2 => {
                // span of e_0 together with the derived algebra, or the nilp5 subalgebra
                let (alg, basis) = if n == 5 && rng.gen_bool(0.5) {
                    (catalog::nilp5_algebra(), catalog::nilp5_subalgebra_basis())
                } else {
                    let alg = random_algebra(n, rng);
                    let mut basis = alg.derived_span(&tol);
                    basis.push(crate::linalg::vector::unit(n, 0));
                    (alg, basis)
                };
                let parent = with_random_metric(&alg, rng);
                let basis = independent(basis, n, &tol);
                Subalgebra::new(parent, basis, &tol).ok().and_then(|s| {
                    let inc = LieAlgebraMap::inclusion(&s).ok()?;
                    let src = with_random_metric(s.structure(), rng);
                    LieAlgebraMap::homomorphism(src, inc.target().clone(), inc.xi().clone(), &tol)
                        .ok()
                })
            }
            3 if n >= 3 => {
                let k = rng.gen_range(2..n);
                let h = random_algebra(k, rng);
                let f = random_algebra(n - k, rng);
                let src = with_random_metric(&h.direct_sum(&f), rng);
                let tgt = with_random_metric(&h, rng);
                let xi = Matrix::from_fn(k, n, |a, b| if a == b { 1.0 } else { 0.0 });
                LieAlgebraMap::homomorphism(src, tgt, xi, &tol).ok()
            }
            4 => (|| {
                let alg = random_algebra(n, rng);
                let src = with_random_metric(&alg, rng);
                let derived = alg.derived_span(&tol);
                let chars = if derived.is_empty() {
                    (0..n).map(|i| crate::linalg::vector::unit(n, i)).collect()
                } else {
                    linalg::nullspace(&Matrix::from_rows(&derived).ok()?, &tol)
                };
                let m = rng.gen_range(1..=2usize);
                let rows: Vec<Vec<f64>> = (0..m)
                    .map(|_| {
                        let mut r = vec![0.0; n];
                        for c in &chars {
                            crate::linalg::vector::axpy(&mut r, &uniform(rng), c);
                        }
                        r
                    })
                    .collect();
                let tgt =
                    EuclideanLieAlgebra::new(LieAlgebra::abelian(m), random_metric(m, rng)).ok()?;
                LieAlgebraMap::homomorphism(src, tgt, Matrix::from_rows(&rows).ok()?, &tol).ok()
            })(),
            _ => {
                let a = rng.gen_range(0.3..2.0);
                let alg = catalog::e1_algebra(a);
                let src = with_random_metric(&alg, rng);
                let tgt = with_random_metric(&alg, rng);
                LieAlgebraMap::homomorphism(src, tgt, e1_endomorphism(rng), &tol).ok()
            }
        };
        if let Some(map) = map {
            return map;
        }
    }
}

/// A bracket-preserving endomorphism of `[e, f] = a e` in the basis `(e, f)`:
/// either `e ↦ 0` with `f` arbitrary, or `e ↦ αe` and `f ↦ pe + f`.
pub fn e1_endomorphism<R: Rng + ?Sized>(rng: &mut R) -> Matrix<f64> {
    if rng.gen_bool(0.5) {
        Matrix::from_rows(&[vec![0.0, uniform(rng)], vec![0.0, uniform(rng)]]).expect("2x2")
    } else {
        Matrix::from_rows(&[vec![uniform(rng), uniform(rng)], vec![0.0, 1.0]]).expect("2x2")
    }
}

/// Drops vectors that are dependent on the earlier ones.
fn independent(vectors: Vec<Vec<f64>>, n: usize, tol: &Tolerance) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        let m = Matrix::from_columns(n, &trial).expect("equal lengths");
        if linalg::rank(&m, tol) == trial.len() {
            kept = trial;
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tol = Tolerance::default();
        for _ in 0..50 {
            let g = random_gram(4, &mut rng);
            assert!(linalg::is_positive_definite(&g, &tol).unwrap());
            let n = rng.gen_range(2..6);
            assert!(random_algebra(n, &mut rng).check_jacobi(&tol));
            let map = random_homomorphism(5, &mut rng);
            assert!(map.validate_hom(&tol.times(100.0)));
        }
    }
}
