use alloc::vec::Vec;

use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::{Error, Result, Scalar};

/// Positive-definite inner product given by its Gram matrix on a basis.
///
/// The inverse Gram matrix is kept alongside; every trace over an orthonormal
/// basis is evaluated as a contraction with it.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct<T = f64> {
    gram: Matrix<T>,
    gram_inv: Matrix<T>,
}

impl<T: Scalar> InnerProduct<T> {
    /// Validates symmetry and positive definiteness.
    pub fn new(gram: Matrix<T>, tol: &Tolerance) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        if !gram.is_finite() {
            return Err(Error::NonFinite);
        }
        if !linalg::is_positive_definite(&gram, tol)? {
            return Err(Error::NotPositiveDefinite);
        }
        // Symmetrise away round-off so adjoints are exact transposes under G.
        let n = gram.rows();
        let two = T::from_i64(2);
        let gram = Matrix::from_fn(n, n, |i, j| {
            (gram[(i, j)].clone() + gram[(j, i)].clone()) / two.clone()
        });
        let gram_inv = linalg::inverse(&gram, tol)?;
        let gram_inv = Matrix::from_fn(n, n, |i, j| {
            (gram_inv[(i, j)].clone() + gram_inv[(j, i)].clone()) / two.clone()
        });
        Ok(Self { gram, gram_inv })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            gram: Matrix::identity(n),
            gram_inv: Matrix::identity(n),
        }
    }

    /// Diagonal Gram matrix; entries must be positive.
    pub fn diagonal(weights: &[T]) -> Result<Self> {
        if weights.iter().any(|w| *w <= T::zero()) {
            return Err(Error::NotPositiveDefinite);
        }
        let inv: Vec<T> = weights.iter().map(|w| T::one() / w.clone()).collect();
        Ok(Self {
            gram: Matrix::from_diagonal(weights),
            gram_inv: Matrix::from_diagonal(&inv),
        })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix<T> {
        &self.gram_inv
    }

    /// `⟨u, v⟩ = uᵀ·G·v`.
    pub fn inner(&self, u: &[T], v: &[T]) -> T {
        vector::dot(u, &self.gram.mul_vec(v))
    }

    pub fn norm_sq(&self, u: &[T]) -> T {
        self.inner(u, u)
    }

    /// Metric length in `f64`.
    pub fn norm(&self, u: &[T]) -> f64 {
        libm::sqrt(self.norm_sq(u).to_f64().max(0.0))
    }

    /// Covector `G·u`.
    pub fn lower(&self, u: &[T]) -> Vec<T> {
        self.gram.mul_vec(u)
    }

    /// Vector dual to a covector: the `v` with `⟨v, w⟩ = covector(w)`.
    pub fn raise(&self, covector: &[T]) -> Vec<T> {
        self.gram_inv.mul_vec(covector)
    }

    /// Adjoint of an endomorphism: `G⁻¹·Mᵀ·G`.
    pub fn adjoint(&self, m: &Matrix<T>) -> Matrix<T> {
        metric_adjoint(m, self, self)
    }

    /// `⊕` with block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        let block = |a: &Matrix<T>, b: &Matrix<T>| {
            Matrix::from_fn(n + m, n + m, |i, j| {
                if i < n && j < n {
                    a[(i, j)].clone()
                } else if i >= n && j >= n {
                    b[(i - n, j - n)].clone()
                } else {
                    T::zero()
                }
            })
        };
        Self {
            gram: block(&self.gram, &other.gram),
            gram_inv: block(&self.gram_inv, &other.gram_inv),
        }
    }

    /// Gram matrix of the restriction to the span of `basis` (as columns).
    pub fn restrict(&self, basis: &Matrix<T>, tol: &Tolerance) -> Result<Self> {
        Self::new(&(&basis.transpose() * &self.gram) * basis, tol)
    }

    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S) -> InnerProduct<S> {
        InnerProduct {
            gram: self.gram.map_to(&f),
            gram_inv: self.gram_inv.map_to(&f),
        }
    }
}

/// Adjoint `F*: W → V` of `F: (V, src) → (W, tgt)`, i.e.
/// `⟨F v, w⟩_tgt = ⟨v, F* w⟩_src`; equals `G_src⁻¹·Fᵀ·G_tgt`.
pub fn metric_adjoint<T: Scalar>(
    f: &Matrix<T>,
    src: &InnerProduct<T>,
    tgt: &InnerProduct<T>,
) -> Matrix<T> {
    &(&src.gram_inv * &f.transpose()) * &tgt.gram
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::vec;

    #[test]
    fn rejects_bad_grams() {
        let tol = Tolerance::default();
        let not_pd = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert_eq!(
            InnerProduct::new(not_pd, &tol),
            Err(Error::NotPositiveDefinite)
        );
        let asym = Matrix::from_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            InnerProduct::new(asym, &tol),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(InnerProduct::<f64>::diagonal(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn adjoint_satisfies_defining_identity() {
        let tol = Tolerance::default();
        let g = InnerProduct::new(
            Matrix::from_rows(&[vec![2.0, 0.3], vec![0.3, 1.0]]).unwrap(),
            &tol,
        )
        .unwrap();
        let m = Matrix::from_rows(&[vec![1.0, -2.0], vec![0.5, 3.0]]).unwrap();
        let adj = g.adjoint(&m);
        let (u, v) = (vec![0.7, -1.1], vec![0.2, 0.9]);
        let lhs = g.inner(&m.mul_vec(&u), &v);
        let rhs = g.inner(&u, &adj.mul_vec(&v));
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn exact_inverse() {
        let q = |a, b| Rational::new(a, b);
        let g = Matrix::from_rows(&[vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(2, 1)]]).unwrap();
        let ip = InnerProduct::new(g, &Tolerance::default()).unwrap();
        assert_eq!(
            ip.gram_inv().to_rows(),
            vec![vec![q(2, 3), q(-1, 3)], vec![q(-1, 3), q(2, 3)]]
        );
    }
}
