//! Floating point decompositions: one-sided Jacobi SVD, cyclic Jacobi
//! eigensolver, Cholesky and the matrix exponential.

use alloc::vec::Vec;

use super::{vector, Matrix, Tolerance};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Hestenes one-sided Jacobi: returns `(W, V)` with `A·V = W`, `V` orthogonal
/// and the columns of `W` mutually orthogonal. Column norms of `W` are the
/// singular values.
fn hestenes(a: &Matrix<f64>) -> (Matrix<f64>, Matrix<f64>) {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.columns();
    let mut v: Vec<Vec<f64>> = (0..n).map(|j| vector::unit(n, j)).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = w[p].iter().map(|x| x * x).sum();
                let beta: f64 = w[q].iter().map(|x| x * x).sum();
                let gamma: f64 = w[p].iter().zip(&w[q]).map(|(x, y)| x * y).sum();
                if gamma == 0.0 || libm::fabs(gamma) <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t =
                    libm::copysign(1.0, zeta) / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for cols in [&mut w, &mut v] {
                    let (left, right) = cols.split_at_mut(q);
                    for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                        let (xp, yq) = (*x, *y);
                        *x = c * xp - s * yq;
                        *y = s * xp + c * yq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let w = Matrix::from_fn(m, n, |i, j| w[j][i]);
    let v = Matrix::from_fn(n, n, |i, j| v[j][i]);
    (w, v)
}

/// Singular values in the column order of the Jacobi sweep (unsorted).
fn sigma(w: &Matrix<f64>) -> Vec<f64> {
    (0..w.cols()).map(|j| vector::norm(&w.column(j))).collect()
}

fn threshold(sig: &[f64], tol: &Tolerance) -> f64 {
    let smax = sig.iter().copied().fold(0.0, f64::max);
    tol.rel * smax + tol.abs
}

/// Singular values sorted in decreasing order.
pub fn singular_values(a: &Matrix<f64>) -> Vec<f64> {
    let (w, _) = hestenes(a);
    let mut s = sigma(&w);
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub(crate) fn nullspace(a: &Matrix<f64>, tol: &Tolerance) -> Vec<Vec<f64>> {
    if a.rows() == 0 {
        return (0..a.cols()).map(|j| vector::unit(a.cols(), j)).collect();
    }
    let (w, v) = hestenes(a);
    let sig = sigma(&w);
    let thr = threshold(&sig, tol);
    (0..a.cols())
        .filter(|&j| sig[j] < thr)
        .map(|j| v.column(j))
        .collect()
}

pub(crate) fn least_squares(a: &Matrix<f64>, b: &[f64], tol: &Tolerance) -> Result<Vec<f64>> {
    if !a.is_finite() || b.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = a.cols();
    let mut x = vector::zeros(n);
    if a.rows() > 0 {
        let (w, v) = hestenes(a);
        let sig = sigma(&w);
        let thr = threshold(&sig, tol);
        for j in 0..n {
            if sig[j] >= thr && sig[j] > 0.0 {
                let coeff = vector::dot(&w.column(j), b) / (sig[j] * sig[j]);
                vector::axpy(&mut x, &coeff, &v.column(j));
            }
        }
    }
    let residual = vector::norm(&vector::sub(&a.mul_vec(&x), b));
    let scale = a.norm() * vector::norm(&x) + vector::norm(b);
    if residual > 10.0 * tol.bound(scale) {
        return Err(Error::Infeasible { residual });
    }
    Ok(x)
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in increasing order and the matching orthonormal
/// eigenvectors as matrix columns. Only the lower triangle is trusted to be
/// symmetric; the matrix is symmetrised first.
pub fn symmetric_eigen(a: &Matrix<f64>) -> (Vec<f64>, Matrix<f64>) {
    let n = a.rows();
    assert!(a.is_square(), "eigen-decomposition needs a square matrix");
    let mut m = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let mut v = Matrix::<f64>::identity(n);
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off <= f64::MIN_POSITIVE
            || off <= {
                let s = f64::EPSILON * m.norm();
                s * s * 1e-2
            }
        {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = libm::copysign(1.0, theta)
                    / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    (values, vectors)
}

/// Lower-triangular `L` with `a = L·Lᵀ`.
fn cholesky(a: &Matrix<f64>, tol: &Tolerance) -> Result<Matrix<f64>> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        if !(d > tol.abs) {
            return Err(Error::NotPositiveDefinite);
        }
        let ljj = libm::sqrt(d);
        l[(j, j)] = ljj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Basis `b₁..bₙ` of coordinate vectors orthonormal for the Gram matrix
/// `gram`, returned as matrix columns: `Bᵀ·gram·B = I`.
///
/// Uses the Cholesky factor `gram = L·Lᵀ` and `B = L⁻ᵀ`.
pub fn orthonormal_basis(gram: &Matrix<f64>, tol: &Tolerance) -> Result<Matrix<f64>> {
    if !gram.is_square() {
        return Err(Error::DimensionMismatch {
            expected: gram.rows(),
            found: gram.cols(),
        });
    }
    if !gram.is_symmetric(tol) {
        return Err(Error::NotSymmetric {
            defect: gram.symmetry_defect(),
        });
    }
    let l = cholesky(gram, tol)?;
    let n = gram.rows();
    // Solve Lᵀ·B = I column by column (back substitution).
    let mut b = Matrix::zeros(n, n);
    for c in 0..n {
        for i in (0..n).rev() {
            let mut s = if i == c { 1.0 } else { 0.0 };
            for k in i + 1..n {
                s -= l[(k, i)] * b[(k, c)];
            }
            b[(i, c)] = s / l[(i, i)];
        }
    }
    Ok(b)
}

/// Matrix exponential.
///
/// Nilpotent inputs (a power vanishes exactly) use the finite series; other
/// inputs use scaling and squaring around a Taylor polynomial.
pub fn matrix_exp(a: &Matrix<f64>) -> Matrix<f64> {
    let n = a.rows();
    assert!(a.is_square(), "matrix exponential needs a square matrix");
    let mut power = Matrix::<f64>::identity(n);
    let mut sum = Matrix::<f64>::identity(n);
    let mut factorial = 1.0;
    for k in 1..=n {
        power = &power * a;
        if power.is_zero() {
            return sum;
        }
        factorial *= k as f64;
        sum = &sum + &power.scale(&(1.0 / factorial));
    }

    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| libm::fabs(a[(i, j)])).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scaled_norm = norm1;
    while scaled_norm > 0.5 {
        scaled_norm *= 0.5;
        squarings += 1;
    }
    let scaled = a.scale(&libm::ldexp(1.0, -(squarings as i32)));
    let mut term = Matrix::<f64>::identity(n);
    let mut result = Matrix::<f64>::identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale(&(1.0 / k as f64));
        result = &result + &term;
        if term.max_abs() <= f64::EPSILON * 1e-3 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_values_of_diagonal() {
        let a = Matrix::from_diagonal(&[3.0, -1.0, 2.0]);
        let s = singular_values(&a);
        assert!(
            (s[0] - 3.0).abs() < 1e-14 && (s[1] - 2.0).abs() < 1e-14 && (s[2] - 1.0).abs() < 1e-14
        );
    }

    #[test]
    fn eigen_reconstructs() {
        let a = Matrix::from_rows(&[
            alloc::vec![4.0, 1.0, -2.0],
            alloc::vec![1.0, 2.0, 0.5],
            alloc::vec![-2.0, 0.5, 3.0],
        ])
        .unwrap();
        let (vals, vecs) = symmetric_eigen(&a);
        let back = &(&vecs * &Matrix::from_diagonal(&vals)) * &vecs.transpose();
        assert!((&back - &a).max_abs() < 1e-12);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn orthonormal_basis_diagonalises_gram() {
        let g = Matrix::from_rows(&[alloc::vec![2.0, 0.5], alloc::vec![0.5, 1.0]]).unwrap();
        let b = orthonormal_basis(&g, &Tolerance::default()).unwrap();
        let id = &(&b.transpose() * &g) * &b;
        assert!((&id - &Matrix::identity(2)).max_abs() < 1e-14);
        let bad = Matrix::from_rows(&[alloc::vec![1.0, 2.0], alloc::vec![2.0, 1.0]]).unwrap();
        assert_eq!(
            orthonormal_basis(&bad, &Tolerance::default()),
            Err(Error::NotPositiveDefinite)
        );
    }

    #[test]
    fn exp_of_rotation_generator() {
        let t = 0.7_f64;
        let a = Matrix::from_rows(&[alloc::vec![0.0, -t], alloc::vec![t, 0.0]]).unwrap();
        let e = matrix_exp(&a);
        assert!((e[(0, 0)] - libm::cos(t)).abs() < 1e-14);
        assert!((e[(1, 0)] - libm::sin(t)).abs() < 1e-14);
    }

    #[test]
    fn exp_of_nilpotent_is_exact() {
        let a = Matrix::from_rows(&[alloc::vec![0.0, 2.0], alloc::vec![0.0, 0.0]]).unwrap();
        let e = matrix_exp(&a);
        assert_eq!(e.to_vec(), alloc::vec![1.0, 2.0, 0.0, 1.0]);
    }

    #[test]
    fn exp_of_large_diagonal() {
        let e = matrix_exp(&Matrix::from_diagonal(&[5.0, -3.0]));
        assert!((e[(0, 0)] / libm::exp(5.0) - 1.0).abs() < 1e-13);
        assert!((e[(1, 1)] / libm::exp(-3.0) - 1.0).abs() < 1e-13);
    }
}
