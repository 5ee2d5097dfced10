//! Tolerance-aware dense linear algebra.
//!
//! Dimensions in this crate are small (the largest systems are the harmonic
//! cone equations, with `n²` unknowns for `n <= 10`), so everything is a plain
//! row-major `Vec`.
//!
//! Rank decisions for floats use singular values: `σᵢ` counts as zero when
//! `σᵢ < tol.rel·σ_max + tol.abs`. Exact scalars use Gaussian elimination.

pub(crate) mod exact;
pub(crate) mod float;
pub mod vector;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

pub use float::{matrix_exp, orthonormal_basis, singular_values, symmetric_eigen};

/// Absolute and relative thresholds used by every approximate comparison.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs >= 0.0 && rel >= 0.0) || !abs.is_finite() || !rel.is_finite() {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self { abs, rel })
    }

    /// Same absolute and relative threshold.
    pub fn uniform(tol: f64) -> Result<Self> {
        Self::new(tol, tol)
    }

    /// Both components multiplied by `factor`.
    pub fn times(&self, factor: f64) -> Self {
        Self {
            abs: self.abs * factor,
            rel: self.rel * factor,
        }
    }

    /// Threshold for a quantity whose natural magnitude is `scale`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    pub fn accepts(&self, defect: f64, scale: f64) -> bool {
        defect <= self.bound(scale)
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { diag[i].clone() } else { T::zero() },
        )
    }

    /// Builds from row vectors; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[T]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn map_to<S: Scalar>(&self, f: impl Fn(&T) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map_to(Scalar::to_f64)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Matrix-vector product. Panics when `v.len() != cols`.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                vector::dot(row, v)
            })
            .collect()
    }

    /// `vᵀ M` as a vector.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.rows, "vector-matrix dimension mismatch");
        (0..self.cols)
            .map(|j| {
                let mut acc = T::zero();
                for (i, vi) in v.iter().enumerate() {
                    if !vi.is_zero() {
                        acc = acc + vi.clone() * self[(i, j)].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        let n = self.rows.min(self.cols);
        (0..n).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Frobenius norm, in `f64`.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x.to_f64() * x.to_f64()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| libm::fabs(x.to_f64()))
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// All entries within `bound` (exactly zero for exact scalars).
    pub fn within(&self, bound: f64) -> bool {
        if T::EXACT {
            self.is_zero()
        } else {
            self.max_abs() <= bound
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.to_f64().is_finite())
    }

    /// `max |a_ij - a_ji|`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows.min(self.cols) {
            for j in 0..i {
                let d = (self[(i, j)].clone() - self[(j, i)].clone()).to_f64();
                worst = worst.max(libm::fabs(d));
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tol: &Tolerance) -> bool {
        if !self.is_square() {
            return false;
        }
        if T::EXACT {
            return (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]));
        }
        tol.accepts(self.symmetry_defect(), self.max_abs())
    }

    /// Commutator `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Flattened entries, row-major.
    pub fn to_vec(&self) -> Vec<T> {
        self.data.clone()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum dimension mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference dimension mismatch"
        );
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Basis of `{v : m·v = 0}`.
///
/// Floats: orthonormal right singular vectors for the singular values below
/// `tol.rel·σ_max + tol.abs`. Exact scalars: the reduced-row-echelon basis.
pub fn nullspace<T: Scalar>(m: &Matrix<T>, tol: &Tolerance) -> Vec<Vec<T>> {
    T::nullspace_of(m, tol)
}

/// Numerical rank under the same rule as [`nullspace`].
pub fn rank<T: Scalar>(m: &Matrix<T>, tol: &Tolerance) -> usize {
    m.cols() - nullspace(m, tol).len()
}

/// Solves `m·x = b`.
///
/// Floats return the minimum-norm least-squares solution and fail with
/// [`Error::Infeasible`] when the residual exceeds
/// `10·(tol.abs + tol.rel·(‖m‖‖x‖ + ‖b‖))`. Exact scalars return a particular
/// solution (free variables set to zero) or fail when the system is inconsistent.
pub fn solve_linear<T: Scalar>(m: &Matrix<T>, b: &[T], tol: &Tolerance) -> Result<Vec<T>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    T::solve_system(m, b, tol)
}

/// True iff the symmetric matrix `m` has all eigenvalues above `tol.abs`.
pub fn is_positive_definite<T: Scalar>(m: &Matrix<T>, tol: &Tolerance) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if !m.is_symmetric(tol) {
        return Err(Error::NotSymmetric {
            defect: m.symmetry_defect(),
        });
    }
    Ok(T::positive_definite(m, tol))
}

/// Inverse of a square matrix, via [`solve_linear`] on the identity columns.
pub fn inverse<T: Scalar>(m: &Matrix<T>, tol: &Tolerance) -> Result<Matrix<T>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.cols(),
        });
    }
    if rank(m, tol) < n {
        return Err(Error::LinearlyDependent);
    }
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        let e = vector::unit::<T>(n, j);
        let col = solve_linear(m, &e, tol)?;
        inv.set_column(j, &col);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[f64]]) -> Matrix<f64> {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn nullspace_of_zero_spans_everything() {
        let ns = nullspace(&Matrix::<f64>::zeros(3, 3), &Tolerance::default());
        assert_eq!(ns.len(), 3);
        let basis = Matrix::from_columns(3, &ns).unwrap();
        let gram = &basis.transpose() * &basis;
        assert!((&gram - &Matrix::identity(3)).max_abs() < 1e-12);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(nullspace(&Matrix::<f64>::identity(3), &Tolerance::default()).is_empty());
        assert!(nullspace(&Matrix::<Rational>::identity(3), &Tolerance::default()).is_empty());
    }

    #[test]
    fn nullspace_of_rank_one_block() {
        // eigenvalues 0 and 2; kernel spanned by (1, -1)
        let ns = nullspace(&m(&[&[1.0, 1.0], &[1.0, 1.0]]), &Tolerance::default());
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        assert!((v[0] + v[1]).abs() < 1e-12);
        assert!((v[0].abs() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let q = Matrix::<Rational>::from_fn(2, 2, |_, _| Rational::one());
        let ns = nullspace(&q, &Tolerance::default());
        assert_eq!(ns, vec![vec![Rational::from_i64(-1), Rational::one()]]);
    }

    #[test]
    fn wide_and_tall_nullspaces() {
        let wide = m(&[&[1.0, 2.0, 3.0]]);
        let ns = nullspace(&wide, &Tolerance::default());
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(vector::norm(&wide.mul_vec(v)) < 1e-12);
        }
        let tall = m(&[&[1.0, 0.0], &[0.0, 0.0], &[2.0, 0.0]]);
        assert_eq!(nullspace(&tall, &Tolerance::default()).len(), 1);
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let tol = Tolerance::default();
        let b = vec![1.5, -2.0, 0.25];
        assert_eq!(solve_linear(&Matrix::identity(3), &b, &tol).unwrap(), b);
        let x = solve_linear(&m(&[&[2.0, 0.0], &[0.0, 3.0]]), &[4.0, 9.0], &tol).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-14 && (x[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn solve_reports_infeasible_systems() {
        let tol = Tolerance::default();
        let a = m(&[&[1.0, 1.0], &[1.0, 1.0]]);
        assert!(matches!(
            solve_linear(&a, &[1.0, 2.0], &tol),
            Err(Error::Infeasible { .. })
        ));
        let q = Matrix::<Rational>::from_fn(2, 2, |_, _| Rational::one());
        let rhs = [Rational::one(), Rational::from_i64(2)];
        assert!(matches!(
            solve_linear(&q, &rhs, &tol),
            Err(Error::Infeasible { .. })
        ));
        assert!(matches!(
            solve_linear(&a, &[1.0], &tol),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn positive_definiteness() {
        let tol = Tolerance::default();
        assert!(is_positive_definite(&Matrix::<f64>::identity(3), &tol).unwrap());
        assert!(!is_positive_definite(&m(&[&[1.0, 0.0], &[0.0, -1.0]]), &tol).unwrap());
        assert!(is_positive_definite(&m(&[&[2.0, 1.0], &[1.0, 2.0]]), &tol).unwrap());
        assert!(matches!(
            is_positive_definite(&m(&[&[2.0, 1.0], &[0.0, 2.0]]), &tol),
            Err(Error::NotSymmetric { .. })
        ));
        let q = Matrix::from_rows(&[
            vec![Rational::from_i64(2), Rational::one()],
            vec![Rational::one(), Rational::from_i64(2)],
        ])
        .unwrap();
        assert!(is_positive_definite(&q, &tol).unwrap());
        let singular = Matrix::<Rational>::from_fn(2, 2, |_, _| Rational::one());
        assert!(!is_positive_definite(&singular, &tol).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let inv = inverse(&a, &Tolerance::default()).unwrap();
        assert!((&(&a * &inv) - &Matrix::identity(2)).max_abs() < 1e-14);
        assert!(inverse(&m(&[&[1.0, 1.0], &[1.0, 1.0]]), &Tolerance::default()).is_err());
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(0.0, f64::NAN).is_err());
        let t = Tolerance::new(1e-3, 1e-2).unwrap();
        assert!(t.accepts(0.011, 1.0));
        assert!(!t.accepts(0.012, 1.0));
    }
}
