//! Lie algebras given by structure constants, inner products, and the
//! left-invariant geometry of a Euclidean Lie algebra.

mod euclidean;
mod metric;
mod subalgebra;

use alloc::vec::Vec;

use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::{Error, Result, Scalar};

pub use euclidean::{EuclideanLieAlgebra, LeviCivitaProduct};
pub use metric::{metric_adjoint, InnerProduct};
pub use subalgebra::{Quotient, Subalgebra};

/// One bracket entry `[e_i, e_j] = Σ coeff·e_k`, with `i < j`.
pub type BracketEntry<T> = (usize, usize, Vec<(usize, T)>);

/// Finite-dimensional real Lie algebra given by structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k]·e_k` on a fixed basis.
///
/// Only entries with `i < j` are ever supplied; the other half is reflected
/// so the tensor is antisymmetric by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T = f64> {
    dim: usize,
    c: Vec<T>,
}

impl<T: Scalar> LieAlgebra<T> {
    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            c: vector::zeros(dim * dim * dim),
        }
    }

    /// Builds from bracket entries. Repeated `(i, j, k)` coefficients add up.
    ///
    /// The Jacobi identity is not checked here; see [`LieAlgebra::validate`].
    pub fn from_brackets<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = BracketEntry<T>>,
    {
        let mut alg = Self::abelian(dim);
        for (i, j, coeffs) in entries {
            for idx in [i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i >= j {
                return Err(Error::InvalidBracketEntry { i, j });
            }
            for (k, v) in coeffs {
                if k >= dim {
                    return Err(Error::IndexOutOfRange { index: k, dim });
                }
                if !v.to_f64().is_finite() {
                    return Err(Error::NonFinite);
                }
                let at = alg.idx(i, j, k);
                alg.c[at] = alg.c[at].clone() + v.clone();
                let at = alg.idx(j, i, k);
                alg.c[at] = alg.c[at].clone() - v;
            }
        }
        Ok(alg)
    }

    /// Builds from a function giving `c[i][j][k]`, evaluated for `i < j` only.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> T) -> Self {
        let mut alg = Self::abelian(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    let v = f(i, j, k);
                    let at = alg.idx(j, i, k);
                    alg.c[at] = -v.clone();
                    let at = alg.idx(i, j, k);
                    alg.c[at] = v;
                }
            }
        }
        alg
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[self.idx(i, j, k)]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<T> {
        let start = self.idx(i, j, 0);
        self.c[start..start + self.dim].to_vec()
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Result<Vec<T>> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vector::zeros(n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let s = u[i].clone() * v[j].clone();
                let start = self.idx(i, j, 0);
                vector::axpy(&mut out, &s, &self.c[start..start + n]);
            }
        }
        out
    }

    fn check_len(&self, u: &[T]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.len(),
            });
        }
        Ok(())
    }

    /// Matrix of `v ↦ [u, v]`. Panics when `u.len() != dim`.
    pub fn ad(&self, u: &[T]) -> Matrix<T> {
        assert_eq!(
            u.len(),
            self.dim,
            "ad: vector length differs from the dimension"
        );
        let n = self.dim;
        let mut m = Matrix::<T>::zeros(n, n);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + ui.clone() * c.clone();
                    }
                }
            }
        }
        m
    }

    /// `ad_{e_i}`.
    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        self.ad(&vector::unit(self.dim, i))
    }

    /// Covector `k ↦ tr(ad_{e_k})`.
    pub fn trace_form(&self) -> Vec<T> {
        (0..self.dim)
            .map(|k| (0..self.dim).fold(T::zero(), |acc, j| acc + self.constant(k, j, j).clone()))
            .collect()
    }

    /// Largest entry of the structure tensor in absolute value.
    pub fn scale(&self) -> f64 {
        vector::max_abs(&self.c)
    }

    /// Largest Euclidean norm of `Σ_cyc [[e_i, e_j], e_k]` over basis triples.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_unchecked(&self.bracket_basis(i, j), &vector::unit(n, k));
                    let b = self.bracket_unchecked(&self.bracket_basis(j, k), &vector::unit(n, i));
                    let c = self.bracket_unchecked(&self.bracket_basis(k, i), &vector::unit(n, j));
                    let sum = vector::add(&vector::add(&a, &b), &c);
                    if T::EXACT && !vector::is_zero(&sum) {
                        worst = worst.max(vector::norm(&sum).max(f64::MIN_POSITIVE));
                    } else {
                        worst = worst.max(vector::norm(&sum));
                    }
                }
            }
        }
        worst
    }

    /// Jacobi identity within `tol`, scaled by the squared size of the constants.
    pub fn check_jacobi(&self, tol: &Tolerance) -> bool {
        let d = self.jacobi_defect();
        if T::EXACT {
            return d == 0.0;
        }
        let s = self.scale();
        tol.accepts(d, s * s)
    }

    /// Rejects constants that are not finite or break the Jacobi identity.
    pub fn validate(&self, tol: &Tolerance) -> Result<()> {
        if self.c.iter().any(|x| !x.to_f64().is_finite()) {
            return Err(Error::NonFinite);
        }
        if !self.check_jacobi(tol) {
            return Err(Error::JacobiViolation {
                defect: self.jacobi_defect(),
            });
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        vector::is_zero(&self.c)
    }

    /// Nonzero bracket entries with `i < j`, in index order.
    pub fn brackets(&self) -> Vec<BracketEntry<T>> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: Vec<(usize, T)> = (0..n)
                    .filter(|&k| !self.constant(i, j, k).is_zero())
                    .map(|k| (k, self.constant(i, j, k).clone()))
                    .collect();
                if !coeffs.is_empty() {
                    out.push((i, j, coeffs));
                }
            }
        }
        out
    }

    /// Basis of the derived algebra `[g, g]`.
    pub fn derived_span(&self, tol: &Tolerance) -> Vec<Vec<T>> {
        let n = self.dim;
        let mut cols = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                cols.push(self.bracket_basis(i, j));
            }
        }
        if cols.is_empty() {
            return Vec::new();
        }
        // Row space of the stacked brackets = column space above.
        let m = Matrix::from_rows(&cols).expect("equal lengths");
        let complement = linalg::nullspace(&m, tol);
        let c = Matrix::from_rows(&complement);
        match c {
            Ok(c) if !complement.is_empty() => linalg::nullspace(&c, tol),
            _ => (0..n).map(|i| vector::unit(n, i)).collect(),
        }
    }

    /// Center `{u : ad_u = 0}`.
    pub fn center(&self, tol: &Tolerance) -> Vec<Vec<T>> {
        let n = self.dim;
        // Row (j, k): Σ_i u_i c[i][j][k].
        let m = Matrix::from_fn(n * n, n, |row, i| {
            self.constant(i, row / n, row % n).clone()
        });
        linalg::nullspace(&m, tol)
    }

    /// Basis of `Der(g)`: endomorphisms `D` with `D[x,y] = [Dx,y] + [x,Dy]`.
    pub fn derivations(&self, tol: &Tolerance) -> Vec<Matrix<T>> {
        let n = self.dim;
        // Unknown D_{ab} at position a·n + b; equation (i<j, k).
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vector::zeros::<T>(n * n);
                    // (D[e_i,e_j])_k = Σ_l c_ijl D_kl
                    for l in 0..n {
                        let c = self.constant(i, j, l).clone();
                        row[k * n + l] = row[k * n + l].clone() + c;
                    }
                    // [D e_i, e_j]_k = Σ_l D_li c_ljk
                    for l in 0..n {
                        let c = self.constant(l, j, k).clone();
                        row[l * n + i] = row[l * n + i].clone() - c;
                    }
                    // [e_i, D e_j]_k = Σ_l D_lj c_ilk
                    for l in 0..n {
                        let c = self.constant(i, l, k).clone();
                        row[l * n + j] = row[l * n + j].clone() - c;
                    }
                    rows.push(row);
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..n * n).map(|p| vector::unit(n * n, p)).collect()
        } else {
            linalg::nullspace(&Matrix::from_rows(&rows).expect("equal lengths"), tol)
        };
        basis
            .into_iter()
            .map(|v| Matrix::from_row_major(n, n, v).expect("n² entries"))
            .collect()
    }

    /// Largest defect of `D[e_i,e_j] − [De_i,e_j] − [e_i,De_j]`.
    pub fn derivation_defect(&self, d: &Matrix<T>) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let a = self.bracket_unchecked(&d.column(i), &vector::unit(n, j));
                let b = self.bracket_unchecked(&vector::unit(n, i), &d.column(j));
                worst = worst.max(vector::norm(&vector::sub(&lhs, &vector::add(&a, &b))));
            }
        }
        worst
    }

    /// `self ⊕ other` with the two summands commuting.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        Self::from_fn(n + m, |i, j, k| {
            if i < n && j < n && k < n {
                self.constant(i, j, k).clone()
            } else if i >= n && j >= n && k >= n {
                other.constant(i - n, j - n, k - n).clone()
            } else {
                T::zero()
            }
        })
    }

    /// Same constants in another scalar type.
    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S) -> LieAlgebra<S> {
        LieAlgebra {
            dim: self.dim,
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> LieAlgebra<f64> {
        self.map_scalars(Scalar::to_f64)
    }
}
