use alloc::vec::Vec;

use super::{EuclideanLieAlgebra, InnerProduct, LieAlgebra};
use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::{Error, Result, Scalar};

/// Coordinates of `w` in the column basis `b`, or the residual when `w` is
/// not in the span.
fn express<T: Scalar>(
    b: &Matrix<T>,
    w: &[T],
    tol: &Tolerance,
) -> core::result::Result<Vec<T>, f64> {
    if b.cols() == 0 {
        return if vector::within(w, tol.bound(0.0)) {
            Ok(Vec::new())
        } else {
            Err(vector::norm(w))
        };
    }
    match linalg::solve_linear(b, w, tol) {
        Ok(x) => Ok(x),
        Err(Error::Infeasible { residual }) => Err(residual),
        Err(_) => Err(f64::INFINITY),
    }
}

/// A subalgebra of a Euclidean Lie algebra, spanned by the given vectors and
/// carrying the induced metric.
///
/// The basis is kept as supplied; orthogonal projections are computed from the
/// induced Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra<T = f64> {
    parent: EuclideanLieAlgebra<T>,
    basis: Matrix<T>,
    structure: LieAlgebra<T>,
    tol: Tolerance,
}

impl<T: Scalar> Subalgebra<T> {
    /// Checks independence and closure under the bracket.
    pub fn new(
        parent: EuclideanLieAlgebra<T>,
        basis: Vec<Vec<T>>,
        tol: &Tolerance,
    ) -> Result<Self> {
        let n = parent.dim();
        let k = basis.len();
        let b = Matrix::from_columns(n, &basis)?;
        if k > 0 && linalg::rank(&b, tol) < k {
            return Err(Error::LinearlyDependent);
        }
        let mut entries = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let w = parent.algebra().bracket_unchecked(&basis[i], &basis[j]);
                let x = express(&b, &w, tol).map_err(|defect| Error::NotSubalgebra { defect })?;
                entries.push((i, j, x.into_iter().enumerate().collect()));
            }
        }
        let structure = LieAlgebra::from_brackets(k, entries)?;
        Ok(Self {
            parent,
            basis: b,
            structure,
            tol: *tol,
        })
    }

    /// The whole algebra on its own basis.
    pub fn full(parent: EuclideanLieAlgebra<T>) -> Self {
        let n = parent.dim();
        let structure = parent.algebra().clone();
        Self {
            parent,
            basis: Matrix::identity(n),
            structure,
            tol: Tolerance::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn parent(&self) -> &EuclideanLieAlgebra<T> {
        &self.parent
    }

    /// Basis vectors as the columns of an `n × k` matrix.
    pub fn basis_matrix(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<Vec<T>> {
        self.basis.columns()
    }

    /// Structure constants in the subalgebra basis.
    pub fn structure(&self) -> &LieAlgebra<T> {
        &self.structure
    }

    pub fn induced_metric(&self) -> Result<InnerProduct<T>> {
        self.parent.metric().restrict(&self.basis, &self.tol)
    }

    /// The subalgebra as a Euclidean Lie algebra in its own basis.
    pub fn as_euclidean(&self) -> Result<EuclideanLieAlgebra<T>> {
        EuclideanLieAlgebra::new(self.structure.clone(), self.induced_metric()?)
    }

    /// Metric-orthogonal projector of the parent onto the span.
    pub fn orthogonal_projector(&self) -> Result<Matrix<T>> {
        let n = self.parent.dim();
        if self.dim() == 0 {
            return Ok(Matrix::zeros(n, n));
        }
        let ginv = self.induced_metric()?.gram_inv().clone();
        let bt_g = &self.basis.transpose() * self.parent.gram();
        Ok(&(&self.basis * &ginv) * &bt_g)
    }

    /// Largest distance of `[e_i, b_a]` from the span.
    pub fn ideal_defect(&self) -> f64 {
        let n = self.parent.dim();
        let mut worst: f64 = 0.0;
        for b in self.basis.columns() {
            for i in 0..n {
                let w = self
                    .parent
                    .algebra()
                    .bracket_unchecked(&vector::unit(n, i), &b);
                if let Err(r) = express(&self.basis, &w, &self.tol) {
                    worst = worst.max(r.max(f64::MIN_POSITIVE));
                }
            }
        }
        worst
    }

    pub fn is_ideal(&self) -> bool {
        self.ideal_defect() == 0.0
    }

    /// Second fundamental form on basis pairs, `h[a][b] = (A_{b_a} b_b)^⊥`,
    /// and the mean curvature vector `H = Σ h(c, c)` over an induced-orthonormal basis.
    pub fn second_fundamental(&self) -> Result<(Vec<Vec<Vec<T>>>, Vec<T>)> {
        let n = self.parent.dim();
        let k = self.dim();
        let p = self.orthogonal_projector()?;
        let normal = &Matrix::identity(n) - &p;
        let cols = self.basis.columns();
        let mut h = Vec::with_capacity(k);
        for a in 0..k {
            let row: Vec<Vec<T>> = (0..k)
                .map(|b| normal.mul_vec(&self.parent.lc_apply(&cols[a], &cols[b])))
                .collect();
            h.push(row);
        }
        let mut mean = vector::zeros(n);
        if k > 0 {
            let ginv = self.induced_metric()?.gram_inv().clone();
            for a in 0..k {
                for b in 0..k {
                    vector::axpy(&mut mean, &ginv[(a, b)], &h[a][b]);
                }
            }
        }
        Ok((h, mean))
    }

    pub fn mean_curvature(&self) -> Result<Vec<T>> {
        Ok(self.second_fundamental()?.1)
    }

    /// Quotient by this subalgebra, which must be an ideal.
    ///
    /// The quotient is identified with the orthogonal complement of the ideal
    /// and carries the restricted metric.
    pub fn quotient(&self) -> Result<Quotient<T>> {
        let defect = self.ideal_defect();
        if defect > 0.0 {
            return Err(Error::NotIdeal { defect });
        }
        let n = self.parent.dim();
        let k = self.dim();
        let complement: Vec<Vec<T>> = if k == 0 {
            (0..n).map(|i| vector::unit(n, i)).collect()
        } else {
            let constraints = &self.basis.transpose() * self.parent.gram();
            linalg::nullspace(&constraints, &self.tol)
        };
        if complement.len() + k != n {
            return Err(Error::LinearlyDependent);
        }
        let lift = Matrix::from_columns(n, &complement)?;
        let mut all = complement.clone();
        all.extend(self.basis.columns());
        let inv = linalg::inverse(&Matrix::from_columns(n, &all)?, &self.tol)?;
        let m = n - k;
        let projection = Matrix::from_fn(m, n, |i, j| inv[(i, j)].clone());
        let mut entries = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                let w = self
                    .parent
                    .algebra()
                    .bracket_unchecked(&complement[a], &complement[b]);
                entries.push((
                    a,
                    b,
                    projection.mul_vec(&w).into_iter().enumerate().collect(),
                ));
            }
        }
        let algebra = LieAlgebra::from_brackets(m, entries)?;
        let metric = self.parent.metric().restrict(&lift, &self.tol)?;
        Ok(Quotient {
            algebra: EuclideanLieAlgebra::new(algebra, metric)?,
            lift,
            projection,
        })
    }
}

/// Quotient `g / g₀` identified with `g₀^⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quotient<T = f64> {
    /// Quotient algebra with the metric pulled back through `lift`.
    pub algebra: EuclideanLieAlgebra<T>,
    /// `n × (n − k)`: quotient basis vector `a` ↦ its representative in `g₀^⊥`.
    pub lift: Matrix<T>,
    /// `(n − k) × n`: the projection `g → g / g₀`.
    pub projection: Matrix<T>,
}
