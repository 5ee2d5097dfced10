use alloc::vec::Vec;

use super::{InnerProduct, LieAlgebra};
use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::{Error, Result, Scalar};

/// The Levi-Civita product `A: g × g → g` of a left-invariant metric,
/// tabulated on basis pairs: `table[i][j] = A_{e_i} e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeviCivitaProduct<T = f64> {
    dim: usize,
    table: Vec<Vec<T>>,
}

impl<T: Scalar> LeviCivitaProduct<T> {
    /// Solves the Koszul identity
    /// `2⟨A_u v, w⟩ = ⟨[u,v],w⟩ + ⟨[w,u],v⟩ + ⟨[w,v],u⟩` on basis triples.
    pub fn koszul(algebra: &LieAlgebra<T>, metric: &InnerProduct<T>) -> Self {
        let n = algebra.dim();
        // lowered[a][b][c] = ⟨[e_a, e_b], e_c⟩
        let lowered: Vec<Vec<T>> = (0..n * n)
            .map(|ab| metric.lower(&algebra.bracket_basis(ab / n, ab % n)))
            .collect();
        let low = |a: usize, b: usize, c: usize| lowered[a * n + b][c].clone();
        let half = T::from_ratio(1, 2);
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let w: Vec<T> = (0..n)
                    .map(|c| low(i, j, c) + low(c, i, j) + low(c, j, i))
                    .collect();
                table.push(vector::scale(&metric.raise(&w), &half));
            }
        }
        Self { dim: n, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A_{e_i} e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[T] {
        &self.table[i * self.dim + j]
    }

    /// `A_u v`.
    pub fn apply(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vector::zeros(n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(u[i].clone() * v[j].clone()), self.product(i, j));
            }
        }
        out
    }

    /// Matrix of `v ↦ A_u v`.
    pub fn operator(&self, u: &[T]) -> Matrix<T> {
        let n = self.dim;
        let mut m = Matrix::<T>::zeros(n, n);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, x) in self.product(i, j).iter().enumerate() {
                    if !x.is_zero() {
                        m[(k, j)] = m[(k, j)].clone() + ui.clone() * x.clone();
                    }
                }
            }
        }
        m
    }

    /// Largest `‖A_{e_i}e_j − A_{e_j}e_i − [e_i,e_j]‖` over basis pairs.
    pub fn torsion_defect(&self, algebra: &LieAlgebra<T>) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = vector::sub(
                    &vector::sub(self.product(i, j), self.product(j, i)),
                    &algebra.bracket_basis(i, j),
                );
                worst = worst.max(vector::norm(&d));
            }
        }
        worst
    }

    /// Largest `|⟨A_{e_i}e_j, e_k⟩ + ⟨e_j, A_{e_i}e_k⟩|` over basis triples.
    pub fn compatibility_defect(&self, metric: &InnerProduct<T>) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let ai = self.operator(&vector::unit(n, i));
            // G·A_i + (G·A_i)ᵀ must vanish
            let ga = metric.gram() * &ai;
            let s = &ga + &ga.transpose();
            worst = worst.max(s.max_abs());
        }
        worst
    }
}

/// A Lie algebra with a left-invariant metric: everything the geometry of a
/// Riemannian Lie group is computed from.
///
/// The Levi-Civita product and the `ad` and `A` matrices of the basis are
/// computed once at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanLieAlgebra<T = f64> {
    algebra: LieAlgebra<T>,
    metric: InnerProduct<T>,
    lc: LeviCivitaProduct<T>,
    ads: Vec<Matrix<T>>,
    lcs: Vec<Matrix<T>>,
}

impl<T: Scalar> EuclideanLieAlgebra<T> {
    pub fn new(algebra: LieAlgebra<T>, metric: InnerProduct<T>) -> Result<Self> {
        if algebra.dim() != metric.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: metric.dim(),
            });
        }
        let n = algebra.dim();
        let lc = LeviCivitaProduct::koszul(&algebra, &metric);
        let ads = (0..n).map(|i| algebra.ad_basis(i)).collect();
        let lcs = (0..n).map(|i| lc.operator(&vector::unit(n, i))).collect();
        Ok(Self {
            algebra,
            metric,
            lc,
            ads,
            lcs,
        })
    }

    /// Same algebra, orthonormal basis.
    pub fn with_identity_metric(algebra: LieAlgebra<T>) -> Self {
        let n = algebra.dim();
        Self::new(algebra, InnerProduct::identity(n)).expect("dimensions agree")
    }

    pub fn with_metric(&self, metric: InnerProduct<T>) -> Result<Self> {
        Self::new(self.algebra.clone(), metric)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.algebra
    }

    pub fn metric(&self) -> &InnerProduct<T> {
        &self.metric
    }

    pub fn gram(&self) -> &Matrix<T> {
        self.metric.gram()
    }

    pub fn levi_civita(&self) -> &LeviCivitaProduct<T> {
        &self.lc
    }

    pub fn inner(&self, u: &[T], v: &[T]) -> T {
        self.metric.inner(u, v)
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Result<Vec<T>> {
        self.algebra.bracket(u, v)
    }

    pub fn ad(&self, u: &[T]) -> Matrix<T> {
        self.algebra.ad(u)
    }

    /// `ad_{e_i}`, cached.
    pub fn ad_basis(&self, i: usize) -> &Matrix<T> {
        &self.ads[i]
    }

    /// Metric adjoint of `ad_u`: `G⁻¹·ad_uᵀ·G`.
    pub fn ad_star(&self, u: &[T]) -> Matrix<T> {
        self.metric.adjoint(&self.ad(u))
    }

    /// Matrix of `A_u`.
    pub fn lc_operator(&self, u: &[T]) -> Matrix<T> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                m = &m + &self.lcs[i].scale(ui);
            }
        }
        m
    }

    /// `A_{e_i}`, cached.
    pub fn lc_basis(&self, i: usize) -> &Matrix<T> {
        &self.lcs[i]
    }

    /// `A_u v`.
    pub fn lc_apply(&self, u: &[T], v: &[T]) -> Vec<T> {
        self.lc.apply(u, v)
    }

    /// The vector with `⟨U, v⟩ = tr(ad_v)` for all `v`; zero iff unimodular.
    pub fn unimodular_vector(&self) -> Vec<T> {
        self.metric.raise(&self.algebra.trace_form())
    }

    /// `Σ A_{b_a} b_a` over an orthonormal basis, as `Σ_jk G⁻¹_jk A_{e_j}e_k`.
    pub fn unimodular_vector_by_sum(&self) -> Vec<T> {
        let n = self.dim();
        let ginv = self.metric.gram_inv();
        let mut out = vector::zeros(n);
        for j in 0..n {
            for k in 0..n {
                vector::axpy(&mut out, &ginv[(j, k)], self.lc.product(j, k));
            }
        }
        out
    }

    /// Unimodular vector, after checking both formulas agree within `10·tol`.
    pub fn unimodular_vector_checked(&self, tol: &Tolerance) -> Result<Vec<T>> {
        let a = self.unimodular_vector();
        let b = self.unimodular_vector_by_sum();
        let defect = vector::norm(&vector::sub(&a, &b));
        let ok = if T::EXACT {
            defect == 0.0
        } else {
            tol.times(10.0).accepts(defect, self.algebra.scale())
        };
        if !ok {
            return Err(Error::OracleMismatch {
                quantity: "unimodular vector",
                defect,
            });
        }
        Ok(a)
    }

    pub fn is_unimodular(&self, tol: &Tolerance) -> bool {
        vector::within(&self.algebra.trace_form(), tol.bound(self.algebra.scale()))
    }

    /// Curvature operator `K(u,v) = [A_u, A_v] − A_{[u,v]}`.
    pub fn curvature(&self, u: &[T], v: &[T]) -> Matrix<T> {
        let au = self.lc_operator(u);
        let av = self.lc_operator(v);
        let uv = self.algebra.bracket_unchecked(u, v);
        &au.commutator(&av) - &self.lc_operator(&uv)
    }

    fn curvature_basis(&self, i: usize, j: usize) -> Matrix<T> {
        let uv = self.algebra.bracket_basis(i, j);
        &self.lcs[i].commutator(&self.lcs[j]) - &self.lc_operator(&uv)
    }

    /// Largest Frobenius norm of `K(e_i, e_j)`.
    pub fn curvature_norm(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                worst = worst.max(self.curvature_basis(i, j).norm());
            }
        }
        worst
    }

    pub fn is_flat(&self, tol: &Tolerance) -> bool {
        let s = self.algebra.scale();
        if T::EXACT {
            return self.curvature_norm() == 0.0;
        }
        tol.accepts(self.curvature_norm(), s * s)
    }

    /// Ricci operator `ric(u) = Σ K(u, b_a) b_a` over an orthonormal basis.
    pub fn ricci_operator(&self) -> Matrix<T> {
        let n = self.dim();
        let ginv = self.metric.gram_inv();
        let mut ric = Matrix::<T>::zeros(n, n);
        for j in 0..n {
            let ks: Vec<Matrix<T>> = (0..n).map(|i| self.curvature_basis(i, j)).collect();
            for k in 0..n {
                let w = &ginv[(j, k)];
                if w.is_zero() {
                    continue;
                }
                for (i, kij) in ks.iter().enumerate() {
                    for r in 0..n {
                        let x = &kij[(r, k)];
                        if !x.is_zero() {
                            ric[(r, i)] = ric[(r, i)].clone() + w.clone() * x.clone();
                        }
                    }
                }
            }
        }
        ric
    }

    /// `ad_u + ad_u*`.
    pub fn symmetric_ad(&self, u: &[T]) -> Matrix<T> {
        let ad = self.ad(u);
        &ad + &self.metric.adjoint(&ad)
    }

    /// Frobenius norm of `ad_u + ad_u*`; zero iff `u` is a Killing direction.
    pub fn killing_defect(&self, u: &[T]) -> f64 {
        self.symmetric_ad(u).norm()
    }

    /// Largest coordinate norm of `A_{e_i} u`; zero iff `u` is parallel.
    pub fn parallel_defect(&self, u: &[T]) -> f64 {
        self.lcs
            .iter()
            .map(|a| vector::norm(&a.mul_vec(u)))
            .fold(0.0, f64::max)
    }

    /// Basis of `Kill(g) = {u : ad_u + ad_u* = 0}`.
    pub fn killing_subalgebra(&self, tol: &Tolerance) -> Vec<Vec<T>> {
        let n = self.dim();
        let cols: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let ad = &self.ads[i];
                (ad + &self.metric.adjoint(ad)).to_vec()
            })
            .collect();
        let m = Matrix::from_columns(n * n, &cols).expect("n² entries per column");
        linalg::nullspace(&m, tol)
    }

    pub fn is_biinvariant(&self, tol: &Tolerance) -> bool {
        self.killing_subalgebra(tol).len() == self.dim()
    }

    /// Orthogonal direct sum; the summands commute.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(
            self.algebra.direct_sum(&other.algebra),
            self.metric.direct_sum(&other.metric),
        )
        .expect("dimensions agree")
    }

    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S) -> EuclideanLieAlgebra<S> {
        EuclideanLieAlgebra::new(self.algebra.map_scalars(&f), self.metric.map_scalars(&f))
            .expect("dimensions agree")
    }

    pub fn to_f64(&self) -> EuclideanLieAlgebra<f64> {
        self.map_scalars(Scalar::to_f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::vec;

    fn e1(a: f64) -> EuclideanLieAlgebra {
        // orthonormal (e, f), [e, f] = a e
        EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(2, [(0, 1, vec![(0, a)])]).unwrap(),
        )
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        vector::norm(&vector::sub(a, b)) < 1e-12
    }

    #[test]
    fn e1_levi_civita_table() {
        let a = 1.7;
        let g = e1(a);
        let lc = g.levi_civita();
        assert!(close(lc.product(0, 0), &[0.0, -a]));
        assert!(close(lc.product(0, 1), &[a, 0.0]));
        assert!(close(lc.product(1, 0), &[0.0, 0.0]));
        assert!(close(lc.product(1, 1), &[0.0, 0.0]));
    }

    #[test]
    fn e1_unimodular_vector_both_forms() {
        let a = 0.6;
        let g = e1(a);
        assert!(close(&g.unimodular_vector(), &[0.0, -a]));
        assert!(close(&g.unimodular_vector_by_sum(), &[0.0, -a]));
        assert!(!g.is_unimodular(&Tolerance::default()));
    }

    #[test]
    fn e1_exact_unimodular_vector() {
        let a = Rational::new(3, 7);
        let alg = LieAlgebra::from_brackets(2, [(0, 1, vec![(0, a.clone())])]).unwrap();
        let g = EuclideanLieAlgebra::with_identity_metric(alg);
        let u = g.unimodular_vector_checked(&Tolerance::default()).unwrap();
        assert_eq!(u, vec![Rational::zero(), -a]);
    }

    #[test]
    fn e1_curvature_values() {
        // With orthonormal (e, f') and [e, f'] = b e: K(e,f')e = b² f', K(e,f')f' = -b² e.
        let b = 1.3;
        let g = e1(b);
        let k = g.curvature(&[1.0, 0.0], &[0.0, 1.0]);
        assert!(close(&k.column(0), &[0.0, b * b]));
        assert!(close(&k.column(1), &[-b * b, 0.0]));
        let k2 = g.curvature(&[0.0, 1.0], &[1.0, 0.0]);
        assert!((&k + &k2).max_abs() < 1e-14);
    }

    #[test]
    fn e1_ricci_against_milnor_ratio() {
        // f ⊥ [g, g]; <ric(f), f> = -1/4 tr((ad_f + ad_f*)²)
        let a = 0.9;
        let g = e1(a);
        let f = [0.0, 1.0];
        let ric = g.ricci_operator();
        let lhs = g.inner(&ric.mul_vec(&f), &f);
        let s = g.symmetric_ad(&f);
        let tr = (&s * &s).trace();
        assert!(lhs < 0.0);
        assert!((lhs / tr + 0.25).abs() < 1e-12);
    }

    #[test]
    fn killing_dimensions() {
        let tol = Tolerance::default();
        assert_eq!(e1(1.0).killing_subalgebra(&tol).len(), 0);
        assert!(!e1(1.0).is_biinvariant(&tol));
        let ab = EuclideanLieAlgebra::<f64>::with_identity_metric(LieAlgebra::abelian(3));
        assert!(ab.is_biinvariant(&tol));
        let heis = EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(3, [(1, 2, vec![(0, 1.0)])]).unwrap(),
        );
        let kill = heis.killing_subalgebra(&tol);
        assert_eq!(kill.len(), 1);
        assert!((kill[0][0].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ad_star_is_transpose_for_identity_gram() {
        let a = 0.4;
        let g = e1(a);
        let adf = g.ad_star(&[0.0, 1.0]);
        assert_eq!(adf.to_rows(), vec![vec![-a, 0.0], vec![0.0, 0.0]]);
    }
}
