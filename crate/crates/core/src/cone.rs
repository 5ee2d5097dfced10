//! Inner automorphisms and the cone of metrics `h` making `Id: (G,g) → (G,h)` harmonic.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::EuclideanLieAlgebra;
use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::maps::LieAlgebraMap;
use crate::{Error, Result, Scalar};

/// The differential `Ad_a` of an inner automorphism, together with the
/// Euclidean algebra it acts on.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointElement<T = f64> {
    base: EuclideanLieAlgebra<T>,
    ad: Matrix<T>,
}

impl<T: Scalar> AdjointElement<T> {
    /// Checks that `ad` is an invertible bracket-preserving map, at `100·tol`
    /// since such matrices usually come out of an exponential.
    pub fn new(base: EuclideanLieAlgebra<T>, ad: Matrix<T>, tol: &Tolerance) -> Result<Self> {
        let n = base.dim();
        if ad.rows() != n || ad.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: ad.rows(),
            });
        }
        if !ad.is_finite() {
            return Err(Error::NonFinite);
        }
        let loose = tol.times(100.0);
        let map = LieAlgebraMap::new(base.clone(), base.clone(), ad.clone())?;
        if !map.validate_hom(&loose) {
            return Err(Error::NotAutomorphism {
                defect: map.hom_defect(),
            });
        }
        if linalg::rank(&ad, tol) < n {
            return Err(Error::NotAutomorphism {
                defect: f64::INFINITY,
            });
        }
        Ok(Self { base, ad })
    }

    pub fn base(&self) -> &EuclideanLieAlgebra<T> {
        &self.base
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.ad
    }

    /// The covector `u ↦ tr(Ad* ∘ ad_u ∘ Ad)`, in basis coordinates.
    pub fn alpha(&self) -> Vec<T> {
        let star = self.base.metric().adjoint(&self.ad);
        (0..self.base.dim())
            .map(|k| (&(&star * self.base.ad_basis(k)) * &self.ad).trace())
            .collect()
    }

    /// Tension field of `Ad` as a map from `(g, ⟨,⟩)` to itself.
    pub fn inner_tension(&self, tol: &Tolerance) -> Result<Vec<T>> {
        self.as_map().tension(tol)
    }

    pub fn as_map(&self) -> LieAlgebraMap<T> {
        LieAlgebraMap::new(self.base.clone(), self.base.clone(), self.ad.clone())
            .expect("dimensions checked at construction")
    }
}

impl AdjointElement<f64> {
    /// `Ad_{exp u} = exp(ad_u)`.
    pub fn exp(base: EuclideanLieAlgebra<f64>, u: &[f64], tol: &Tolerance) -> Result<Self> {
        if u.len() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: u.len(),
            });
        }
        let ad = linalg::matrix_exp(&base.ad(u));
        Self::new(base, ad, tol)
    }
}

fn check_sl2<T: Scalar>(a: &T, b: &T, c: &T, d: &T, tol: &Tolerance) -> Result<()> {
    let det = a.clone() * d.clone() - b.clone() * c.clone();
    let off = det.clone() - T::one();
    let scale = (a.clone() * d.clone()).to_f64().abs() + (b.clone() * c.clone()).to_f64().abs();
    if !off.within(tol.bound(scale)) {
        return Err(Error::DeterminantNotOne { det: det.to_f64() });
    }
    Ok(())
}

/// Matrix of `X ↦ A X A⁻¹` on sl(2) in the basis `h, e, f`, where
/// `A = [[a, b], [c, d]]` has determinant one.
///
/// A traceless matrix `[[x, y], [z, −x]]` has coordinates `(x, y, z)`.
pub fn sl2_adjoint<T: Scalar>(a: T, b: T, c: T, d: T, tol: &Tolerance) -> Result<Matrix<T>> {
    check_sl2(&a, &b, &c, &d, tol)?;
    let m = |rows: [[T; 2]; 2]| Matrix::from_fn(2, 2, |i, j| rows[i][j].clone());
    let (o, z) = (T::one(), T::zero());
    let am = m([[a.clone(), b.clone()], [c.clone(), d.clone()]]);
    let inv = m([[d, -b], [-c, a]]);
    let basis = [
        m([[o.clone(), z.clone()], [z.clone(), -o.clone()]]),
        m([[z.clone(), o.clone()], [z.clone(), z.clone()]]),
        m([[z.clone(), z.clone()], [o, z]]),
    ];
    let cols: Vec<Vec<T>> = basis
        .iter()
        .map(|x| {
            let y = &(&am * x) * &inv;
            alloc::vec![y[(0, 0)].clone(), y[(0, 1)].clone(), y[(1, 0)].clone()]
        })
        .collect();
    Matrix::from_columns(3, &cols)
}

/// The three polynomial residuals whose common zeros are the `A ∈ SL(2,ℝ)`
/// with `Ad_A` harmonic for the metric `diag(α₁, α₂, α₃)` on `h, e, f`.
///
/// Evaluated as written, with `αᵢⱼ = αᵢ/αⱼ`.
pub fn sl2_system<T: Scalar>(
    a: T,
    b: T,
    c: T,
    d: T,
    alphas: [T; 3],
    tol: &Tolerance,
) -> Result<[T; 3]> {
    check_sl2(&a, &b, &c, &d, tol)?;
    for (i, al) in alphas.iter().enumerate() {
        if *al <= T::zero() {
            return Err(Error::BadParameter(format!(
                "alpha{} must be positive, got {al}",
                i + 1
            )));
        }
    }
    let k = |n: i64| T::from_i64(n);
    let r = |i: usize, j: usize| alphas[i].clone() / alphas[j].clone();
    let sq = |x: &T| x.clone() * x.clone();
    let (a2, b2, c2, d2) = (sq(&a), sq(&b), sq(&c), sq(&d));
    let (a4, b4, c4, d4) = (sq(&a2), sq(&b2), sq(&c2), sq(&d2));
    let s = a.clone() * d.clone() + b.clone() * c.clone();

    let r1 = k(8) * (a2.clone() * b2.clone() * r(1, 0) - c2.clone() * d2.clone() * r(2, 0))
        + k(2) * (a4 - d4 + b4 * r(1, 2) - c4 * r(2, 1));
    let r2 = k(2) * s.clone() * (k(2) * a.clone() * b.clone() * r(1, 0) + c.clone() * d.clone())
        + a.clone() * c.clone() * (c2.clone() * r(0, 1) + k(2) * a2.clone())
        + b.clone() * d.clone() * (d2.clone() * r(0, 2) + k(2) * b2.clone() * r(1, 2));
    let r3 = k(2) * s * (a.clone() * b.clone() + k(2) * c.clone() * d.clone() * r(2, 0))
        + a.clone() * c * (a2 * r(0, 1) + k(2) * c2 * r(2, 1))
        + b.clone() * d * (b2 * r(0, 2) + k(2) * d2);
    Ok([r1, r2, r3])
}

/// Linear hull of the harmonic cone.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeResult<T = f64> {
    /// Metric-symmetric `J` spanning the solutions of `tr(J∘ad_u) = tr(ad_{Ju})`.
    pub sym_basis: Vec<Matrix<T>>,
    pub dimension: usize,
    /// The identity, which always lies in the cone.
    pub sample_interior: Matrix<T>,
}

/// Row `i`: coefficients of `tr(J·ad_{e_i}) − tr(ad_{J e_i})` in the entries of `J`.
fn identity_rows<T: Scalar>(ela: &EuclideanLieAlgebra<T>) -> Vec<Vec<T>> {
    let n = ela.dim();
    let traces: Vec<T> = (0..n).map(|k| ela.ad_basis(k).trace()).collect();
    (0..n)
        .map(|i| {
            let ad = ela.ad_basis(i);
            let mut row = vector::zeros::<T>(n * n);
            for a in 0..n {
                for b in 0..n {
                    row[a * n + b] = ad[(b, a)].clone();
                }
                // tr(ad_{J e_i}) = Σ_k J_ki tr(ad_{e_k})
                row[a * n + i] = row[a * n + i].clone() - traces[a].clone();
            }
            row
        })
        .collect()
}

/// Rows of `(G·J − Jᵀ·G)_{pq} = 0` for `p < q`.
fn symmetry_rows<T: Scalar>(gram: &Matrix<T>) -> Vec<Vec<T>> {
    let n = gram.rows();
    let mut rows = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let mut row = vector::zeros::<T>(n * n);
            for l in 0..n {
                row[l * n + q] = row[l * n + q].clone() + gram[(p, l)].clone();
                row[l * n + p] = row[l * n + p].clone() - gram[(l, q)].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Solves the linear system defining the harmonic cone and returns a basis
/// of its span. Works for any Lie algebra, unimodular or not.
pub fn harmonic_cone<T: Scalar>(
    ela: &EuclideanLieAlgebra<T>,
    tol: &Tolerance,
) -> Result<ConeResult<T>> {
    let n = ela.dim();
    let mut rows = symmetry_rows(ela.gram());
    rows.extend(identity_rows(ela));
    let sym_basis: Vec<Matrix<T>> = if rows.is_empty() {
        (0..n * n)
            .map(|k| {
                Matrix::from_fn(
                    n,
                    n,
                    |a, b| if a * n + b == k { T::one() } else { T::zero() },
                )
            })
            .collect()
    } else {
        let system = Matrix::from_rows(&rows)?;
        linalg::nullspace(&system, tol)
            .into_iter()
            .map(|v| Matrix::from_row_major(n, n, v))
            .collect::<Result<_>>()?
    };

    let identity = Matrix::<T>::identity(n);
    if n > 0 {
        let cols: Vec<Vec<T>> = sym_basis.iter().map(Matrix::to_vec).collect();
        let span = Matrix::from_columns(n * n, &cols)?;
        if cols.is_empty() || linalg::solve_linear(&span, &identity.to_vec(), tol).is_err() {
            return Err(Error::OracleMismatch {
                quantity: "identity in harmonic cone",
                defect: 1.0,
            });
        }
    }
    Ok(ConeResult {
        dimension: sym_basis.len(),
        sym_basis,
        sample_interior: identity,
    })
}

/// Harmonic dimension measured from [`harmonic_cone`] next to the count
/// `n(n−1)/2 + dim Kill(g)` expected for unimodular algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionCheck {
    pub measured: usize,
    pub predicted: usize,
}

impl DimensionCheck {
    pub fn holds(&self) -> bool {
        self.measured == self.predicted
    }
}

pub fn harmonic_dimension_check<T: Scalar>(
    ela: &EuclideanLieAlgebra<T>,
    tol: &Tolerance,
) -> Result<DimensionCheck> {
    if !ela.is_unimodular(tol) {
        return Err(Error::NotUnimodular);
    }
    let n = ela.dim();
    let measured = harmonic_cone(ela, tol)?.dimension;
    let predicted = n * n.saturating_sub(1) / 2 + ela.killing_subalgebra(tol).len();
    Ok(DimensionCheck {
        measured,
        predicted,
    })
}

/// Whether the metric `h(u,v) = g(Ju, v)` lies in the harmonic cone.
///
/// `J` must be symmetric for `g`; the answer is true iff the trace identity
/// holds and `J` is positive definite.
pub fn ch_membership<T: Scalar>(
    ela: &EuclideanLieAlgebra<T>,
    j: &Matrix<T>,
    tol: &Tolerance,
) -> Result<bool> {
    let n = ela.dim();
    if j.rows() != n || j.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: j.rows(),
        });
    }
    let g = ela.gram();
    let h = g * j;
    let sym_defect = h.symmetry_defect();
    let jm = j.max_abs();
    let sym_ok = if T::EXACT {
        sym_defect == 0.0 && h == h.transpose()
    } else {
        tol.accepts(sym_defect, g.max_abs() * jm)
    };
    if !sym_ok {
        return Err(Error::NotMetricSymmetric { defect: sym_defect });
    }

    let flat = j.to_vec();
    let scale = n as f64 * jm * ela.algebra().scale();
    let satisfies = identity_rows(ela)
        .iter()
        .all(|row| vector::dot(row, &flat).within(tol.bound(scale)));
    if !satisfies {
        return Ok(false);
    }
    let h = if T::EXACT {
        h
    } else {
        let half = T::from_ratio(1, 2);
        (&h + &h.transpose()).scale(&half)
    };
    Ok(T::positive_definite(&h, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{InnerProduct, LieAlgebra};
    use crate::Rational;
    use alloc::vec;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn sl2(alphas: [f64; 3]) -> EuclideanLieAlgebra {
        let alg = LieAlgebra::from_brackets(
            3,
            [
                (0, 1, vec![(1, 2.0)]),
                (0, 2, vec![(2, -2.0)]),
                (1, 2, vec![(0, 1.0)]),
            ],
        )
        .unwrap();
        EuclideanLieAlgebra::new(alg, InnerProduct::diagonal(&alphas).unwrap()).unwrap()
    }

    fn so3(alphas: [f64; 3]) -> EuclideanLieAlgebra {
        let alg = LieAlgebra::from_brackets(
            3,
            [
                (0, 1, vec![(2, 1.0)]),
                (1, 2, vec![(0, 1.0)]),
                (0, 2, vec![(1, -1.0)]),
            ],
        )
        .unwrap();
        EuclideanLieAlgebra::new(alg, InnerProduct::diagonal(&alphas).unwrap()).unwrap()
    }

    fn heis(gram: Matrix<f64>) -> EuclideanLieAlgebra {
        let alg = LieAlgebra::from_brackets(3, [(1, 2, vec![(0, 1.0)])]).unwrap();
        EuclideanLieAlgebra::new(alg, InnerProduct::new(gram, &tol()).unwrap()).unwrap()
    }

    fn e1() -> EuclideanLieAlgebra {
        let alg = LieAlgebra::from_brackets(2, [(0, 1, vec![(0, 1.0)])]).unwrap();
        let gram = Matrix::from_rows(&[vec![1.5, 0.4], vec![0.4, 0.8]]).unwrap();
        EuclideanLieAlgebra::new(alg, InnerProduct::new(gram, &tol()).unwrap()).unwrap()
    }

    #[test]
    fn identity_solves_sl2_system() {
        let r = sl2_system(1.0, 0.0, 0.0, 1.0, [1.0, 2.0, 3.0], &tol()).unwrap();
        assert_eq!(r, [0.0; 3]);
        assert!(matches!(
            sl2_system(1.0, 1.0, 0.0, 2.0, [1.0; 3], &tol()),
            Err(Error::DeterminantNotOne { .. })
        ));
        assert!(matches!(
            sl2_system(1.0, 0.0, 0.0, 1.0, [1.0, 0.0, 1.0], &tol()),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn sl2_residuals_are_lowered_tension() {
        let alphas = [1.3, 0.7, 2.1];
        let ela = sl2(alphas);
        for &(a, b, c) in &[(1.2, 0.3, -0.5), (0.8, -1.1, 0.4), (2.0, 0.0, 0.7)] {
            let d = (1.0 + b * c) / a;
            let ad = sl2_adjoint(a, b, c, d, &tol()).unwrap();
            let adj = AdjointElement::new(ela.clone(), ad, &tol()).unwrap();
            let tau = adj.inner_tension(&tol()).unwrap();
            let lowered = ela.metric().lower(&tau);
            let r = sl2_system(a, b, c, d, alphas, &tol()).unwrap();
            for k in 0..3 {
                assert!((r[k] - lowered[k]).abs() < 1e-9, "{r:?} vs {lowered:?}");
            }
        }
    }

    #[test]
    fn sl2_diagonal_in_rationals() {
        let t = Rational::new(3, 2);
        let one = Rational::one();
        let zero = Rational::zero();
        let alphas = [
            Rational::new(1, 1),
            Rational::new(2, 1),
            Rational::new(5, 3),
        ];
        let r = sl2_system(
            t.clone(),
            zero.clone(),
            zero,
            one.clone() / t.clone(),
            alphas,
            &tol(),
        )
        .unwrap();
        // with b = c = 0 only a⁴ − d⁴ survives
        let t4 = t.clone() * t.clone() * t.clone() * t.clone();
        assert_eq!(r[0], Rational::from_i64(2) * (t4.clone() - one / t4));
        assert!(r[1].is_zero() && r[2].is_zero());
    }

    #[test]
    fn alpha_vanishes_for_identity_and_biinvariant() {
        let g = heis(Matrix::identity(3));
        let id = AdjointElement::new(g, Matrix::identity(3), &tol()).unwrap();
        assert!(vector::max_abs(&id.alpha()) == 0.0);
        let s = so3([1.0; 3]);
        let adj = AdjointElement::exp(s, &[0.3, -1.2, 0.8], &tol()).unwrap();
        assert!(vector::max_abs(&adj.alpha()) < 1e-12);
    }

    #[test]
    fn heisenberg_alpha_zero_iff_central() {
        let g = heis(
            Matrix::from_rows(&[
                vec![1.0, 0.2, 0.0],
                vec![0.2, 2.0, 0.1],
                vec![0.0, 0.1, 1.0],
            ])
            .unwrap(),
        );
        for u in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.3, -0.7]] {
            let adj = AdjointElement::exp(g.clone(), &u, &tol()).unwrap();
            let alpha = adj.alpha();
            let central = g.ad(&u).max_abs() == 0.0;
            assert_eq!(vector::max_abs(&alpha) < 1e-12, central);
            // unimodular: tension is the metric dual of alpha
            let tau = adj.inner_tension(&tol()).unwrap();
            let dual = g.metric().raise(&alpha);
            assert!(vector::max_abs(&vector::sub(&tau, &dual)) < 1e-12);
        }
    }

    #[test]
    fn non_automorphism_rejected() {
        let g = heis(Matrix::identity(3));
        let m = Matrix::from_diagonal(&[1.0, 2.0, 3.0]);
        assert!(matches!(
            AdjointElement::new(g, m, &tol()),
            Err(Error::NotAutomorphism { .. })
        ));
    }

    #[test]
    fn cone_dimensions() {
        assert_eq!(harmonic_cone(&e1(), &tol()).unwrap().dimension, 1);
        let h = heis(
            Matrix::from_rows(&[
                vec![1.0, 0.3, -0.1],
                vec![0.3, 2.0, 0.2],
                vec![-0.1, 0.2, 0.9],
            ])
            .unwrap(),
        );
        assert_eq!(harmonic_cone(&h, &tol()).unwrap().dimension, 4);
        assert_eq!(
            harmonic_cone(&so3([1.0, 2.0, 3.0]), &tol())
                .unwrap()
                .dimension,
            3
        );
        // two equal weights: the diagonal plus one off-diagonal entry, 3 + dim Kill
        assert_eq!(
            harmonic_cone(&so3([1.0, 2.0, 2.0]), &tol())
                .unwrap()
                .dimension,
            4
        );
        assert_eq!(
            harmonic_dimension_check(&so3([2.0, 2.0, 1.0]), &tol())
                .unwrap()
                .predicted,
            4
        );
        assert_eq!(harmonic_cone(&so3([1.5; 3]), &tol()).unwrap().dimension, 6);
    }

    #[test]
    fn heisenberg_cone_block_form() {
        // orthonormal (z, f, g) with [f, g] = z
        let h = heis(Matrix::identity(3));
        let cone = harmonic_cone(&h, &tol()).unwrap();
        for j in &cone.sym_basis {
            assert!(j[(0, 1)].abs() < 1e-12 && j[(0, 2)].abs() < 1e-12);
            assert!(j[(1, 0)].abs() < 1e-12 && j[(2, 0)].abs() < 1e-12);
            assert!((j[(1, 2)] - j[(2, 1)]).abs() < 1e-12);
        }
    }

    #[test]
    fn dimension_formula() {
        let h = heis(
            Matrix::from_rows(&[
                vec![2.0, 0.3, 0.0],
                vec![0.3, 1.0, 0.2],
                vec![0.0, 0.2, 0.7],
            ])
            .unwrap(),
        );
        let c = harmonic_dimension_check(&h, &tol()).unwrap();
        assert_eq!((c.measured, c.predicted), (4, 4));
        assert_eq!(
            harmonic_dimension_check(&so3([1.0, 2.0, 3.0]), &tol())
                .unwrap()
                .predicted,
            3
        );
        assert_eq!(
            harmonic_dimension_check(&so3([1.0; 3]), &tol())
                .unwrap()
                .measured,
            6
        );
        assert_eq!(
            harmonic_dimension_check(&e1(), &tol()).unwrap_err(),
            Error::NotUnimodular
        );
    }

    #[test]
    fn membership() {
        let e = e1();
        assert!(ch_membership(&e, &Matrix::identity(2), &tol()).unwrap());
        // diag(1,2) is not metric-symmetric for a non-diagonal gram; use an orthonormal frame
        let plain = EuclideanLieAlgebra::with_identity_metric(e.algebra().clone());
        assert!(!ch_membership(&plain, &Matrix::from_diagonal(&[1.0, 2.0]), &tol()).unwrap());
        assert!(matches!(
            ch_membership(&e, &Matrix::from_diagonal(&[1.0, 2.0]), &tol()),
            Err(Error::NotMetricSymmetric { .. })
        ));
        let s = so3([1.0; 3]);
        let j = Matrix::from_rows(&[
            vec![2.0, 0.5, 0.1],
            vec![0.5, 1.0, -0.3],
            vec![0.1, -0.3, 3.0],
        ])
        .unwrap();
        assert!(ch_membership(&s, &j, &tol()).unwrap());
        assert!(!ch_membership(&s, &j.scale(&-1.0), &tol()).unwrap());
    }

    #[test]
    fn exact_cone_matches_float() {
        let alg = LieAlgebra::from_brackets(3, [(1, 2, vec![(0, Rational::one())])]).unwrap();
        let ela = EuclideanLieAlgebra::with_identity_metric(alg);
        assert_eq!(harmonic_cone(&ela, &tol()).unwrap().dimension, 4);
    }
}
