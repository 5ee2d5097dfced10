//! Homomorphisms between Euclidean Lie algebras: tension and bitension,
//! classification, submersion structure and Kähler checks.
//!
//! For a homomorphism `ξ: g → h` the tension is `τ(ξ) = U^ξ − ξ(U^g)` where
//! `U^ξ = Σ B_{ξ b_a} ξ b_a` over a `g`-orthonormal basis and `B` is the
//! Levi-Civita product of `h`. The map is harmonic iff `τ = 0` and biharmonic
//! iff the bitension `τ₂` vanishes. Both `U^ξ` and `τ₂` are computed by two
//! independent formulas that must agree.

mod kahler;
mod submersion;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::{metric_adjoint, EuclideanLieAlgebra, Subalgebra};
use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::{Error, Result, Scalar};

pub use kahler::{is_holomorphic, KahlerStructure};
pub use submersion::{check_composition, SubmersionSplit, TensionFieldCriteria};

/// Linear map `ξ: g → h` between Euclidean Lie algebras, stored as a
/// `dim h × dim g` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraMap<T = f64> {
    source: EuclideanLieAlgebra<T>,
    target: EuclideanLieAlgebra<T>,
    xi: Matrix<T>,
}

/// Predicates reported by [`LieAlgebraMap::classify`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFlags {
    pub harmonic: bool,
    pub biharmonic: bool,
    pub riemannian_immersion: bool,
    pub riemannian_submersion: bool,
}

/// Self-check residuals gathered during classification.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MapDefects {
    /// Largest `‖ξ[e_i,e_j] − [ξe_i, ξe_j]‖`.
    pub homomorphism: f64,
    /// Disagreement of the two formulas for `U^ξ`.
    pub image_unimodular: f64,
    /// Disagreement of the two formulas for `τ₂`.
    pub bitension: f64,
}

/// Tension, bitension and flags of a homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct MapClassification<T = f64> {
    pub tension: Vec<T>,
    pub bitension: Vec<T>,
    pub flags: MapFlags,
    pub defects: MapDefects,
}

impl<T: Scalar> LieAlgebraMap<T> {
    /// Wraps a matrix without checking the bracket; see [`Self::homomorphism`].
    pub fn new(
        source: EuclideanLieAlgebra<T>,
        target: EuclideanLieAlgebra<T>,
        xi: Matrix<T>,
    ) -> Result<Self> {
        if xi.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: xi.rows(),
            });
        }
        if xi.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: xi.cols(),
            });
        }
        if !xi.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { source, target, xi })
    }

    /// Like [`Self::new`] but rejects matrices that do not preserve brackets.
    pub fn homomorphism(
        source: EuclideanLieAlgebra<T>,
        target: EuclideanLieAlgebra<T>,
        xi: Matrix<T>,
        tol: &Tolerance,
    ) -> Result<Self> {
        let map = Self::new(source, target, xi)?;
        if !map.validate_hom(tol) {
            return Err(Error::NotHomomorphism {
                defect: map.hom_defect(),
            });
        }
        Ok(map)
    }

    pub fn identity(ela: EuclideanLieAlgebra<T>) -> Self {
        let n = ela.dim();
        Self {
            source: ela.clone(),
            target: ela,
            xi: Matrix::identity(n),
        }
    }

    /// Identity of the underlying algebra between two metrics.
    pub fn identity_between(
        source: EuclideanLieAlgebra<T>,
        target: EuclideanLieAlgebra<T>,
    ) -> Result<Self> {
        if source.algebra() != target.algebra() {
            return Err(Error::NotHomomorphism { defect: f64::NAN });
        }
        let n = source.dim();
        Self::new(source, target, Matrix::identity(n))
    }

    /// Inclusion of a subalgebra (with its induced metric) into its parent.
    pub fn inclusion(sub: &Subalgebra<T>) -> Result<Self> {
        Self::new(
            sub.as_euclidean()?,
            sub.parent().clone(),
            sub.basis_matrix().clone(),
        )
    }

    pub fn source(&self) -> &EuclideanLieAlgebra<T> {
        &self.source
    }

    pub fn target(&self) -> &EuclideanLieAlgebra<T> {
        &self.target
    }

    pub fn xi(&self) -> &Matrix<T> {
        &self.xi
    }

    pub fn apply(&self, u: &[T]) -> Vec<T> {
        self.xi.mul_vec(u)
    }

    /// `ψ ∘ self`; the target of `self` must be the source of `psi`.
    pub fn then(&self, psi: &Self) -> Result<Self> {
        if !same_euclidean(&self.target, &psi.source) {
            return Err(Error::NotComposable);
        }
        Self::new(self.source.clone(), psi.target.clone(), &psi.xi * &self.xi)
    }

    /// Largest `‖ξ[e_i,e_j] − [ξe_i, ξe_j]‖` over source basis pairs.
    pub fn hom_defect(&self) -> f64 {
        let n = self.source.dim();
        let cols = self.xi.columns();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.xi.mul_vec(&self.source.algebra().bracket_basis(i, j));
                let rhs = self.target.algebra().bracket_unchecked(&cols[i], &cols[j]);
                let d = vector::norm(&vector::sub(&lhs, &rhs));
                worst = if T::EXACT && d == 0.0 && !vector::is_zero(&vector::sub(&lhs, &rhs)) {
                    worst.max(f64::MIN_POSITIVE)
                } else {
                    worst.max(d)
                };
            }
        }
        worst
    }

    fn hom_scale(&self) -> f64 {
        let x = self.xi.max_abs();
        x * x * self.target.algebra().scale() + x * self.source.algebra().scale()
    }

    pub fn validate_hom(&self, tol: &Tolerance) -> bool {
        let d = self.hom_defect();
        if T::EXACT {
            return d == 0.0;
        }
        tol.accepts(d, self.hom_scale())
    }

    /// `ξ* = G_g⁻¹·ξᵀ·G_h`.
    pub fn adjoint(&self) -> Matrix<T> {
        metric_adjoint(&self.xi, self.source.metric(), self.target.metric())
    }

    /// `U^ξ = Σ_jk G_g⁻¹_jk B_{ξe_j} ξe_k`.
    pub fn image_unimodular_by_sum(&self) -> Vec<T> {
        let n = self.source.dim();
        let ginv = self.source.metric().gram_inv();
        let cols = self.xi.columns();
        let mut out = vector::zeros(self.target.dim());
        for j in 0..n {
            if vector::is_zero(&cols[j]) {
                continue;
            }
            let bj = self.target.lc_operator(&cols[j]);
            for k in 0..n {
                let w = &ginv[(j, k)];
                if !w.is_zero() {
                    vector::axpy(&mut out, w, &bj.mul_vec(&cols[k]));
                }
            }
        }
        out
    }

    /// `U^ξ` from `⟨U^ξ, u⟩ = tr(ξ*∘ad_u∘ξ)`.
    pub fn image_unimodular_by_trace(&self) -> Vec<T> {
        let m = self.target.dim();
        let adj = self.adjoint();
        let covector: Vec<T> = (0..m)
            .map(|a| (&(&adj * self.target.ad_basis(a)) * &self.xi).trace())
            .collect();
        self.target.metric().raise(&covector)
    }

    fn image_unimodular_scale(&self) -> f64 {
        let x = self.xi.max_abs();
        let n = self.source.dim().max(1) as f64;
        n * x
            * x
            * self.target.algebra().scale()
            * (1.0 + self.source.metric().gram_inv().max_abs())
    }

    /// `U^ξ` after checking that both formulas agree within `10·tol`.
    pub fn image_unimodular_vector(&self, tol: &Tolerance) -> Result<Vec<T>> {
        let (v, defect) = self.image_unimodular_with_defect();
        if !agrees::<T>(defect, &tol.times(10.0), self.image_unimodular_scale()) {
            return Err(Error::OracleMismatch {
                quantity: "image unimodular vector",
                defect,
            });
        }
        Ok(v)
    }

    fn image_unimodular_with_defect(&self) -> (Vec<T>, f64) {
        let a = self.image_unimodular_by_sum();
        let b = self.image_unimodular_by_trace();
        let defect = exact_aware_norm(&vector::sub(&a, &b));
        (a, defect)
    }

    /// Tension field `τ(ξ) = U^ξ − ξ(U^g)`.
    pub fn tension(&self, tol: &Tolerance) -> Result<Vec<T>> {
        let uxi = self.image_unimodular_vector(tol)?;
        Ok(self.tension_from(&uxi))
    }

    fn tension_from(&self, uxi: &[T]) -> Vec<T> {
        vector::sub(uxi, &self.xi.mul_vec(&self.source.unimodular_vector()))
    }

    /// `τ₂ = −Σ_jk G_g⁻¹_jk (B_{ξe_j}B_{ξe_k}τ + K(τ, ξe_j)ξe_k) + B_{ξU^g}τ`.
    pub fn bitension_by_connection(&self, tau: &[T]) -> Vec<T> {
        let n = self.source.dim();
        let m = self.target.dim();
        let ginv = self.source.metric().gram_inv();
        let cols = self.xi.columns();
        let bs: Vec<Matrix<T>> = cols.iter().map(|c| self.target.lc_operator(c)).collect();
        let ks: Vec<Matrix<T>> = cols.iter().map(|c| self.target.curvature(tau, c)).collect();
        let mut out = vector::zeros(m);
        for j in 0..n {
            for k in 0..n {
                let w = &ginv[(j, k)];
                if w.is_zero() {
                    continue;
                }
                let term = vector::add(
                    &bs[j].mul_vec(&bs[k].mul_vec(tau)),
                    &ks[j].mul_vec(&cols[k]),
                );
                vector::axpy(&mut out, &(-w.clone()), &term);
            }
        }
        let xu = self.xi.mul_vec(&self.source.unimodular_vector());
        vector::add(&out, &self.target.lc_apply(&xu, tau))
    }

    /// `τ₂` from
    /// `⟨τ₂, u⟩ = tr(ξ*∘(ad_u + ad_u*)∘ad_τ∘ξ) − ⟨[u,τ],τ⟩ − ⟨[τ,U^ξ],u⟩`.
    pub fn bitension_by_trace(&self, tau: &[T], uxi: &[T]) -> Vec<T> {
        let m = self.target.dim();
        let h = &self.target;
        let adj = self.adjoint();
        let ad_tau_xi = &h.ad(tau) * &self.xi;
        let t_uxi = h.algebra().bracket_unchecked(tau, uxi);
        let covector: Vec<T> = (0..m)
            .map(|a| {
                let u = vector::unit::<T>(m, a);
                let adu = h.ad_basis(a);
                let s = adu + &h.metric().adjoint(adu);
                let tr = (&(&adj * &s) * &ad_tau_xi).trace();
                let u_tau = h.algebra().bracket_unchecked(&u, tau);
                tr - h.inner(&u_tau, tau) - h.inner(&t_uxi, &u)
            })
            .collect();
        h.metric().raise(&covector)
    }

    fn bitension_scale(&self, tau: &[T]) -> f64 {
        let x = self.xi.max_abs();
        let s = self.target.algebra().scale();
        let n = self.source.dim().max(1) as f64;
        let ginv = self.source.metric().gram_inv().max_abs().max(1.0);
        let gh = self.target.gram().max_abs().max(1.0)
            * self.target.metric().gram_inv().max_abs().max(1.0);
        let u = vector::norm(&self.source.unimodular_vector());
        n * n * vector::norm(tau) * s * gh * (x * x * s * ginv * gh + x * u)
    }

    /// Bitension field, after checking both formulas agree within `10·tol`.
    pub fn bitension(&self, tol: &Tolerance) -> Result<Vec<T>> {
        let uxi = self.image_unimodular_vector(tol)?;
        let tau = self.tension_from(&uxi);
        let (v, defect) = self.bitension_with_defect(&tau, &uxi);
        if !agrees::<T>(defect, &tol.times(10.0), self.bitension_scale(&tau)) {
            return Err(Error::OracleMismatch {
                quantity: "bitension",
                defect,
            });
        }
        Ok(v)
    }

    fn bitension_with_defect(&self, tau: &[T], uxi: &[T]) -> (Vec<T>, f64) {
        let a = self.bitension_by_connection(tau);
        let b = self.bitension_by_trace(tau, uxi);
        let defect = exact_aware_norm(&vector::sub(&a, &b));
        (a, defect)
    }

    /// `ξᵀ·G_h·ξ = G_g`.
    pub fn is_riemannian_immersion(&self, tol: &Tolerance) -> bool {
        let pulled = &(&self.xi.transpose() * self.target.gram()) * &self.xi;
        let d = &pulled - self.source.gram();
        d.within(tol.bound(self.source.gram().max_abs()))
    }

    /// Residual of `ξ·G_g⁻¹·ξᵀ = G_h⁻¹`, which holds iff `ξ` is an isometry on
    /// `(ker ξ)^⊥` onto `h`.
    pub fn submersion_defect(&self) -> f64 {
        let pushed = &(&self.xi * self.source.metric().gram_inv()) * &self.xi.transpose();
        let d = &pushed - self.target.metric().gram_inv();
        if T::EXACT && !d.is_zero() {
            return d.max_abs().max(f64::MIN_POSITIVE);
        }
        d.max_abs()
    }

    pub fn is_surjective(&self, tol: &Tolerance) -> bool {
        linalg::rank(&self.xi, tol) == self.target.dim()
    }

    pub fn is_riemannian_submersion(&self, tol: &Tolerance) -> bool {
        if !self.is_surjective(tol) {
            return false;
        }
        let d = self.submersion_defect();
        if T::EXACT {
            return d == 0.0;
        }
        tol.accepts(d, self.target.metric().gram_inv().max_abs())
    }

    /// Threshold below which `τ` counts as zero:
    /// `tol.abs + tol.rel·(‖ξ‖·‖U^g‖ + ‖U^ξ‖)`.
    pub fn harmonic_threshold(&self, uxi: &[T], tol: &Tolerance) -> f64 {
        let ug = vector::norm(&self.source.unimodular_vector());
        tol.bound(self.xi.norm() * ug + vector::norm(uxi))
    }

    /// Tension, bitension and all flags.
    pub fn classify(&self, tol: &Tolerance) -> Result<MapClassification<T>> {
        let hom = self.hom_defect();
        if !self.validate_hom(tol) {
            return Err(Error::NotHomomorphism { defect: hom });
        }
        let uxi = self.image_unimodular_vector(tol)?;
        let (_, uxi_defect) = self.image_unimodular_with_defect();
        let tension = self.tension_from(&uxi);
        let (bitension, bit_defect) = self.bitension_with_defect(&tension, &uxi);
        if !agrees::<T>(bit_defect, &tol.times(10.0), self.bitension_scale(&tension)) {
            return Err(Error::OracleMismatch {
                quantity: "bitension",
                defect: bit_defect,
            });
        }
        let harmonic = vector::within(&tension, self.harmonic_threshold(&uxi, tol));
        let biharmonic =
            harmonic || vector::within(&bitension, tol.bound(self.bitension_scale(&tension)));
        let flags = MapFlags {
            harmonic,
            biharmonic,
            riemannian_immersion: self.is_riemannian_immersion(tol),
            riemannian_submersion: self.is_riemannian_submersion(tol),
        };
        let defects = MapDefects {
            homomorphism: hom,
            image_unimodular: uxi_defect,
            bitension: bit_defect,
        };
        Ok(MapClassification {
            tension,
            bitension,
            flags,
            defects,
        })
    }

    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S) -> LieAlgebraMap<S> {
        LieAlgebraMap {
            source: self.source.map_scalars(&f),
            target: self.target.map_scalars(&f),
            xi: self.xi.map_to(&f),
        }
    }
}

/// Norm that never rounds a nonzero exact residual down to `0.0`.
fn exact_aware_norm<T: Scalar>(v: &[T]) -> f64 {
    let d = vector::norm(v);
    if T::EXACT && d == 0.0 && !vector::is_zero(v) {
        f64::MIN_POSITIVE
    } else {
        d
    }
}

fn agrees<T: Scalar>(defect: f64, tol: &Tolerance, scale: f64) -> bool {
    if T::EXACT {
        defect == 0.0
    } else {
        tol.accepts(defect, scale)
    }
}

/// Same algebra and metric, up to the default tolerance for floats.
pub(crate) fn same_euclidean<T: Scalar>(
    a: &EuclideanLieAlgebra<T>,
    b: &EuclideanLieAlgebra<T>,
) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    if T::EXACT {
        return a.algebra() == b.algebra() && a.gram() == b.gram();
    }
    let tol = Tolerance::default();
    let n = a.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = vector::sub(
                &a.algebra().bracket_basis(i, j),
                &b.algebra().bracket_basis(i, j),
            );
            worst = worst.max(vector::max_abs(&d));
        }
    }
    let scale = a.algebra().scale().max(a.gram().max_abs());
    worst = worst.max((a.gram() - b.gram()).max_abs());
    tol.accepts(worst, scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{InnerProduct, LieAlgebra};
    use crate::Rational;
    use alloc::vec;

    fn e1(a: f64) -> EuclideanLieAlgebra {
        EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(2, [(0, 1, vec![(0, a)])]).unwrap(),
        )
    }

    fn heis() -> EuclideanLieAlgebra {
        EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(3, [(1, 2, vec![(0, 1.0)])]).unwrap(),
        )
    }

    fn line() -> EuclideanLieAlgebra {
        EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(1))
    }

    #[test]
    fn identity_is_a_harmonic_homomorphism() {
        let tol = Tolerance::default();
        for g in [e1(1.3), heis()] {
            let id = LieAlgebraMap::identity(g);
            assert!(id.validate_hom(&tol));
            let c = id.classify(&tol).unwrap();
            assert!(c.flags.harmonic && c.flags.biharmonic);
            assert!(c.flags.riemannian_immersion && c.flags.riemannian_submersion);
        }
    }

    #[test]
    fn e1_self_map_homomorphism_condition() {
        // ξ(e) = λe, ξ(f) = pe + qf is a homomorphism iff λ(q − 1) = 0.
        let tol = Tolerance::default();
        let good = Matrix::from_rows(&[vec![2.0, 0.7], vec![0.0, 1.0]]).unwrap();
        assert!(LieAlgebraMap::homomorphism(e1(1.0), e1(1.0), good, &tol).is_ok());
        let bad = Matrix::from_rows(&[vec![2.0, 0.7], vec![0.0, 3.0]]).unwrap();
        assert!(matches!(
            LieAlgebraMap::homomorphism(e1(1.0), e1(1.0), bad, &tol),
            Err(Error::NotHomomorphism { .. })
        ));
        let zero_lambda = Matrix::from_rows(&[vec![0.0, 0.7], vec![0.0, 3.0]]).unwrap();
        assert!(LieAlgebraMap::homomorphism(e1(1.0), e1(1.0), zero_lambda, &tol).is_ok());
    }

    #[test]
    fn heisenberg_swap_needs_sign_on_center() {
        let tol = Tolerance::default();
        let swap = Matrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(!LieAlgebraMap::new(heis(), heis(), swap)
            .unwrap()
            .validate_hom(&tol));
        let signed = Matrix::from_rows(&[
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(LieAlgebraMap::new(heis(), heis(), signed)
            .unwrap()
            .validate_hom(&tol));
    }

    #[test]
    fn image_unimodular_examples() {
        let tol = Tolerance::default();
        let a = 0.9;
        let id = LieAlgebraMap::identity(e1(a));
        let u = id.image_unimodular_vector(&tol).unwrap();
        assert!(vector::norm(&vector::sub(&u, &[0.0, -a])) < 1e-14);
        let zero = LieAlgebraMap::new(e1(a), heis(), Matrix::zeros(3, 2)).unwrap();
        assert_eq!(zero.image_unimodular_vector(&tol).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn e1_character_is_biharmonic_not_harmonic() {
        let tol = Tolerance::default();
        let a = 1.6;
        let chi = LieAlgebraMap::homomorphism(
            e1(a),
            line(),
            Matrix::from_rows(&[vec![0.0, 1.0]]).unwrap(),
            &tol,
        )
        .unwrap();
        let c = chi.classify(&tol).unwrap();
        assert!((c.tension[0] - a).abs() < 1e-14);
        assert!(!c.flags.harmonic);
        assert!(c.flags.biharmonic);
        assert!(c.flags.riemannian_submersion);
    }

    #[test]
    fn line_inclusions_into_e1() {
        let tol = Tolerance::default();
        let f = Subalgebra::new(e1(1.0), vec![vec![0.0, 1.0]], &tol).unwrap();
        let c = LieAlgebraMap::inclusion(&f)
            .unwrap()
            .classify(&tol)
            .unwrap();
        assert!(c.flags.riemannian_immersion && c.flags.harmonic);
        let e = Subalgebra::new(e1(1.0), vec![vec![1.0, 0.0]], &tol).unwrap();
        let c = LieAlgebraMap::inclusion(&e)
            .unwrap()
            .classify(&tol)
            .unwrap();
        assert!(c.flags.riemannian_immersion && !c.flags.harmonic);
    }

    #[test]
    fn dual_formulas_agree_on_a_non_diagonal_example() {
        let tol = Tolerance::default();
        let sol = LieAlgebra::from_brackets(
            3,
            [(0, 1, vec![(1, 1.0)]), (0, 2, vec![(1, 0.5), (2, 2.0)])],
        )
        .unwrap();
        let g1 = Matrix::from_rows(&[
            vec![2.0, 0.3, 0.1],
            vec![0.3, 1.0, -0.2],
            vec![0.1, -0.2, 1.5],
        ])
        .unwrap();
        let g2 = Matrix::from_rows(&[
            vec![1.0, -0.4, 0.0],
            vec![-0.4, 2.0, 0.6],
            vec![0.0, 0.6, 0.8],
        ])
        .unwrap();
        let src =
            EuclideanLieAlgebra::new(sol.clone(), InnerProduct::new(g1, &tol).unwrap()).unwrap();
        let tgt = EuclideanLieAlgebra::new(sol, InnerProduct::new(g2, &tol).unwrap()).unwrap();
        let id = LieAlgebraMap::identity_between(src, tgt).unwrap();
        let uxi = id.image_unimodular_by_sum();
        assert!(vector::norm(&vector::sub(&uxi, &id.image_unimodular_by_trace())) < 1e-12);
        let tau = id.tension(&tol).unwrap();
        assert!(vector::norm(&tau) > 1e-3);
        let a = id.bitension_by_connection(&tau);
        let b = id.bitension_by_trace(&tau, &uxi);
        assert!(vector::norm(&vector::sub(&a, &b)) < 1e-11);
    }

    #[test]
    fn exact_classification_of_e1_character() {
        let tol = Tolerance::default();
        let a = Rational::new(5, 3);
        let alg = LieAlgebra::from_brackets(2, [(0, 1, vec![(0, a.clone())])]).unwrap();
        let src = EuclideanLieAlgebra::with_identity_metric(alg);
        let tgt = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(1));
        let xi = Matrix::from_rows(&[vec![Rational::zero(), Rational::one()]]).unwrap();
        let c = LieAlgebraMap::homomorphism(src, tgt, xi, &tol)
            .unwrap()
            .classify(&tol)
            .unwrap();
        assert_eq!(c.tension, vec![a]);
        assert_eq!(c.bitension, vec![Rational::zero()]);
        assert!(!c.flags.harmonic && c.flags.biharmonic);
    }

    #[test]
    fn composition_requires_matching_ends() {
        let id = LieAlgebraMap::identity(e1(1.0));
        let other = LieAlgebraMap::identity(heis());
        assert_eq!(id.then(&other), Err(Error::NotComposable));
        assert!(id.then(&id).is_ok());
    }
}
