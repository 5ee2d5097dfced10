use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{agrees, LieAlgebraMap};
use crate::algebra::Subalgebra;
use crate::linalg::{self, vector, Tolerance};
use crate::{Error, Result, Scalar};

/// A surjective homomorphism split into its kernel and the induced
/// isomorphism from the quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmersionSplit<T = f64> {
    /// `ker ξ` with the induced metric.
    pub kernel: Subalgebra<T>,
    /// Mean curvature vector of the kernel, in source coordinates.
    pub mean_curvature: Vec<T>,
    /// `ξ̄: (g / ker ξ, restricted metric) → h`.
    pub quotient_map: LieAlgebraMap<T>,
    /// `‖τ(ξ) − τ(ξ̄) + ξ(H)‖`.
    pub defect: f64,
}

/// How far the tension field of a Riemannian submersion is from being a
/// Killing, resp. parallel, left-invariant vector field.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensionFieldCriteria {
    /// `‖ad_τ + ad_τ*‖`.
    pub killing_defect: f64,
    /// `max_i ‖B_{e_i} τ‖`.
    pub parallel_defect: f64,
}

impl<T: Scalar> LieAlgebraMap<T> {
    /// Splits a surjective map as `g → g / ker ξ ≅ h` and checks
    /// `τ(ξ) = τ(ξ̄) − ξ(H^{ker ξ})` within `10·tol`.
    pub fn submersion_split(&self, tol: &Tolerance) -> Result<SubmersionSplit<T>> {
        if !self.is_surjective(tol) {
            return Err(Error::NotSurjective);
        }
        let kernel_basis = linalg::nullspace(self.xi(), tol);
        let kernel = Subalgebra::new(self.source().clone(), kernel_basis, &tol.times(10.0))?;
        let quotient = kernel.quotient()?;
        let quotient_map = LieAlgebraMap::new(
            quotient.algebra.clone(),
            self.target().clone(),
            self.xi() * &quotient.lift,
        )?;
        let mean_curvature = kernel.mean_curvature()?;

        let tau = self.tension(tol)?;
        let tau_bar = quotient_map.tension(tol)?;
        let predicted = vector::sub(&tau_bar, &self.apply(&mean_curvature));
        let diff = vector::sub(&tau, &predicted);
        let defect = vector::norm(&diff);
        let scale = self.xi().norm()
            * (vector::norm(&self.source().unimodular_vector()) + vector::norm(&mean_curvature))
            + vector::norm(&self.image_unimodular_by_sum())
            + vector::norm(&tau_bar);
        if !agrees::<T>(defect, &tol.times(10.0), scale) || (T::EXACT && !vector::is_zero(&diff)) {
            return Err(Error::OracleMismatch {
                quantity: "submersion tension split",
                defect,
            });
        }
        Ok(SubmersionSplit {
            kernel,
            mean_curvature,
            quotient_map,
            defect,
        })
    }

    /// Killing and parallel defects of `τ(ξ)`; `self` must be a Riemannian submersion.
    pub fn tension_field_criteria(&self, tol: &Tolerance) -> Result<TensionFieldCriteria> {
        if !self.is_riemannian_submersion(tol) {
            return Err(Error::NotRiemannianSubmersion {
                defect: self.submersion_defect(),
            });
        }
        let tau = self.tension(tol)?;
        Ok(TensionFieldCriteria {
            killing_defect: self.target().killing_defect(&tau),
            parallel_defect: self.target().parallel_defect(&tau),
        })
    }

    /// `‖τ(ψ∘φ) − τ(ψ) − ψ(τ(φ))‖` for a Riemannian submersion `φ = self`.
    pub fn composition_defect(&self, psi: &LieAlgebraMap<T>, tol: &Tolerance) -> Result<f64> {
        if !self.is_riemannian_submersion(tol) {
            return Err(Error::NotRiemannianSubmersion {
                defect: self.submersion_defect(),
            });
        }
        let composed = self.then(psi)?;
        let lhs = composed.tension(tol)?;
        let rhs = vector::add(&psi.tension(tol)?, &psi.apply(&self.tension(tol)?));
        Ok(vector::norm(&vector::sub(&lhs, &rhs)))
    }
}

/// Free-function form of [`LieAlgebraMap::composition_defect`].
pub fn check_composition<T: Scalar>(
    phi: &LieAlgebraMap<T>,
    psi: &LieAlgebraMap<T>,
    tol: &Tolerance,
) -> Result<f64> {
    phi.composition_defect(psi, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{EuclideanLieAlgebra, InnerProduct, LieAlgebra};
    use crate::Matrix;
    use alloc::vec;

    fn heis_with(gram: Matrix<f64>) -> EuclideanLieAlgebra {
        let alg = LieAlgebra::from_brackets(3, [(1, 2, vec![(0, 1.0)])]).unwrap();
        EuclideanLieAlgebra::new(alg, InnerProduct::new(gram, &Tolerance::default()).unwrap())
            .unwrap()
    }

    #[test]
    fn identity_split_is_trivial() {
        let tol = Tolerance::default();
        let g = heis_with(Matrix::identity(3));
        let split = LieAlgebraMap::identity(g).submersion_split(&tol).unwrap();
        assert_eq!(split.kernel.dim(), 0);
        assert!(split.defect < 1e-14);
    }

    #[test]
    fn heisenberg_onto_center_quotient() {
        let tol = Tolerance::default();
        let gram = Matrix::from_rows(&[
            vec![2.0, 0.3, -0.2],
            vec![0.3, 1.5, 0.4],
            vec![-0.2, 0.4, 1.0],
        ])
        .unwrap();
        let g = heis_with(gram);
        let plane = EuclideanLieAlgebra::new(
            LieAlgebra::abelian(2),
            InnerProduct::new(
                Matrix::from_rows(&[vec![1.0, 0.2], vec![0.2, 0.7]]).unwrap(),
                &tol,
            )
            .unwrap(),
        )
        .unwrap();
        let xi = Matrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let map = LieAlgebraMap::homomorphism(g, plane, xi, &tol).unwrap();
        let split = map.submersion_split(&tol).unwrap();
        assert_eq!(split.kernel.dim(), 1);
        assert!(split.defect < 1e-12);
    }

    #[test]
    fn non_surjective_rejected() {
        let tol = Tolerance::default();
        let g = heis_with(Matrix::identity(3));
        let plane = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(2));
        let xi = Matrix::from_rows(&[vec![0.0, 1.0, 0.0], vec![0.0, 2.0, 0.0]]).unwrap();
        let map = LieAlgebraMap::new(g, plane, xi).unwrap();
        assert_eq!(
            map.submersion_split(&tol).unwrap_err(),
            Error::NotSurjective
        );
    }
}
