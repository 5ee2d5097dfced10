use super::LieAlgebraMap;
use crate::algebra::EuclideanLieAlgebra;
use crate::linalg::{Matrix, Tolerance};
use crate::{Error, Result, Scalar};

/// Left-invariant almost complex structure `J` on a Euclidean Lie algebra.
///
/// It is Kähler when `J² = −1`, `J` is an isometry and `J` commutes with
/// every `A_u`.
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerStructure<T = f64> {
    base: EuclideanLieAlgebra<T>,
    j: Matrix<T>,
}

impl<T: Scalar> KahlerStructure<T> {
    pub fn new(base: EuclideanLieAlgebra<T>, j: Matrix<T>) -> Result<Self> {
        if j.rows() != base.dim() || j.cols() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: j.rows(),
            });
        }
        Ok(Self { base, j })
    }

    pub fn base(&self) -> &EuclideanLieAlgebra<T> {
        &self.base
    }

    pub fn j(&self) -> &Matrix<T> {
        &self.j
    }

    /// Largest residual among `J² + 1`, `JᵀGJ − G` and `[A_{e_i}, J]`.
    pub fn defect(&self) -> f64 {
        let n = self.base.dim();
        let id = Matrix::<T>::identity(n);
        let square = (&(&self.j * &self.j) + &id).max_abs();
        let g = self.base.gram();
        let isometry = (&(&(&self.j.transpose() * g) * &self.j) - g).max_abs();
        let parallel = (0..n)
            .map(|i| self.base.lc_basis(i).commutator(&self.j).max_abs())
            .fold(0.0, f64::max);
        square.max(isometry).max(parallel)
    }

    pub fn check(&self, tol: &Tolerance) -> bool {
        let exact_ok = || {
            let n = self.base.dim();
            let id = Matrix::<T>::identity(n);
            let g = self.base.gram();
            (&(&self.j * &self.j) + &id).is_zero()
                && (&(&(&self.j.transpose() * g) * &self.j) - g).is_zero()
                && (0..n).all(|i| self.base.lc_basis(i).commutator(&self.j).is_zero())
        };
        if T::EXACT {
            return exact_ok();
        }
        let jm = self.j.max_abs().max(1.0);
        let scale =
            self.base.gram().max_abs().max(1.0) * jm * jm + self.base.algebra().scale() * jm;
        tol.accepts(self.defect(), scale)
    }
}

/// `ξ∘J_src = J_tgt∘ξ` within tolerance.
pub fn is_holomorphic<T: Scalar>(
    map: &LieAlgebraMap<T>,
    src: &KahlerStructure<T>,
    tgt: &KahlerStructure<T>,
    tol: &Tolerance,
) -> bool {
    if src.j.rows() != map.source().dim() || tgt.j.rows() != map.target().dim() {
        return false;
    }
    let d = &(map.xi() * &src.j) - &(&tgt.j * map.xi());
    let scale = map.xi().max_abs() * src.j.max_abs().max(tgt.j.max_abs());
    d.within(tol.bound(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra;
    use alloc::vec;

    fn standard_j() -> Matrix<f64> {
        Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap()
    }

    #[test]
    fn flat_plane_is_kahler_and_identity_holomorphic() {
        let tol = Tolerance::default();
        let plane = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(2));
        let k = KahlerStructure::new(plane.clone(), standard_j()).unwrap();
        assert!(k.check(&tol));
        let id = LieAlgebraMap::identity(plane);
        assert!(is_holomorphic(&id, &k, &k, &tol));
        assert!(id.classify(&tol).unwrap().flags.harmonic);
    }

    #[test]
    fn e1_is_kahler() {
        let tol = Tolerance::default();
        let e1 = EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(2, [(0, 1, vec![(0, 1.3)])]).unwrap(),
        );
        assert!(KahlerStructure::new(e1, standard_j()).unwrap().check(&tol));
    }

    #[test]
    fn non_commuting_map_is_not_holomorphic() {
        let tol = Tolerance::default();
        let plane = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(2));
        let k = KahlerStructure::new(plane.clone(), standard_j()).unwrap();
        let xi = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
        let map = LieAlgebraMap::new(plane.clone(), plane, xi).unwrap();
        assert!(!is_holomorphic(&map, &k, &k, &tol));
    }

    #[test]
    fn non_complex_structure_rejected() {
        let plane = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::<f64>::abelian(2));
        let k = KahlerStructure::new(plane, Matrix::identity(2)).unwrap();
        assert!(!k.check(&Tolerance::default()));
    }
}
