//! Submersions `n ⊕ h → h` rebuilt from their kernel, base and gluing data.
//!
//! A submersion with simply connected domain is determined by
//! `(n, h, ρ, ω)`: the kernel `n` with its metric, the base `h` with a
//! domain-side metric `⟨,⟩₁` and a target-side metric `⟨,⟩₂`, an action
//! `ρ: h → Der(n)` and a 2-form `ω: h × h → n`. The pair `(ρ, ω)` must
//! satisfy
//!
//! ```text
//! ρ([h₁,h₂]) = [ρ(h₁), ρ(h₂)] − ad_{ω(h₁,h₂)}
//! Σ_cyc ρ(h₁)ω(h₂,h₃) − ω([h₁,h₂], h₃) = 0
//! ```

mod recipes;

pub use recipes::{
    closing_example, closing_system, flat_base_builder, recipe_biharmonic_submersion,
    recipe_harmonic_submersion, recipe_riemannian_biharmonic, BiharmonicVariant, Certified,
};

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::{EuclideanLieAlgebra, InnerProduct, LieAlgebra};
use crate::linalg::{vector, Matrix, Tolerance};
use crate::maps::LieAlgebraMap;
use crate::{Error, Result, Scalar};

/// Values of a 2-form `h × h → n`, indexed `[i][j]` by basis vectors of `h`.
pub type TwoForm<T> = Vec<Vec<Vec<T>>>;

/// The zero 2-form.
pub fn zero_form<T: Scalar>(base_dim: usize, kernel_dim: usize) -> TwoForm<T> {
    vec![vec![vector::zeros(kernel_dim); base_dim]; base_dim]
}

/// The base of a submersion: one Lie algebra carrying the metric pulled back
/// from the domain and the metric of the target.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseAlgebra<T = f64> {
    algebra: LieAlgebra<T>,
    domain: InnerProduct<T>,
    target: InnerProduct<T>,
}

impl<T: Scalar> BaseAlgebra<T> {
    pub fn new(
        algebra: LieAlgebra<T>,
        domain: InnerProduct<T>,
        target: InnerProduct<T>,
    ) -> Result<Self> {
        for m in [&domain, &target] {
            if m.dim() != algebra.dim() {
                return Err(Error::DimensionMismatch {
                    expected: algebra.dim(),
                    found: m.dim(),
                });
            }
        }
        Ok(Self {
            algebra,
            domain,
            target,
        })
    }

    /// Same metric on both sides, so the projection is a Riemannian submersion.
    pub fn riemannian(ela: &EuclideanLieAlgebra<T>) -> Self {
        Self {
            algebra: ela.algebra().clone(),
            domain: ela.metric().clone(),
            target: ela.metric().clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.algebra
    }

    pub fn domain_metric(&self) -> &InnerProduct<T> {
        &self.domain
    }

    pub fn target_metric(&self) -> &InnerProduct<T> {
        &self.target
    }

    pub fn domain_ela(&self) -> EuclideanLieAlgebra<T> {
        EuclideanLieAlgebra::new(self.algebra.clone(), self.domain.clone())
            .expect("dimensions checked")
    }

    pub fn target_ela(&self) -> EuclideanLieAlgebra<T> {
        EuclideanLieAlgebra::new(self.algebra.clone(), self.target.clone())
            .expect("dimensions checked")
    }

    /// `Id: (h, ⟨,⟩₁) → (h, ⟨,⟩₂)`.
    pub fn identity_map(&self) -> LieAlgebraMap<T> {
        LieAlgebraMap::identity_between(self.domain_ela(), self.target_ela())
            .expect("same dimension")
    }
}

/// Defects of the two compatibility equations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// Largest entry of `ρ([h_i,h_j]) − [ρ_i, ρ_j] + ad_{ω(h_i,h_j)}`.
    pub bracket_defect: f64,
    /// Largest norm of the cyclic sum `d_ρω(h_i, h_j, h_k)`.
    pub cocycle_defect: f64,
    pub holds: bool,
}

/// `(n, h, ρ, ω)` with every `ρ(h_i)` checked to be a derivation of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectData<T = f64> {
    kernel: EuclideanLieAlgebra<T>,
    base: BaseAlgebra<T>,
    rho: Vec<Matrix<T>>,
    omega: TwoForm<T>,
}

impl<T: Scalar> SemidirectData<T> {
    pub fn new(
        kernel: EuclideanLieAlgebra<T>,
        base: BaseAlgebra<T>,
        rho: Vec<Matrix<T>>,
        omega: TwoForm<T>,
        tol: &Tolerance,
    ) -> Result<Self> {
        let (p, q) = (kernel.dim(), base.dim());
        if rho.len() != q {
            return Err(Error::DimensionMismatch {
                expected: q,
                found: rho.len(),
            });
        }
        for r in &rho {
            if r.rows() != p || r.cols() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: r.rows(),
                });
            }
            if !r.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        if omega.len() != q
            || omega
                .iter()
                .any(|row| row.len() != q || row.iter().any(|v| v.len() != p))
        {
            return Err(Error::DimensionMismatch {
                expected: q,
                found: omega.len(),
            });
        }
        let om = omega
            .iter()
            .flatten()
            .map(|v| vector::max_abs(v))
            .fold(0.0, f64::max);
        for i in 0..q {
            for j in i..q {
                let sum = vector::add(&omega[i][j], &omega[j][i]);
                if !vector::within(&sum, tol.bound(om)) {
                    return Err(Error::BadParameter(alloc::format!(
                        "omega must be antisymmetric, entry ({i}, {j}) is not"
                    )));
                }
            }
        }
        let cn = kernel.algebra().scale();
        for (index, r) in rho.iter().enumerate() {
            let defect = kernel.algebra().derivation_defect(r);
            let ok = if T::EXACT {
                defect == 0.0
            } else {
                tol.accepts(defect, r.max_abs() * cn)
            };
            if !ok {
                return Err(Error::NotDerivation { index, defect });
            }
        }
        Ok(Self {
            kernel,
            base,
            rho,
            omega,
        })
    }

    /// `ρ = 0`, `ω = 0`: the direct product.
    pub fn direct_product(kernel: EuclideanLieAlgebra<T>, base: BaseAlgebra<T>) -> Self {
        let (p, q) = (kernel.dim(), base.dim());
        Self {
            rho: vec![Matrix::zeros(p, p); q],
            omega: zero_form(q, p),
            kernel,
            base,
        }
    }

    pub fn kernel(&self) -> &EuclideanLieAlgebra<T> {
        &self.kernel
    }

    pub fn base(&self) -> &BaseAlgebra<T> {
        &self.base
    }

    /// `ρ(h_i)` for each basis vector of `h`.
    pub fn rho(&self) -> &[Matrix<T>] {
        &self.rho
    }

    pub fn omega(&self) -> &TwoForm<T> {
        &self.omega
    }

    /// `ρ(u)` for `u ∈ h`.
    pub fn rho_of(&self, u: &[T]) -> Matrix<T> {
        let p = self.kernel.dim();
        let mut out = Matrix::zeros(p, p);
        for (ui, r) in u.iter().zip(&self.rho) {
            if !ui.is_zero() {
                out = &out + &r.scale(ui);
            }
        }
        out
    }

    /// `ω(u, v)` for `u, v ∈ h`.
    pub fn omega_of(&self, u: &[T], v: &[T]) -> Vec<T> {
        let mut out = vector::zeros(self.kernel.dim());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if !ui.is_zero() && !vj.is_zero() {
                    vector::axpy(&mut out, &(ui.clone() * vj.clone()), &self.omega[i][j]);
                }
            }
        }
        out
    }

    pub fn check_condition(&self, tol: &Tolerance) -> ConditionReport {
        let q = self.base.dim();
        let h = &self.base.algebra;
        let n = self.kernel.algebra();
        let rm = self.rho.iter().map(Matrix::max_abs).fold(0.0, f64::max);
        let om = self
            .omega
            .iter()
            .flatten()
            .map(|v| vector::max_abs(v))
            .fold(0.0, f64::max);
        let (ch, cn) = (h.scale(), n.scale());

        let mut bracket_defect: f64 = 0.0;
        let mut bracket_exact = true;
        for i in 0..q {
            for j in i + 1..q {
                let lhs = self.rho_of(&h.bracket_basis(i, j));
                let rhs = &self.rho[i].commutator(&self.rho[j]) - &n.ad(&self.omega[i][j]);
                let d = &lhs - &rhs;
                bracket_defect = bracket_defect.max(d.max_abs());
                bracket_exact &= d.is_zero();
            }
        }

        let mut cocycle_defect: f64 = 0.0;
        let mut cocycle_exact = true;
        for i in 0..q {
            for j in i + 1..q {
                for k in j + 1..q {
                    let sum = self.cocycle(i, j, k);
                    cocycle_defect = cocycle_defect.max(vector::norm(&sum));
                    cocycle_exact &= vector::is_zero(&sum);
                }
            }
        }

        let holds = if T::EXACT {
            bracket_exact && cocycle_exact
        } else {
            tol.accepts(bracket_defect, rm * rm + rm * ch + cn * om)
                && tol.accepts(cocycle_defect, rm * om + om * ch)
        };
        ConditionReport {
            bracket_defect,
            cocycle_defect,
            holds,
        }
    }

    /// `d_ρω(h_i, h_j, h_k)`.
    fn cocycle(&self, i: usize, j: usize, k: usize) -> Vec<T> {
        let q = self.base.dim();
        let h = &self.base.algebra;
        let mut sum = vector::zeros(self.kernel.dim());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            sum = vector::add(&sum, &self.rho[a].mul_vec(&self.omega[b][c]));
            let ab = h.bracket_basis(a, b);
            sum = vector::sub(&sum, &self.omega_of(&ab, &vector::unit(q, c)));
        }
        sum
    }

    /// The algebra `n ⊕ h` with metric `⟨,⟩_n ⊕ ⟨,⟩₁` and the projection onto
    /// `(h, ⟨,⟩₂)`.
    ///
    /// Kernel coordinates come first. Brackets: `[u,v]_n` on the kernel,
    /// `[u,v]_h + ω(u,v)` on the base, `ρ(u)v` across.
    pub fn build(&self, tol: &Tolerance) -> Result<(EuclideanLieAlgebra<T>, LieAlgebraMap<T>)> {
        let report = self.check_condition(tol);
        if !report.holds {
            return Err(Error::ConditionViolated {
                bracket_defect: report.bracket_defect,
                cocycle_defect: report.cocycle_defect,
            });
        }
        let (p, q) = (self.kernel.dim(), self.base.dim());
        let n = self.kernel.algebra();
        let h = &self.base.algebra;
        let algebra = LieAlgebra::from_fn(p + q, |i, j, k| match (i < p, j < p) {
            (true, true) => {
                if k < p {
                    n.constant(i, j, k).clone()
                } else {
                    T::zero()
                }
            }
            // i < j, so the base index is j: [n_i, h_j] = −ρ(h_j) n_i
            (true, false) => {
                if k < p {
                    -self.rho[j - p][(k, i)].clone()
                } else {
                    T::zero()
                }
            }
            (false, false) => {
                if k < p {
                    self.omega[i - p][j - p][k].clone()
                } else {
                    h.constant(i - p, j - p, k - p).clone()
                }
            }
            (false, true) => unreachable!("from_fn only asks for i < j"),
        });
        let loose = tol.times(10.0);
        algebra.validate(&loose)?;
        let gram = Matrix::from_fn(p + q, p + q, |a, b| match (a < p, b < p) {
            (true, true) => self.kernel.gram()[(a, b)].clone(),
            (false, false) => self.base.domain.gram()[(a - p, b - p)].clone(),
            _ => T::zero(),
        });
        let metric = InnerProduct::new(gram, tol)?;
        let total = EuclideanLieAlgebra::new(algebra, metric)?;
        let xi = Matrix::from_fn(
            q,
            p + q,
            |a, b| if b == a + p { T::one() } else { T::zero() },
        );
        let proj = LieAlgebraMap::homomorphism(total.clone(), self.base.target_ela(), xi, &loose)?;
        Ok((total, proj))
    }

    /// `H^ρ ∈ h`, the `⟨,⟩₁`-dual of `u ↦ tr ρ(u)`.
    pub fn h_rho(&self) -> Vec<T> {
        let traces: Vec<T> = self.rho.iter().map(Matrix::trace).collect();
        self.base.domain.raise(&traces)
    }

    /// `τ(Id_h) − H^ρ`, the tension the projection must have.
    pub fn predicted_tension(&self, tol: &Tolerance) -> Result<Vec<T>> {
        let tau_id = self.base.identity_map().tension(tol)?;
        Ok(vector::sub(&tau_id, &self.h_rho()))
    }

    /// Map scalars of every component.
    pub fn map_scalars<S: Scalar>(&self, f: impl Fn(&T) -> S + Copy) -> SemidirectData<S> {
        SemidirectData {
            kernel: self.kernel.map_scalars(f),
            base: BaseAlgebra {
                algebra: self.base.algebra.map_scalars(f),
                domain: self.base.domain.map_scalars(f),
                target: self.base.target.map_scalars(f),
            },
            rho: self.rho.iter().map(|r| r.map_to(f)).collect(),
            omega: self
                .omega
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(f).collect()).collect())
                .collect(),
        }
    }
}

/// Gluing data from a linear map `F: h → n` (a `dim n × dim h` matrix) and a
/// closed 2-form `ω₀` with values in the center of `n`:
/// `ρ(u) = ad_{F(u)}` and `ω(u,v) = [F(u), F(v)] − F([u,v]) + ω₀(u,v)`.
///
/// This sign of `ω` is the one for which the compatibility equations hold.
pub fn data_from_linear_map<T: Scalar>(
    kernel: EuclideanLieAlgebra<T>,
    base: BaseAlgebra<T>,
    f: &Matrix<T>,
    omega0: Option<TwoForm<T>>,
    tol: &Tolerance,
) -> Result<SemidirectData<T>> {
    let (p, q) = (kernel.dim(), base.dim());
    if f.rows() != p || f.cols() != q {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: f.rows(),
        });
    }
    let omega0 = omega0.unwrap_or_else(|| zero_form(q, p));
    if omega0.len() != q
        || omega0
            .iter()
            .any(|row| row.len() != q || row.iter().any(|v| v.len() != p))
    {
        return Err(Error::DimensionMismatch {
            expected: q,
            found: omega0.len(),
        });
    }
    let n = kernel.algebra();
    let h = base.algebra();
    let o0 = omega0
        .iter()
        .flatten()
        .map(|v| vector::max_abs(v))
        .fold(0.0, f64::max);

    let central = omega0
        .iter()
        .flatten()
        .map(|v| n.ad(v).max_abs())
        .fold(0.0, f64::max);
    let central_ok = if T::EXACT {
        omega0.iter().flatten().all(|v| n.ad(v).is_zero())
    } else {
        tol.accepts(central, o0 * n.scale())
    };
    if !central_ok {
        return Err(Error::NotCentralValued { defect: central });
    }
    let probe = SemidirectData {
        kernel: kernel.clone(),
        base: base.clone(),
        rho: vec![Matrix::zeros(p, p); q],
        omega: omega0.clone(),
    };
    let mut closed_defect: f64 = 0.0;
    let mut closed_exact = true;
    for i in 0..q {
        for j in i + 1..q {
            for k in j + 1..q {
                let s = probe.cocycle(i, j, k);
                closed_defect = closed_defect.max(vector::norm(&s));
                closed_exact &= vector::is_zero(&s);
            }
        }
    }
    let closed_ok = if T::EXACT {
        closed_exact
    } else {
        tol.accepts(closed_defect, o0 * h.scale())
    };
    if !closed_ok {
        return Err(Error::NotClosed {
            defect: closed_defect,
        });
    }

    let cols = f.columns();
    let rho: Vec<Matrix<T>> = cols.iter().map(|c| n.ad(c)).collect();
    let mut omega = omega0;
    for i in 0..q {
        for j in 0..q {
            if i == j {
                continue;
            }
            let bracket = n.bracket(&cols[i], &cols[j])?;
            let image = f.mul_vec(&h.bracket_basis(i, j));
            omega[i][j] = vector::add(&omega[i][j], &vector::sub(&bracket, &image));
        }
    }
    SemidirectData::new(kernel, base, rho, omega, tol)
}

/// Data of the tangent group `TH → H`: an abelian kernel isometric to `h`,
/// `ρ = ad`, `ω = 0`, the same metric on both sides.
pub fn tangent_group<T: Scalar>(h: &EuclideanLieAlgebra<T>) -> SemidirectData<T> {
    let q = h.dim();
    let kernel = EuclideanLieAlgebra::new(LieAlgebra::abelian(q), h.metric().clone())
        .expect("same dimension");
    SemidirectData {
        kernel,
        base: BaseAlgebra::riemannian(h),
        rho: (0..q).map(|i| h.ad_basis(i).clone()).collect(),
        omega: zero_form(q, q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn heis(scale: f64) -> EuclideanLieAlgebra {
        EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(3, [(1, 2, vec![(0, scale)])]).unwrap(),
        )
    }

    fn e1(a: f64) -> LieAlgebra {
        LieAlgebra::from_brackets(2, [(0, 1, vec![(0, a)])]).unwrap()
    }

    // [e0, e1] = e1, [e0, e2] = e2: d(e1* ∧ e2*) = −2 e0* ∧ e1* ∧ e2*
    fn scaling() -> LieAlgebra {
        LieAlgebra::from_brackets(3, [(0, 1, vec![(1, 1.0)]), (0, 2, vec![(2, 1.0)])]).unwrap()
    }

    fn gram2(a: f64, b: f64, c: f64) -> InnerProduct {
        InnerProduct::new(
            Matrix::from_rows(&[vec![a, b], vec![b, c]]).unwrap(),
            &tol(),
        )
        .unwrap()
    }

    fn f_matrix() -> Matrix<f64> {
        Matrix::from_rows(&[vec![0.3, -1.2], vec![0.7, 0.4], vec![-0.5, 0.9]]).unwrap()
    }

    #[test]
    fn direct_product_tension_is_identity_tension() {
        let base = BaseAlgebra::new(e1(1.3), gram2(1.0, 0.0, 1.0), gram2(2.0, 0.3, 0.8)).unwrap();
        let sd = SemidirectData::direct_product(heis(1.0), base.clone());
        assert!(sd.check_condition(&tol()).holds);
        let (_, proj) = sd.build(&tol()).unwrap();
        let tau = proj.tension(&tol()).unwrap();
        let tau_id = base.identity_map().tension(&tol()).unwrap();
        assert!(vector::max_abs(&vector::sub(&tau, &tau_id)) < 1e-12);
    }

    #[test]
    fn linear_map_output_satisfies_condition_and_tension_formula() {
        let base = BaseAlgebra::new(e1(0.8), gram2(1.2, 0.2, 0.9), gram2(0.7, -0.1, 1.4)).unwrap();
        let sd = data_from_linear_map(heis(1.7), base, &f_matrix(), None, &tol()).unwrap();
        assert!(sd.check_condition(&tol()).holds);
        let (total, proj) = sd.build(&tol()).unwrap();
        assert!(total.algebra().check_jacobi(&tol()));
        let direct = proj.tension(&tol()).unwrap();
        let predicted = sd.predicted_tension(&tol()).unwrap();
        assert!(vector::max_abs(&vector::sub(&direct, &predicted)) < 1e-10);
    }

    #[test]
    fn opposite_sign_of_omega_breaks_condition() {
        let base = BaseAlgebra::riemannian(&EuclideanLieAlgebra::with_identity_metric(e1(1.0)));
        let sd = data_from_linear_map(heis(1.7), base, &f_matrix(), None, &tol()).unwrap();
        let flipped: TwoForm<f64> = sd
            .omega()
            .iter()
            .map(|row| row.iter().map(|v| vector::neg(v)).collect())
            .collect();
        let bad = SemidirectData::new(
            sd.kernel().clone(),
            sd.base().clone(),
            sd.rho().to_vec(),
            flipped,
            &tol(),
        )
        .unwrap();
        let report = bad.check_condition(&tol());
        assert!(!report.holds && report.bracket_defect > 0.1);
    }

    #[test]
    fn linear_map_data_rejects_non_central_and_non_closed() {
        let base = BaseAlgebra::riemannian(&EuclideanLieAlgebra::with_identity_metric(e1(1.0)));
        let mut omega0 = zero_form::<f64>(2, 3);
        omega0[0][1] = vec![0.0, 1.0, 0.0];
        omega0[1][0] = vec![0.0, -1.0, 0.0];
        let err = data_from_linear_map(heis(1.0), base, &Matrix::zeros(3, 2), Some(omega0), &tol())
            .unwrap_err();
        assert!(matches!(err, Error::NotCentralValued { .. }));

        let base = BaseAlgebra::riemannian(&EuclideanLieAlgebra::with_identity_metric(scaling()));
        let mut omega0 = zero_form::<f64>(3, 3);
        omega0[1][2] = vec![1.0, 0.0, 0.0];
        omega0[2][1] = vec![-1.0, 0.0, 0.0];
        let err = data_from_linear_map(heis(1.0), base, &Matrix::zeros(3, 3), Some(omega0), &tol())
            .unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }));
    }

    #[test]
    fn random_cocycle_fails() {
        let base = BaseAlgebra::riemannian(&EuclideanLieAlgebra::with_identity_metric(scaling()));
        let kernel = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(1));
        let mut omega = zero_form::<f64>(3, 1);
        omega[1][2] = vec![0.4];
        omega[2][1] = vec![-0.4];
        let sd =
            SemidirectData::new(kernel, base, vec![Matrix::zeros(1, 1); 3], omega, &tol()).unwrap();
        let report = sd.check_condition(&tol());
        assert!(!report.holds && report.cocycle_defect > 0.1);
        assert!(matches!(
            sd.build(&tol()),
            Err(Error::ConditionViolated { .. })
        ));
    }

    #[test]
    fn non_derivation_rejected() {
        let base = BaseAlgebra::riemannian(&EuclideanLieAlgebra::with_identity_metric(e1(1.0)));
        let bad = Matrix::from_diagonal(&[1.0, 0.0, 0.0]);
        let err = SemidirectData::new(
            heis(1.0),
            base,
            vec![bad, Matrix::zeros(3, 3)],
            zero_form(2, 3),
            &tol(),
        );
        assert!(matches!(err, Err(Error::NotDerivation { index: 0, .. })));
    }

    #[test]
    fn tangent_group_tension_is_minus_unimodular_vector() {
        let h = EuclideanLieAlgebra::new(e1(1.4), gram2(1.0, 0.3, 2.0)).unwrap();
        let sd = tangent_group(&h);
        assert!(sd.check_condition(&tol()).holds);
        let u = h.unimodular_vector();
        assert!(vector::max_abs(&vector::sub(&sd.h_rho(), &u)) < 1e-12);
        let (_, proj) = sd.build(&tol()).unwrap();
        let tau = proj.tension(&tol()).unwrap();
        assert!(vector::max_abs(&vector::add(&tau, &u)) < 1e-12);
        assert!(!proj.classify(&tol()).unwrap().flags.biharmonic);
    }

    #[test]
    fn exact_linear_map_condition() {
        let base =
            BaseAlgebra::riemannian(&EuclideanLieAlgebra::with_identity_metric(e1(1.0))).clone();
        let f = f_matrix().map_to(|x| Rational::from_float(*x).unwrap());
        let q = |x: &f64| Rational::from_float(*x).unwrap();
        let base = BaseAlgebra::new(
            base.algebra.map_scalars(q),
            base.domain.map_scalars(q),
            base.target.map_scalars(q),
        )
        .unwrap();
        let sd = data_from_linear_map(heis(1.0).map_scalars(q), base, &f, None, &tol()).unwrap();
        assert!(sd.check_condition(&tol()).holds);
        let (total, proj) = sd.build(&tol()).unwrap();
        assert!(total.algebra().check_jacobi(&tol()));
        assert_eq!(
            proj.tension(&tol()).unwrap(),
            sd.predicted_tension(&tol()).unwrap()
        );
    }
}
