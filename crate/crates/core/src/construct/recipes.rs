//! Randomized recipes producing (bi)harmonic submersions from semidirect data.
//!
//! Every recipe picks the covector `c = tr∘ρ` its goal requires, realizes it
//! with sampled gluing data and then re-certifies the built projection with
//! the maps module. Two realizations are used:
//! - `ρ = ad∘F`, `ω` from [`data_from_linear_map`]: here `tr ρ(u) = ⟨U^n, F u⟩_n`;
//! - `ρ = χ⊗D`, `ω = 0` with `χ` vanishing on `[h,h]` and `D ∈ Der(n)`.

use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{data_from_linear_map, zero_form, BaseAlgebra, SemidirectData};
use crate::algebra::{EuclideanLieAlgebra, InnerProduct, LieAlgebra};
use crate::linalg::{self, vector, Matrix, Tolerance};
use crate::maps::{LieAlgebraMap, MapClassification};
use crate::{Error, Result};

/// A recipe output together with its independent certification.
#[derive(Clone, Debug, PartialEq)]
pub struct Certified {
    pub data: SemidirectData<f64>,
    pub algebra: EuclideanLieAlgebra<f64>,
    pub projection: LieAlgebraMap<f64>,
    pub classification: MapClassification<f64>,
    /// `‖τ(proj) − (τ(Id_h) − H^ρ)‖`, direct computation against the formula.
    pub tension_oracle_defect: f64,
}

impl Certified {
    pub fn new(data: SemidirectData<f64>, tol: &Tolerance) -> Result<Self> {
        let (algebra, projection) = data.build(tol)?;
        let classification = projection.classify(tol)?;
        let predicted = data.predicted_tension(tol)?;
        let tension_oracle_defect = vector::norm(&vector::sub(&classification.tension, &predicted));
        let scale = vector::norm(&predicted)
            + vector::norm(&data.base().target_ela().unimodular_vector())
            + algebra.algebra().scale();
        if !tol.times(10.0).accepts(tension_oracle_defect, scale) {
            return Err(Error::OracleMismatch {
                quantity: "submersion tension",
                defect: tension_oracle_defect,
            });
        }
        Ok(Self {
            data,
            algebra,
            projection,
            classification,
            tension_oracle_defect,
        })
    }
}

/// Which trace condition a Riemannian biharmonic recipe imposes on `tr∘ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiharmonicVariant {
    /// `tr ρ(A_u v) = 0` with `ρ` a representation (`ω = 0`).
    Parallel,
    /// Unimodular kernel, `tr ρ(A_u v) = 0`, any compatible `ω`.
    UnimodularKernel,
    /// Unimodular base, `tr ρ(ad_u* v + ad_v* u) = 0`.
    KillingForm,
}

fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(-1.0..1.0)
}

fn random_combination<R: Rng + ?Sized>(basis: &[Vec<f64>], dim: usize, rng: &mut R) -> Vec<f64> {
    let mut c = vector::zeros(dim);
    for b in basis {
        vector::axpy(&mut c, &uniform(rng), b);
    }
    c
}

/// Samples gluing data with `tr ρ(h_i) = c_i`, or `None` when neither
/// realization can produce `c`.
fn realize_trace<R: Rng + ?Sized>(
    kernel: &EuclideanLieAlgebra,
    base: &BaseAlgebra,
    c: &[f64],
    allow_omega: bool,
    rng: &mut R,
    tol: &Tolerance,
) -> Option<SemidirectData> {
    let (p, q) = (kernel.dim(), base.dim());
    let c_small = vector::max_abs(c) <= tol.bound(1.0);
    let u = kernel.unimodular_vector();
    let uu = kernel.inner(&u, &u);
    let linear_map_ok = allow_omega && (uu > tol.bound(1.0) || c_small);

    let derived = base.algebra().derived_span(tol);
    let annihilates = derived
        .iter()
        .all(|w| vector::dot(c, w).abs() <= tol.bound(vector::norm(c) * vector::norm(w)));
    let ders = kernel.algebra().derivations(tol);
    let traces: Vec<f64> = ders.iter().map(Matrix::trace).collect();
    let mut d_traced = Matrix::zeros(p, p);
    for (d, t) in ders.iter().zip(&traces) {
        d_traced = &d_traced + &d.scale(t);
    }
    let tr = d_traced.trace();
    let char_ok = annihilates && (tr > tol.bound(d_traced.max_abs()) || c_small);

    let use_linear_map = match (linear_map_ok, char_ok) {
        (false, false) => return None,
        (true, false) => true,
        (false, true) => false,
        (true, true) => rng.gen_bool(0.5),
    };
    if use_linear_map {
        let mut f = Matrix::from_fn(p, q, |_, _| uniform(rng));
        if uu > tol.bound(1.0) {
            // shift F along U^n so that ⟨U^n, F e_k⟩ = c_k
            let gu = kernel.metric().lower(&u);
            let lam = f.vec_mul(&gu);
            for k in 0..q {
                let shift = (c[k] - lam[k]) / uu;
                for a in 0..p {
                    f[(a, k)] += shift * u[a];
                }
            }
        }
        data_from_linear_map(kernel.clone(), base.clone(), &f, None, tol).ok()
    } else {
        let (d, chi) = if c_small {
            // any derivation made traceless, any character
            let mut d = random_combination(
                &ders.iter().map(Matrix::to_vec).collect::<Vec<_>>(),
                p * p,
                rng,
            );
            let dm = Matrix::from_row_major(p, p, d.clone()).ok()?;
            if tr > tol.bound(d_traced.max_abs()) {
                let t = dm.trace() / tr;
                vector::axpy(&mut d, &-t, &d_traced.to_vec());
            }
            let dm = Matrix::from_row_major(p, p, d).ok()?;
            let annihilator = annihilator_of(&derived, q, tol);
            (dm, random_combination(&annihilator, q, rng))
        } else {
            (d_traced.scale(&(1.0 / tr)), c.to_vec())
        };
        let rho = chi.iter().map(|x| d.scale(x)).collect();
        SemidirectData::new(kernel.clone(), base.clone(), rho, zero_form(q, p), tol).ok()
    }
}

/// Covectors on `R^q` vanishing on every vector of `span`.
fn annihilator_of(span: &[Vec<f64>], q: usize, tol: &Tolerance) -> Vec<Vec<f64>> {
    if span.is_empty() {
        return (0..q).map(|i| vector::unit(q, i)).collect();
    }
    let m = Matrix::from_rows(span).expect("equal lengths");
    linalg::nullspace(&m, tol)
}

/// Searches for gluing data making the projection `(n ⊕ h) → (h, ⟨,⟩₂)` harmonic,
/// i.e. with `tr ρ(u) = ⟨u, τ(Id_h)⟩₁`.
pub fn recipe_harmonic_submersion<R: Rng + ?Sized>(
    kernel: &EuclideanLieAlgebra,
    base: &BaseAlgebra,
    budget: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<Certified> {
    let tau_id = base.identity_map().tension(tol)?;
    let c = base.domain_metric().lower(&tau_id);
    search(
        budget,
        tol,
        |rng| realize_trace(kernel, base, &c, true, rng, tol),
        |cl| cl.flags.harmonic,
        rng,
    )
    .ok_or(Error::SearchExhausted {
        reason: "no gluing data with tr(rho) dual to the identity tension",
    })
}

/// Searches for traceless gluing data over a base whose identity map
/// `(h, ⟨,⟩₁) → (h, ⟨,⟩₂)` is biharmonic.
pub fn recipe_biharmonic_submersion<R: Rng + ?Sized>(
    kernel: &EuclideanLieAlgebra,
    base: &BaseAlgebra,
    budget: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<Certified> {
    let id = base.identity_map().classify(tol)?;
    if !id.flags.biharmonic {
        return Err(Error::IdentityNotBiharmonic {
            bitension: vector::norm(&id.bitension),
        });
    }
    let c = vector::zeros(base.dim());
    search(
        budget,
        tol,
        |rng| realize_trace(kernel, base, &c, true, rng, tol),
        |cl| cl.flags.biharmonic,
        rng,
    )
    .ok_or(Error::SearchExhausted {
        reason: "no traceless gluing data",
    })
}

/// Riemannian submersion onto `h` certified biharmonic, with `tr∘ρ` chosen
/// according to `variant`.
///
/// The Killing variant reads its condition as `tr ρ(ad_u* v + ad_v* u) = 0`,
/// which says that the `⟨,⟩`-dual of `tr∘ρ` is a Killing direction.
pub fn recipe_riemannian_biharmonic<R: Rng + ?Sized>(
    kernel: &EuclideanLieAlgebra,
    h: &EuclideanLieAlgebra,
    variant: BiharmonicVariant,
    budget: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<Certified> {
    let base = BaseAlgebra::riemannian(h);
    let q = h.dim();
    let (allowed, allow_omega) = match variant {
        BiharmonicVariant::Parallel => (parallel_covectors(h, tol), false),
        BiharmonicVariant::UnimodularKernel => {
            if !kernel.is_unimodular(tol) {
                return Err(Error::NotUnimodular);
            }
            (parallel_covectors(h, tol), true)
        }
        BiharmonicVariant::KillingForm => {
            if !h.is_unimodular(tol) {
                return Err(Error::NotUnimodular);
            }
            let kill = h.killing_subalgebra(tol);
            (kill.iter().map(|x| h.metric().lower(x)).collect(), true)
        }
    };
    let zero = vector::zeros(q);
    let mut attempt = 0usize;
    search(
        budget,
        tol,
        |rng| {
            attempt += 1;
            // odd attempts try a generic covector, even ones fall back to zero
            let c = if attempt % 2 == 1 {
                random_combination(&allowed, q, rng)
            } else {
                zero.clone()
            };
            realize_trace(kernel, &base, &c, allow_omega, rng, tol)
        },
        |cl| cl.flags.biharmonic,
        rng,
    )
    .ok_or(Error::SearchExhausted {
        reason: "no gluing data meeting the trace condition",
    })
}

/// Covectors `c` on `h` with `c(A_u v) = 0` for all `u, v`.
fn parallel_covectors(h: &EuclideanLieAlgebra, tol: &Tolerance) -> Vec<Vec<f64>> {
    let q = h.dim();
    let mut rows = Vec::new();
    for i in 0..q {
        for j in 0..q {
            rows.push(h.levi_civita().product(i, j).to_vec());
        }
    }
    annihilator_of(&rows, q, tol)
}

/// Riemannian submersion onto a flat base; certified biharmonic, possibly
/// not harmonic.
///
/// With a unimodular kernel the gluing may carry a nonzero `ω`; otherwise
/// `ω = 0` and `ρ` is a representation.
pub fn flat_base_builder<R: Rng + ?Sized>(
    h_flat: &EuclideanLieAlgebra,
    kernel: &EuclideanLieAlgebra,
    budget: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<Certified> {
    if !h_flat.is_flat(tol) {
        return Err(Error::NotFlat {
            curvature: h_flat.curvature_norm(),
        });
    }
    let base = BaseAlgebra::riemannian(h_flat);
    let q = h_flat.dim();
    let allow_omega = kernel.is_unimodular(tol);
    let annihilator = annihilator_of(&h_flat.algebra().derived_span(tol), q, tol);
    let mut attempt = 0usize;
    search(
        budget,
        tol,
        |rng| {
            attempt += 1;
            let c = if attempt % 2 == 1 {
                random_combination(&annihilator, q, rng)
            } else {
                vector::zeros(q)
            };
            realize_trace(kernel, &base, &c, allow_omega, rng, tol)
        },
        |cl| cl.flags.biharmonic,
        rng,
    )
    .ok_or(Error::SearchExhausted {
        reason: "no gluing data over the flat base",
    })
}

fn search<R: Rng + ?Sized>(
    budget: usize,
    tol: &Tolerance,
    mut sample: impl FnMut(&mut R) -> Option<SemidirectData>,
    goal: impl Fn(&MapClassification<f64>) -> bool,
    rng: &mut R,
) -> Option<Certified> {
    for _ in 0..budget {
        let Some(data) = sample(rng) else { continue };
        if let Ok(cert) = Certified::new(data, tol) {
            if goal(&cert.classification) {
                return Some(cert);
            }
        }
    }
    None
}

/// Coordinates `(x, y)` of `τ(Id)` for `Id: (h, ⟨,⟩₁) → (h, ⟨,⟩₂)` where `h`
/// is the two-dimensional algebra `[e₁, e₂] = α e₁` and `(e₁, e₂)` is
/// `⟨,⟩₁`-orthonormal; `g2` is the Gram matrix of `⟨,⟩₂` in that basis.
///
/// Solves `g2·(x, y) = (2α g2₁₂, α(g2₂₂ − g2₁₁))`.
pub fn closing_system(alpha: f64, g2: &Matrix<f64>, tol: &Tolerance) -> Result<[f64; 2]> {
    if g2.rows() != 2 || g2.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: g2.rows(),
        });
    }
    let rhs = [2.0 * alpha * g2[(0, 1)], alpha * (g2[(1, 1)] - g2[(0, 0)])];
    let sol = linalg::solve_linear(g2, &rhs, tol)?;
    Ok([sol[0], sol[1]])
}

/// Harmonic submersion onto `(h, ⟨,⟩₂)` for `h: [e₁, e₂] = α e₁` with
/// orthonormal `⟨,⟩₁`, glued from a non-unimodular kernel.
///
/// Picks `F: n → h` with `F(U^n) = x₀e₁ + y₀e₂` from [`closing_system`] and
/// sets `ρ(u) = ad_{F*(u)}`.
pub fn closing_example<R: Rng + ?Sized>(
    alpha: f64,
    g2: &Matrix<f64>,
    kernel: &EuclideanLieAlgebra,
    budget: usize,
    rng: &mut R,
    tol: &Tolerance,
) -> Result<(Certified, [f64; 2])> {
    if !(alpha.is_finite() && alpha != 0.0) {
        return Err(Error::BadParameter(alloc::format!(
            "alpha must be nonzero, got {alpha}"
        )));
    }
    let u = kernel.unimodular_vector();
    let uu = kernel.inner(&u, &u);
    if uu <= tol.bound(1.0) {
        return Err(Error::BadParameter("kernel must be non-unimodular".into()));
    }
    let h = LieAlgebra::from_brackets(2, [(0, 1, alloc::vec![(0, alpha)])])?;
    let base = BaseAlgebra::new(
        h,
        InnerProduct::identity(2),
        InnerProduct::new(g2.clone(), tol)?,
    )?;
    let target = closing_system(alpha, g2, tol)?;
    let p = kernel.dim();
    let gu = kernel.metric().lower(&u);
    for _ in 0..budget {
        let mut f = Matrix::from_fn(2, p, |_, _| uniform(rng));
        let fu = f.mul_vec(&u);
        for k in 0..2 {
            for a in 0..p {
                f[(k, a)] += (target[k] - fu[k]) * gu[a] / uu;
            }
        }
        // adjoint for (⟨,⟩_n, ⟨,⟩₁ = identity): F* = G_n⁻¹ Fᵀ
        let f_star = kernel.metric().gram_inv() * &f.transpose();
        let Ok(data) = data_from_linear_map(kernel.clone(), base.clone(), &f_star, None, tol)
        else {
            continue;
        };
        if let Ok(cert) = Certified::new(data, tol) {
            if cert.classification.flags.harmonic {
                return Ok((cert, target));
            }
        }
    }
    Err(Error::SearchExhausted {
        reason: "closing example did not certify harmonic",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn e1(a: f64) -> LieAlgebra {
        LieAlgebra::from_brackets(2, [(0, 1, vec![(0, a)])]).unwrap()
    }

    fn heis() -> EuclideanLieAlgebra {
        EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(3, [(1, 2, vec![(0, 1.0)])]).unwrap(),
        )
    }

    fn solvable() -> EuclideanLieAlgebra {
        let alg = LieAlgebra::from_brackets(
            3,
            [(0, 1, vec![(1, 1.0)]), (0, 2, vec![(1, 0.5), (2, 2.0)])],
        )
        .unwrap();
        let gram = Matrix::from_rows(&[
            vec![1.0, 0.2, 0.0],
            vec![0.2, 1.5, 0.1],
            vec![0.0, 0.1, 0.8],
        ])
        .unwrap();
        EuclideanLieAlgebra::new(alg, InnerProduct::new(gram, &tol()).unwrap()).unwrap()
    }

    fn gram2(a: f64, b: f64, c: f64) -> Matrix<f64> {
        Matrix::from_rows(&[vec![a, b], vec![b, c]]).unwrap()
    }

    #[test]
    fn literal_closing_system_agrees_at_alpha_one() {
        let g2 = gram2(1.3, 0.4, 0.9);
        let literal_rhs =
            |alpha: f64| [(alpha + 1.0) * g2[(0, 1)], -alpha * g2[(0, 0)] + g2[(1, 1)]];
        let lit = linalg::solve_linear(&g2, &literal_rhs(1.0), &tol()).unwrap();
        let cor = closing_system(1.0, &g2, &tol()).unwrap();
        assert!((lit[0] - cor[0]).abs() < 1e-12 && (lit[1] - cor[1]).abs() < 1e-12);
        for alpha in [0.5, 1.0, 2.5] {
            let base = BaseAlgebra::new(
                e1(alpha),
                InnerProduct::identity(2),
                InnerProduct::new(g2.clone(), &tol()).unwrap(),
            )
            .unwrap();
            let tau = base.identity_map().tension(&tol()).unwrap();
            let xy = closing_system(alpha, &g2, &tol()).unwrap();
            assert!((tau[0] - xy[0]).abs() < 1e-10 && (tau[1] - xy[1]).abs() < 1e-10);
        }
        let lit = linalg::solve_linear(&g2, &literal_rhs(2.5), &tol()).unwrap();
        let cor = closing_system(2.5, &g2, &tol()).unwrap();
        assert!((lit[1] - cor[1]).abs() > 1e-3);
    }

    #[test]
    fn closing_example_is_harmonic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (cert, _) = closing_example(
            1.7,
            &gram2(2.0, -0.3, 0.6),
            &solvable(),
            5,
            &mut rng,
            &tol(),
        )
        .unwrap();
        assert!(cert.classification.flags.harmonic);
        assert!(cert.tension_oracle_defect < 1e-9);
    }

    #[test]
    fn harmonic_recipe() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let base = BaseAlgebra::new(
            e1(1.2),
            InnerProduct::new(gram2(1.0, 0.1, 0.7), &tol()).unwrap(),
            InnerProduct::new(gram2(1.6, -0.2, 0.9), &tol()).unwrap(),
        )
        .unwrap();
        let cert = recipe_harmonic_submersion(&solvable(), &base, 10, &mut rng, &tol()).unwrap();
        assert!(cert.classification.flags.harmonic);
        // a unimodular kernel with only traceless derivations of the right kind cannot absorb τ(Id)
        let so3 = LieAlgebra::from_brackets(
            3,
            [
                (0, 1, vec![(2, 1.0)]),
                (1, 2, vec![(0, 1.0)]),
                (0, 2, vec![(1, -1.0)]),
            ],
        )
        .unwrap();
        let kernel = EuclideanLieAlgebra::with_identity_metric(so3);
        let err = recipe_harmonic_submersion(&kernel, &base, 10, &mut rng, &tol()).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { .. }));
    }

    #[test]
    fn biharmonic_recipe_requires_biharmonic_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = LieAlgebra::from_brackets(3, [(1, 2, vec![(0, 1.0)])]).unwrap();
        let base = BaseAlgebra::new(
            h.clone(),
            InnerProduct::identity(3),
            InnerProduct::diagonal(&[1.0, 2.0, 0.5]).unwrap(),
        )
        .unwrap();
        let cert = recipe_biharmonic_submersion(&solvable(), &base, 10, &mut rng, &tol()).unwrap();
        assert!(cert.classification.flags.biharmonic);

        let base = BaseAlgebra::new(
            e1(1.0),
            InnerProduct::identity(2),
            InnerProduct::new(gram2(2.0, 0.5, 1.0), &tol()).unwrap(),
        )
        .unwrap();
        let id = base.identity_map().classify(&tol()).unwrap();
        if !id.flags.biharmonic {
            let err =
                recipe_biharmonic_submersion(&heis(), &base, 3, &mut rng, &tol()).unwrap_err();
            assert!(matches!(err, Error::IdentityNotBiharmonic { .. }));
        }
    }

    #[test]
    fn riemannian_variants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let e = EuclideanLieAlgebra::new(
            e1(0.9),
            InnerProduct::new(gram2(1.0, 0.3, 1.2), &tol()).unwrap(),
        )
        .unwrap();
        for variant in [
            BiharmonicVariant::Parallel,
            BiharmonicVariant::UnimodularKernel,
        ] {
            let cert =
                recipe_riemannian_biharmonic(&heis(), &e, variant, 10, &mut rng, &tol()).unwrap();
            assert!(cert.classification.flags.biharmonic);
            assert!(cert.classification.flags.riemannian_submersion);
        }
        let h = heis();
        let cert = recipe_riemannian_biharmonic(
            &solvable(),
            &h,
            BiharmonicVariant::KillingForm,
            10,
            &mut rng,
            &tol(),
        )
        .unwrap();
        assert!(cert.classification.flags.biharmonic);
        assert_eq!(
            recipe_riemannian_biharmonic(
                &solvable(),
                &h,
                BiharmonicVariant::UnimodularKernel,
                3,
                &mut rng,
                &tol()
            )
            .unwrap_err(),
            Error::NotUnimodular
        );
        assert_eq!(
            recipe_riemannian_biharmonic(
                &heis(),
                &e,
                BiharmonicVariant::KillingForm,
                3,
                &mut rng,
                &tol()
            )
            .unwrap_err(),
            Error::NotUnimodular
        );
    }

    #[test]
    fn flat_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let e2 = EuclideanLieAlgebra::with_identity_metric(
            LieAlgebra::from_brackets(3, [(0, 1, vec![(2, 1.0)]), (0, 2, vec![(1, -1.0)])])
                .unwrap(),
        );
        let cert = flat_base_builder(&e2, &heis(), 10, &mut rng, &tol()).unwrap();
        assert!(cert.classification.flags.biharmonic);
        let plane = EuclideanLieAlgebra::with_identity_metric(LieAlgebra::abelian(2));
        let cert = flat_base_builder(&plane, &solvable(), 10, &mut rng, &tol()).unwrap();
        assert!(cert.classification.flags.biharmonic);
        let e = EuclideanLieAlgebra::with_identity_metric(e1(1.0));
        assert!(matches!(
            flat_base_builder(&e, &heis(), 3, &mut rng, &tol()),
            Err(Error::NotFlat { .. })
        ));
    }
}
