use alloc::string::String;
use core::fmt;

/// Errors reported by the toolkit.
///
/// Numeric defects are carried as `f64` so a caller can see how far off a
/// rejected input was.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// A basis index is outside `0..dim`.
    IndexOutOfRange { index: usize, dim: usize },
    /// A bracket entry `[e_i, e_i]` or an entry with `i > j`.
    InvalidBracketEntry { i: usize, j: usize },
    /// A matrix entry is NaN or infinite.
    NonFinite,
    /// A tolerance component is negative.
    InvalidTolerance,
    /// Matrix expected symmetric.
    NotSymmetric { defect: f64 },
    /// Gram matrix (or metric-symmetric operator) not positive definite.
    NotPositiveDefinite,
    /// Least-squares residual exceeds tolerance.
    Infeasible { residual: f64 },
    /// Structure constants violate the Jacobi identity.
    JacobiViolation { defect: f64 },
    /// Vectors expected linearly independent.
    LinearlyDependent,
    /// Span not closed under the bracket.
    NotSubalgebra { defect: f64 },
    /// Span not invariant under `ad`.
    NotIdeal { defect: f64 },
    /// Linear map does not preserve brackets.
    NotHomomorphism { defect: f64 },
    /// Linear map on a Lie algebra is not an automorphism.
    NotAutomorphism { defect: f64 },
    /// Two independent formulas for the same quantity disagree.
    OracleMismatch { quantity: &'static str, defect: f64 },
    /// Map expected surjective.
    NotSurjective,
    /// Map expected to be a Riemannian submersion.
    NotRiemannianSubmersion { defect: f64 },
    /// Maps cannot be composed.
    NotComposable,
    /// Algebra expected unimodular.
    NotUnimodular,
    /// Operator expected symmetric with respect to the metric.
    NotMetricSymmetric { defect: f64 },
    /// SL(2) element with determinant different from one.
    DeterminantNotOne { det: f64 },
    /// Endomorphism expected to be a derivation.
    NotDerivation { index: usize, defect: f64 },
    /// Compatibility equations of semidirect data fail.
    ConditionViolated {
        bracket_defect: f64,
        cocycle_defect: f64,
    },
    /// 2-form expected to take values in the center.
    NotCentralValued { defect: f64 },
    /// 2-form expected closed.
    NotClosed { defect: f64 },
    /// Identity map between two metrics expected biharmonic.
    IdentityNotBiharmonic { bitension: f64 },
    /// Metric expected flat.
    NotFlat { curvature: f64 },
    /// A construction failed to find a solution within its budget.
    SearchExhausted { reason: &'static str },
    /// Operation needs floating point scalars.
    FloatOnly,
    /// Unknown catalog entry.
    UnknownEntry(String),
    /// Parameter outside its documented range.
    BadParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Self::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            Self::InvalidBracketEntry { i, j } => {
                write!(f, "bracket entries need i < j, got ({i}, {j})")
            }
            Self::NonFinite => write!(f, "non-finite matrix entry"),
            Self::InvalidTolerance => write!(f, "tolerances must be non-negative"),
            Self::NotSymmetric { defect } => write!(f, "matrix not symmetric (defect {defect:e})"),
            Self::NotPositiveDefinite => write!(f, "matrix not positive definite"),
            Self::Infeasible { residual } => {
                write!(f, "linear system infeasible (residual {residual:e})")
            }
            Self::JacobiViolation { defect } => {
                write!(f, "Jacobi identity violated (defect {defect:e})")
            }
            Self::LinearlyDependent => write!(f, "vectors are linearly dependent"),
            Self::NotSubalgebra { defect } => {
                write!(f, "span not closed under the bracket (defect {defect:e})")
            }
            Self::NotIdeal { defect } => write!(f, "span is not an ideal (defect {defect:e})"),
            Self::NotHomomorphism { defect } => {
                write!(f, "map is not a Lie algebra homomorphism (max bracket defect {defect:e})")
            }
            Self::NotAutomorphism { defect } => {
                write!(f, "matrix is not a Lie algebra automorphism (defect {defect:e})")
            }
            Self::OracleMismatch { quantity, defect } => {
                write!(f, "independent formulas for {quantity} disagree (defect {defect:e})")
            }
            Self::NotSurjective => write!(f, "map is not surjective"),
            Self::NotRiemannianSubmersion { defect } => {
                write!(f, "map is not a Riemannian submersion (defect {defect:e})")
            }
            Self::NotComposable => write!(f, "maps are not composable"),
            Self::NotUnimodular => write!(f, "algebra is not unimodular"),
            Self::NotMetricSymmetric { defect } => {
                write!(f, "operator not symmetric for the metric (defect {defect:e})")
            }
            Self::DeterminantNotOne { det } => write!(f, "determinant {det} is not 1"),
            Self::NotDerivation { index, defect } => {
                write!(f, "rho({index}) is not a derivation (defect {defect:e})")
            }
            Self::ConditionViolated { bracket_defect, cocycle_defect } => write!(
                f,
                "compatibility condition violated (bracket defect {bracket_defect:e}, cocycle defect {cocycle_defect:e})"
            ),
            Self::NotCentralValued { defect } => {
                write!(f, "2-form not valued in the center (defect {defect:e})")
            }
            Self::NotClosed { defect } => write!(f, "2-form not closed (defect {defect:e})"),
            Self::IdentityNotBiharmonic { bitension } => {
                write!(f, "identity map is not biharmonic (|bitension| = {bitension:e})")
            }
            Self::NotFlat { curvature } => write!(f, "metric is not flat (|K| = {curvature:e})"),
            Self::SearchExhausted { reason } => write!(f, "no solution found: {reason}"),
            Self::FloatOnly => write!(f, "operation is only available for floating point scalars"),
            Self::UnknownEntry(name) => write!(f, "unknown catalog entry `{name}`"),
            Self::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
