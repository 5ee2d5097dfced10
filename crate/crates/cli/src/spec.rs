//! JSON file formats: algebras, maps and semidirect data.
//!
//! Numbers are JSON numbers or strings holding an integer, a decimal or
//! `p/q`. Nested algebra specs may be inline objects or paths, resolved
//! relative to the file that mentions them.

use std::fs;
use std::path::{Path, PathBuf};

use lieharm::algebra::{EuclideanLieAlgebra, InnerProduct, LieAlgebra};
use lieharm::construct::TwoForm;
use lieharm::{LieAlgebraMap, Matrix, Rational, Scalar, Tolerance};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

/// Scalars the CLI can read from and write to files.
pub trait FileScalar: Scalar {
    fn from_number(n: &Number) -> Result<Self, CliError>;
    fn to_number(&self) -> Number;
}

impl FileScalar for f64 {
    fn from_number(n: &Number) -> Result<Self, CliError> {
        match n {
            Number::Int(v) => Ok(*v as f64),
            Number::Float(v) => Ok(*v),
            Number::Text(s) => s
                .trim()
                .parse::<f64>()
                .ok()
                .or_else(|| s.parse::<Rational>().ok().map(|r| r.to_f64()))
                .ok_or_else(|| CliError::Parse(format!("not a number: {s:?}"))),
        }
    }

    fn to_number(&self) -> Number {
        Number::Float(*self)
    }
}

impl FileScalar for Rational {
    fn from_number(n: &Number) -> Result<Self, CliError> {
        match n {
            Number::Int(v) => Ok(Rational::from_i64(*v)),
            Number::Float(v) => Err(CliError::Parse(format!(
                "{v} is a floating point literal; exact mode needs integers or strings such as \"3/2\""
            ))),
            Number::Text(s) => s.parse().map_err(|e| CliError::Parse(format!("{s:?}: {e}"))),
        }
    }

    fn to_number(&self) -> Number {
        if self.denom() == &1.into() {
            if let Ok(v) = i64::try_from(self.numer().clone()) {
                return Number::Int(v);
            }
        }
        Number::Text(self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketSpec {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<(usize, Number)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    /// Only `"identity"` is accepted.
    Named(String),
    Matrix(Vec<Vec<Number>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketSpec>,
    #[serde(default = "identity_metric")]
    pub metric: MetricSpec,
}

fn identity_metric() -> MetricSpec {
    MetricSpec::Named("identity".into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSpec {
    pub source: Value,
    pub target: Value,
    pub xi: Vec<Vec<Number>>,
}

/// Semidirect data. Exactly one of `tangent`, `recipe`, or `kernel` + `base`
/// with `rho`/`omega` or `linear_map` describes the gluing.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectSpec {
    #[serde(default)]
    pub name: Option<String>,
    /// Tangent group of this algebra.
    #[serde(default)]
    pub tangent: Option<Value>,
    #[serde(default)]
    pub kernel: Option<Value>,
    /// Base algebra; its metric is the domain-side metric.
    #[serde(default)]
    pub base: Option<Value>,
    /// Target-side metric on the base, defaults to the base metric.
    #[serde(default)]
    pub target_metric: Option<MetricSpec>,
    /// One `p × p` matrix per base basis vector.
    #[serde(default)]
    pub rho: Option<Vec<Vec<Vec<Number>>>>,
    /// `omega[i][j]` is a kernel vector, antisymmetric in `(i, j)`.
    #[serde(default)]
    pub omega: Option<Vec<Vec<Vec<Number>>>>,
    /// `p × q` matrix `F`: `ρ = ad∘F`, `ω(u,v) = [Fu,Fv] − F[u,v]`.
    #[serde(default)]
    pub linear_map: Option<Vec<Vec<Number>>>,
    #[serde(default)]
    pub recipe: Option<RecipeSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RecipeSpec {
    Harmonic {
        #[serde(default = "default_budget")]
        budget: usize,
    },
    Biharmonic {
        #[serde(default = "default_budget")]
        budget: usize,
    },
    Riemannian {
        variant: lieharm::construct::BiharmonicVariant,
        #[serde(default = "default_budget")]
        budget: usize,
    },
    FlatBase {
        #[serde(default = "default_budget")]
        budget: usize,
    },
}

fn default_budget() -> usize {
    50
}

pub fn read_json<D: for<'de> Deserialize<'de>>(path: &Path) -> Result<D, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// An inline algebra spec or a path to one, relative to `dir`.
pub fn resolve_algebra(value: &Value, dir: &Path) -> Result<AlgebraSpec, CliError> {
    match value {
        Value::String(rel) => read_json(&dir.join(rel)),
        other => serde_json::from_value(other.clone())
            .map_err(|e| CliError::Parse(format!("algebra spec: {e}"))),
    }
}

pub fn matrix<T: FileScalar>(rows: &[Vec<Number>], what: &str) -> Result<Matrix<T>, CliError> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(T::from_number).collect::<Result<Vec<T>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(CliError::Parse(format!("{what}: empty matrix")));
    }
    Matrix::from_rows(&parsed).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

pub fn metric<T: FileScalar>(
    spec: &MetricSpec,
    dim: usize,
    tol: &Tolerance,
) -> Result<InnerProduct<T>, CliError> {
    match spec {
        MetricSpec::Named(s) if s == "identity" => Ok(InnerProduct::identity(dim)),
        MetricSpec::Named(s) => Err(CliError::Parse(format!(
            "unknown metric {s:?}, expected \"identity\" or a matrix"
        ))),
        MetricSpec::Matrix(rows) => {
            let g = matrix::<T>(rows, "metric")?;
            if g.rows() != dim || g.cols() != dim {
                return Err(CliError::Parse(format!(
                    "metric must be {dim}x{dim}, got {}x{}",
                    g.rows(),
                    g.cols()
                )));
            }
            InnerProduct::new(g, tol).map_err(CliError::Domain)
        }
    }
}

impl AlgebraSpec {
    /// Structure constants only; index errors are parse errors, Jacobi is not checked.
    pub fn algebra<T: FileScalar>(&self) -> Result<LieAlgebra<T>, CliError> {
        let mut entries = Vec::new();
        for b in &self.brackets {
            let coeffs = b
                .coeffs
                .iter()
                .map(|(k, v)| Ok((*k, T::from_number(v)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            entries.push((b.i, b.j, coeffs));
        }
        LieAlgebra::from_brackets(self.dim, entries)
            .map_err(|e| CliError::Parse(format!("brackets: {e}")))
    }

    /// Algebra and metric, with Jacobi checked at `tol`.
    pub fn euclidean<T: FileScalar>(
        &self,
        tol: &Tolerance,
    ) -> Result<EuclideanLieAlgebra<T>, CliError> {
        let alg = self.algebra::<T>()?;
        alg.validate(tol)?;
        let g = metric::<T>(&self.metric, self.dim, tol)?;
        Ok(EuclideanLieAlgebra::new(alg, g)?)
    }

    /// Spec of `ela`; entries are written exactly as stored.
    pub fn from_euclidean<T: FileScalar>(name: &str, ela: &EuclideanLieAlgebra<T>) -> Self {
        let brackets = ela
            .algebra()
            .brackets()
            .into_iter()
            .map(|(i, j, coeffs)| BracketSpec {
                i,
                j,
                coeffs: coeffs.iter().map(|(k, v)| (*k, v.to_number())).collect(),
            })
            .collect();
        let g = ela.gram();
        let metric = if *g == Matrix::identity(ela.dim()) {
            identity_metric()
        } else {
            MetricSpec::Matrix(
                g.to_rows()
                    .iter()
                    .map(|r| r.iter().map(T::to_number).collect())
                    .collect(),
            )
        };
        Self {
            name: name.to_string(),
            dim: ela.dim(),
            brackets,
            metric,
        }
    }
}

pub fn load_algebra<T: FileScalar>(
    path: &Path,
    tol: &Tolerance,
) -> Result<(AlgebraSpec, EuclideanLieAlgebra<T>), CliError> {
    let spec: AlgebraSpec = read_json(path)?;
    let ela = spec.euclidean(tol)?;
    Ok((spec, ela))
}

/// Loads a map spec. The matrix must be `dim target × dim source`; bracket
/// preservation is left to the caller.
pub fn load_map<T: FileScalar>(path: &Path, tol: &Tolerance) -> Result<LieAlgebraMap<T>, CliError> {
    let spec: MapSpec = read_json(path)?;
    let dir = dir_of(path);
    let src = resolve_algebra(&spec.source, &dir)?.euclidean::<T>(tol)?;
    let tgt = resolve_algebra(&spec.target, &dir)?.euclidean::<T>(tol)?;
    let xi = matrix::<T>(&spec.xi, "xi")?;
    if xi.rows() != tgt.dim() || xi.cols() != src.dim() {
        return Err(CliError::Parse(format!(
            "xi must be {}x{} (target x source), got {}x{}",
            tgt.dim(),
            src.dim(),
            xi.rows(),
            xi.cols()
        )));
    }
    Ok(LieAlgebraMap::new(src, tgt, xi)?)
}

pub fn two_form<T: FileScalar>(
    raw: &[Vec<Vec<Number>>],
    q: usize,
    p: usize,
) -> Result<TwoForm<T>, CliError> {
    if raw.len() != q
        || raw
            .iter()
            .any(|row| row.len() != q || row.iter().any(|v| v.len() != p))
    {
        return Err(CliError::Parse(format!(
            "omega must be {q}x{q} vectors of length {p}"
        )));
    }
    raw.iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(T::from_number).collect())
                .collect()
        })
        .collect()
}

pub fn spec_dir(path: &Path) -> PathBuf {
    dir_of(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_parse_in_both_modes() {
        let third = Number::Text("1/3".into());
        assert!((f64::from_number(&third).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(Rational::from_number(&third).unwrap(), Rational::new(1, 3));
        assert_eq!(f64::from_number(&Number::Text("2.5".into())).unwrap(), 2.5);
        assert_eq!(
            Rational::from_number(&Number::Text("2.5".into())).unwrap(),
            Rational::new(5, 2)
        );
        assert!(Rational::from_number(&Number::Float(0.5)).is_err());
        assert!(f64::from_number(&Number::Text("x".into())).is_err());
    }

    #[test]
    fn rationals_write_integers_as_integers() {
        assert_eq!(Rational::from_i64(-4).to_number(), Number::Int(-4));
        assert_eq!(
            Rational::new(-1, 2).to_number(),
            Number::Text("-1/2".into())
        );
    }

    #[test]
    fn algebra_spec_round_trips_exactly() {
        let tol = Tolerance::default();
        let spec: AlgebraSpec = serde_json::from_str(
            r#"{"name": "e1", "dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": [[0, "3/2"]]}],
                "metric": [[2, "1/2"], ["1/2", 1]]}"#,
        )
        .unwrap();
        let ela = spec.euclidean::<Rational>(&tol).unwrap();
        let back = AlgebraSpec::from_euclidean("e1", &ela);
        assert_eq!(back.euclidean::<Rational>(&tol).unwrap(), ela);
    }

    #[test]
    fn out_of_range_index_is_a_parse_error() {
        let spec: AlgebraSpec =
            serde_json::from_str(r#"{"dim": 2, "brackets": [{"i": 0, "j": 2, "coeffs": []}]}"#)
                .unwrap();
        assert!(matches!(spec.algebra::<f64>(), Err(CliError::Parse(_))));
    }
}
