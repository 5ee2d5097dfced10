//! The subcommands. Each returns a [`Report`] carrying both renderings and
//! whether the command's own verdict was a success.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use lieharm::algebra::EuclideanLieAlgebra;
use lieharm::catalog;
use lieharm::cone;
use lieharm::construct::{self, BaseAlgebra, Certified, SemidirectData};
use lieharm::{Error, LieAlgebraMap, Matrix, Scalar, Tolerance};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::spec::{self, AlgebraSpec, FileScalar, RecipeSpec, SemidirectSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Options {
    pub tol: Tolerance,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

fn vec_json<T: FileScalar>(v: &[T]) -> Value {
    json!(v.iter().map(FileScalar::to_number).collect::<Vec<_>>())
}

fn mat_json<T: FileScalar>(m: &Matrix<T>) -> Value {
    json!(m.to_rows().iter().map(|r| vec_json(r)).collect::<Vec<_>>())
}

fn vec_text<T: Scalar>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn mat_text<T: Scalar>(m: &Matrix<T>, indent: &str) -> String {
    m.to_rows()
        .iter()
        .map(|r| format!("{indent}{}\n", vec_text(r)))
        .collect()
}

pub fn check<T: FileScalar>(path: &Path, opts: &Options) -> Result<Report, CliError> {
    let (spec, ela) = spec::load_algebra::<T>(path, &opts.tol)?;
    let u = ela.unimodular_vector_checked(&opts.tol)?;
    let kill = ela.killing_subalgebra(&opts.tol);
    let unimodular = ela.is_unimodular(&opts.tol);
    let biinvariant = ela.is_biinvariant(&opts.tol);
    let jacobi = ela.algebra().jacobi_defect();

    let mut text = String::new();
    let _ = writeln!(text, "algebra: {} (dim {})", spec.name, ela.dim());
    let _ = writeln!(text, "jacobi defect: {jacobi:e}");
    let _ = writeln!(text, "unimodular vector: {}", vec_text(&u));
    let _ = writeln!(text, "unimodular: {unimodular}");
    let _ = writeln!(text, "kill dim: {}", kill.len());
    for k in &kill {
        let _ = writeln!(text, "  {}", vec_text(k));
    }
    let _ = writeln!(text, "bi-invariant: {biinvariant}");
    let json = json!({
        "name": spec.name,
        "dim": ela.dim(),
        "jacobi_defect": jacobi,
        "unimodular_vector": vec_json(&u),
        "unimodular": unimodular,
        "kill_basis": kill.iter().map(|k| vec_json(k)).collect::<Vec<_>>(),
        "kill_dim": kill.len(),
        "biinvariant": biinvariant,
    });
    Ok(Report {
        json,
        text,
        ok: true,
    })
}

pub fn analyze<T: FileScalar>(path: &Path, opts: &Options) -> Result<Report, CliError> {
    let map = spec::load_map::<T>(path, &opts.tol)?;
    if !map.validate_hom(&opts.tol) {
        return Err(Error::NotHomomorphism {
            defect: map.hom_defect(),
        }
        .into());
    }
    let c = map.classify(&opts.tol)?;
    let mut json = json!({
        "tension": vec_json(&c.tension),
        "bitension": vec_json(&c.bitension),
        "flags": c.flags,
        "defects": c.defects,
    });
    let mut text = String::new();
    let _ = writeln!(text, "tension: {}", vec_text(&c.tension));
    let _ = writeln!(text, "bitension: {}", vec_text(&c.bitension));
    let f = c.flags;
    let _ = writeln!(text, "harmonic: {}", f.harmonic);
    let _ = writeln!(text, "biharmonic: {}", f.biharmonic);
    let _ = writeln!(text, "riemannian immersion: {}", f.riemannian_immersion);
    let _ = writeln!(text, "riemannian submersion: {}", f.riemannian_submersion);
    let d = c.defects;
    let _ = writeln!(
        text,
        "defects: homomorphism {:e}, image unimodular {:e}, bitension {:e}",
        d.homomorphism, d.image_unimodular, d.bitension
    );
    if map.is_surjective(&opts.tol) {
        let block = submersion_block(&map, &opts.tol, &mut text);
        json["submersion"] = block;
    }
    Ok(Report {
        json,
        text,
        ok: true,
    })
}

/// Kernel mean curvature, the split defect, and for Riemannian submersions
/// how far `τ` is from a Killing or parallel field.
fn submersion_block<T: FileScalar>(
    map: &LieAlgebraMap<T>,
    tol: &Tolerance,
    text: &mut String,
) -> Value {
    let mut block = json!({});
    match map.submersion_split(tol) {
        Ok(split) => {
            let _ = writeln!(text, "kernel dim: {}", split.kernel.dim());
            let _ = writeln!(
                text,
                "kernel mean curvature: {}",
                vec_text(&split.mean_curvature)
            );
            let _ = writeln!(text, "split defect: {:e}", split.defect);
            block["kernel_dim"] = json!(split.kernel.dim());
            block["mean_curvature"] = vec_json(&split.mean_curvature);
            block["split_defect"] = json!(split.defect);
        }
        Err(e) => {
            let _ = writeln!(text, "kernel split unavailable: {e}");
            block["split_error"] = json!(e.to_string());
        }
    }
    if map.is_riemannian_submersion(tol) {
        if let Ok(crit) = map.tension_field_criteria(tol) {
            let _ = writeln!(text, "tension killing defect: {:e}", crit.killing_defect);
            let _ = writeln!(text, "tension parallel defect: {:e}", crit.parallel_defect);
            block["tension_killing_defect"] = json!(crit.killing_defect);
            block["tension_parallel_defect"] = json!(crit.parallel_defect);
        }
    }
    block
}

pub fn cone<T: FileScalar>(path: &Path, opts: &Options) -> Result<Report, CliError> {
    let (_, ela) = spec::load_algebra::<T>(path, &opts.tol)?;
    let res = cone::harmonic_cone(&ela, &opts.tol)?;
    let check = cone::harmonic_dimension_check(&ela, &opts.tol)?;
    let mut text = format!("dimension: {}\n", res.dimension);
    if ela.is_unimodular(&opts.tol) {
        let _ = writeln!(text, "n(n-1)/2 + dim Kill: {}", check.predicted);
    }
    for (i, b) in res.sym_basis.iter().enumerate() {
        let _ = writeln!(text, "basis {i}:");
        text.push_str(&mat_text(b, "  "));
    }
    let json = json!({
        "dimension": res.dimension,
        "basis": res.sym_basis.iter().map(mat_json).collect::<Vec<_>>(),
        "formula_dimension": check.predicted,
        "unimodular": ela.is_unimodular(&opts.tol),
    });
    Ok(Report {
        json,
        text,
        ok: true,
    })
}

/// Builds the algebra described by a semidirect spec, writes it as an
/// algebra spec (to `out`, or into the report), and checks that reading it
/// back gives the same structure constants and metric within `10·tol`.
pub fn semidirect<T: FileScalar>(
    path: &Path,
    out: Option<&Path>,
    opts: &Options,
) -> Result<Report, CliError> {
    let sd: SemidirectSpec = spec::read_json(path)?;
    let dir = spec::spec_dir(path);
    let tol = &opts.tol;
    let (data, built, projection) = if let Some(recipe) = &sd.recipe {
        if T::EXACT {
            return Err(Error::FloatOnly.into());
        }
        let cert = run_recipe(&sd, recipe, &dir, opts)?;
        let Certified {
            data,
            algebra,
            projection,
            ..
        } = cert;
        // recipes only exist for f64, so `T` is f64 here
        let cast =
            |x: &f64| T::from_number(&spec::Number::Float(*x)).expect("float input in float mode");
        (
            data.map_scalars(cast),
            algebra.map_scalars(cast),
            projection.map_scalars(cast),
        )
    } else {
        let data = semidirect_data::<T>(&sd, &dir, tol)?;
        let (built, projection) = data.build(tol)?;
        (data, built, projection)
    };
    let report = data.check_condition(tol);
    let name = sd.name.clone().unwrap_or_else(|| "semidirect".into());
    let out_spec = AlgebraSpec::from_euclidean(&name, &built);
    let rendered =
        serde_json::to_string_pretty(&out_spec).map_err(|e| CliError::Parse(e.to_string()))?;

    let reread: AlgebraSpec =
        serde_json::from_str(&rendered).map_err(|e| CliError::Parse(e.to_string()))?;
    let reloaded = reread.euclidean::<T>(tol)?;
    let round_trip = round_trip_defect(&built, &reloaded);
    let round_trip_ok = if T::EXACT {
        round_trip == 0.0
    } else {
        round_trip <= 10.0 * tol.bound(1.0)
    };

    if let Some(out) = out {
        fs::write(out, &rendered).map_err(|source| CliError::Write {
            path: out.to_path_buf(),
            source,
        })?;
    }
    let tension = projection.tension(tol)?;
    let predicted = data.predicted_tension(tol)?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "kernel dim: {}, base dim: {}, total dim: {}",
        data.kernel().dim(),
        data.base().dim(),
        built.dim()
    );
    let _ = writeln!(
        text,
        "compatibility: bracket defect {:e}, cocycle defect {:e}",
        report.bracket_defect, report.cocycle_defect
    );
    let _ = writeln!(text, "projection tension: {}", vec_text(&tension));
    let _ = writeln!(text, "predicted tension: {}", vec_text(&predicted));
    let _ = writeln!(text, "round trip defect: {round_trip:e}");
    match out {
        Some(p) => {
            let _ = writeln!(text, "wrote {}", p.display());
        }
        None => {
            text.push_str(&rendered);
            text.push('\n');
        }
    }
    let json = json!({
        "algebra": out_spec,
        "condition": report,
        "projection_tension": vec_json(&tension),
        "predicted_tension": vec_json(&predicted),
        "round_trip_defect": round_trip,
    });
    if !round_trip_ok {
        return Err(CliError::Failed(format!(
            "written algebra differs from the built one by {round_trip:e}"
        )));
    }
    Ok(Report {
        json,
        text,
        ok: report.holds,
    })
}

fn round_trip_defect<T: Scalar>(a: &EuclideanLieAlgebra<T>, b: &EuclideanLieAlgebra<T>) -> f64 {
    let n = a.dim();
    if n != b.dim() {
        return f64::INFINITY;
    }
    let mut worst = (a.gram() - b.gram()).max_abs();
    for i in 0..n {
        worst = worst.max((&a.algebra().ad_basis(i) - &b.algebra().ad_basis(i)).max_abs());
    }
    worst
}

fn required<'a>(v: &'a Option<Value>, what: &str) -> Result<&'a Value, CliError> {
    v.as_ref()
        .ok_or_else(|| CliError::Parse(format!("semidirect spec needs `{what}`")))
}

fn base_algebra<T: FileScalar>(
    sd: &SemidirectSpec,
    dir: &Path,
    tol: &Tolerance,
) -> Result<BaseAlgebra<T>, CliError> {
    let base = spec::resolve_algebra(required(&sd.base, "base")?, dir)?.euclidean::<T>(tol)?;
    match &sd.target_metric {
        None => Ok(BaseAlgebra::riemannian(&base)),
        Some(m) => {
            let target = spec::metric::<T>(m, base.dim(), tol)?;
            Ok(BaseAlgebra::new(
                base.algebra().clone(),
                base.metric().clone(),
                target,
            )?)
        }
    }
}

fn semidirect_data<T: FileScalar>(
    sd: &SemidirectSpec,
    dir: &Path,
    tol: &Tolerance,
) -> Result<SemidirectData<T>, CliError> {
    if let Some(h) = &sd.tangent {
        let h = spec::resolve_algebra(h, dir)?.euclidean::<T>(tol)?;
        return Ok(construct::tangent_group(&h));
    }
    let kernel =
        spec::resolve_algebra(required(&sd.kernel, "kernel")?, dir)?.euclidean::<T>(tol)?;
    let base = base_algebra::<T>(sd, dir, tol)?;
    let (p, q) = (kernel.dim(), base.dim());
    let omega = sd
        .omega
        .as_ref()
        .map(|o| spec::two_form::<T>(o, q, p))
        .transpose()?;
    if let Some(f) = &sd.linear_map {
        if sd.rho.is_some() {
            return Err(CliError::Parse(
                "give either `linear_map` or `rho`, not both".into(),
            ));
        }
        let f = spec::matrix::<T>(f, "linear_map")?;
        return Ok(construct::data_from_linear_map(
            kernel, base, &f, omega, tol,
        )?);
    }
    let rho = match &sd.rho {
        Some(r) => r
            .iter()
            .map(|m| spec::matrix::<T>(m, "rho"))
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![Matrix::zeros(p, p); q],
    };
    let omega = omega.unwrap_or_else(|| construct::zero_form(q, p));
    Ok(SemidirectData::new(kernel, base, rho, omega, tol)?)
}

fn run_recipe(
    sd: &SemidirectSpec,
    recipe: &RecipeSpec,
    dir: &Path,
    opts: &Options,
) -> Result<Certified, CliError> {
    let tol = &opts.tol;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let kernel =
        spec::resolve_algebra(required(&sd.kernel, "kernel")?, dir)?.euclidean::<f64>(tol)?;
    let cert = match *recipe {
        RecipeSpec::Harmonic { budget } => {
            let base = base_algebra::<f64>(sd, dir, tol)?;
            construct::recipe_harmonic_submersion(&kernel, &base, budget, &mut rng, tol)?
        }
        RecipeSpec::Biharmonic { budget } => {
            let base = base_algebra::<f64>(sd, dir, tol)?;
            construct::recipe_biharmonic_submersion(&kernel, &base, budget, &mut rng, tol)?
        }
        RecipeSpec::Riemannian { variant, budget } => {
            let h =
                spec::resolve_algebra(required(&sd.base, "base")?, dir)?.euclidean::<f64>(tol)?;
            construct::recipe_riemannian_biharmonic(&kernel, &h, variant, budget, &mut rng, tol)?
        }
        RecipeSpec::FlatBase { budget } => {
            let h =
                spec::resolve_algebra(required(&sd.base, "base")?, dir)?.euclidean::<f64>(tol)?;
            construct::flat_base_builder(&h, &kernel, budget, &mut rng, tol)?
        }
    };
    Ok(cert)
}

/// Names of the catalog entries.
pub fn catalog_list() -> Report {
    let text = catalog::NAMES.iter().map(|n| format!("{n}\n")).collect();
    Report {
        json: json!(catalog::NAMES),
        text,
        ok: true,
    }
}

/// One entry: its algebra as a spec plus every stored claim checked.
pub fn catalog_entry(name: &str, params: &[f64], opts: &Options) -> Result<Report, CliError> {
    let entry = catalog::get(name, params)?;
    let checks = entry.verify(&opts.tol);
    let ok = checks.iter().all(|c| c.pass);
    let spec = AlgebraSpec::from_euclidean(&entry.label(), &entry.ela);
    let mut text = format!("{}\n", entry.label());
    text.push_str(&checks_text(&checks));
    let json = json!({ "entry": entry.label(), "algebra": spec, "checks": checks, "all_pass": ok });
    Ok(Report { json, text, ok })
}

/// The full example suite; succeeds iff every check passes.
pub fn catalog_suite(opts: &Options) -> Report {
    let report = catalog::run_paper_suite(&opts.tol);
    let ok = report.all_pass();
    let failed = report.failures().count();
    let mut text = checks_text(&report.checks);
    let _ = writeln!(text, "{} checks, {} failed", report.checks.len(), failed);
    let json = json!({ "checks": report.checks, "failed": failed, "all_pass": ok });
    Report { json, text, ok }
}

fn checks_text(checks: &[catalog::Check]) -> String {
    let mut text = String::new();
    for c in checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        let _ = write!(
            text,
            "{verdict} {} {}: expected {}, measured {}",
            c.entry, c.quantity, c.expected, c.measured
        );
        if let Some(n) = &c.note {
            let _ = write!(text, " ({n})");
        }
        text.push('\n');
    }
    text
}
