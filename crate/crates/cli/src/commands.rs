use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use conebound::bounds::{
    aux_quantities, certify_theorem1, certify_theorem2, compute_a_seeded, finale_check, hess_u_direction,
    omega_region, AuxParams, ConeChoice,
};
use conebound::cone::cloud::{read_points, CloudError};
use conebound::cone::{cone_with_axis, corner_test, min_enclosing_cone, min_enclosing_cone_with, plane_distance, Cone, FitOptions};
use conebound::geometry::{evaluate_point, hessian_scalar, ChartedMap, MetricMode};
use conebound::models::{integrability_test, sharpness_series, Family, FamilyParams, IntegrabilityOptions};
use conebound::sampling::SampleSpec;
use conebound::{par, Vector};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;

/// Relative tolerance for the Δu and Hessian identity checks.
const IDENTITY_TOLERANCE: f64 = 1e-3;

/// What a command produced. `finding` is set for mathematical findings
/// (exit 2); tool errors travel as `CliError` instead.
pub struct Outcome {
    pub body: Value,
    pub finding: Option<String>,
    pub summary: String,
}

impl Outcome {
    fn ok(body: Value, summary: String) -> Self {
        Self { body, finding: None, summary }
    }
}

#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub family: Option<String>,
    pub input: Option<String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub format: Format,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

impl RunConfig {
    pub fn for_command(cmd: &Command, format: Format) -> Self {
        let base = |command: &str, parameters: Value| RunConfig {
            command: command.into(),
            family: None,
            input: None,
            parameters,
            seed: None,
            out: None,
            format,
        };
        let with_family = |command: &str, f: &FamilyArgs, parameters: Value| RunConfig {
            family: Some(f.family.clone()),
            seed: Some(f.seed),
            out: path_string(&f.out),
            ..base(command, parameters)
        };
        match cmd {
            Command::Verify(Verify::Theorem1(a)) => with_family("verify theorem1", &a.family, to_value(a)),
            Command::Verify(Verify::Theorem2(a)) => with_family("verify theorem2", &a.family, to_value(a)),
            Command::Verify(Verify::ProofIdentities(a)) => {
                with_family("verify proof-identities", &a.family, to_value(a))
            }
            Command::FitCone(a) => RunConfig {
                input: Some(a.points.display().to_string()),
                seed: Some(a.seed),
                out: path_string(&a.out),
                ..base("fit-cone", to_value(a))
            },
            Command::CornerTest(a) => RunConfig {
                input: Some(a.points.display().to_string()),
                out: path_string(&a.out),
                ..base("corner-test", to_value(a))
            },
            Command::AEta(a) => RunConfig { seed: Some(a.seed), out: path_string(&a.out), ..base("a-eta", to_value(a)) },
            Command::Models(Models::Stochastic(a)) => RunConfig {
                family: Some(a.model.clone()),
                out: path_string(&a.out),
                ..base("models stochastic", to_value(a))
            },
            Command::Models(Models::Sharpness(a)) => RunConfig {
                family: Some("paraboloid".into()),
                seed: Some(a.seed),
                out: path_string(&a.out),
                ..base("models sharpness", to_value(a))
            },
            Command::Plot(a) => RunConfig {
                input: Some(a.report.display().to_string()),
                out: path_string(&a.out),
                ..base("plot", to_value(a))
            },
        }
    }
}

fn series(x: &str, y: &str, points: Vec<(f64, f64)>) -> Value {
    json!({ "x": x, "y": y, "points": points.into_iter().map(|(a, b)| vec![a, b]).collect::<Vec<_>>() })
}

fn degenerate(e: &conebound::Error) -> Option<f64> {
    match e.root() {
        conebound::Error::DegenerateCone { angle } => Some(*angle),
        _ => None,
    }
}

fn degenerate_outcome(angle: f64, mut context: Value) -> Outcome {
    context["finding"] = json!("degenerate-cone");
    context["angle"] = json!(angle);
    Outcome {
        body: context,
        finding: Some("degenerate-cone".into()),
        summary: format!("no non-degenerate cone: minimal angular radius {angle:.6} rad"),
    }
}

struct Setup {
    id: String,
    map: Arc<dyn ChartedMap>,
    parameters: BTreeMap<String, f64>,
    vertex: Vector,
    spec: SampleSpec,
}

fn setup(f: &FamilyArgs) -> Result<Setup, CliError> {
    let params = FamilyParams {
        m: f.m,
        d: f.d,
        box_radius: f.box_radius,
        radius: f.radius,
        center_height: f.center_height,
    };
    let family = Family::from_id(&f.family, &params)?;
    let map = family.map().ok_or_else(|| {
        CliError::InvalidFlag(format!("{} has no chart map; use `models stochastic`", f.family))
    })?;
    let n = map.dim_ambient();
    let vertex = match &f.vertex {
        Some(v) if v.len() != n => {
            return Err(CliError::InvalidFlag(format!("--vertex has {} entries, ambient dimension is {n}", v.len())))
        }
        Some(v) => Vector::from_column_slice(v),
        None => Vector::zeros(n),
    };
    if let Some(a) = &f.axis {
        if a.len() != n {
            return Err(CliError::InvalidFlag(format!("--axis has {} entries, ambient dimension is {n}", a.len())));
        }
    }
    let mut parameters = BTreeMap::new();
    match &family {
        Family::Paraboloid(p) => {
            parameters.insert("m".into(), p.m as f64);
            parameters.insert("d".into(), p.d);
            parameters.insert("box".into(), p.box_radius);
        }
        Family::Sphere(s) => {
            parameters.insert("radius".into(), s.radius);
            parameters.insert("center_height".into(), s.center_height);
        }
        Family::FlatCone(c) => {
            parameters.insert("r_min".into(), c.r_min);
            parameters.insert("r_max".into(), c.r_max);
        }
        Family::Plane(_) => {
            parameters.insert("m".into(), f.m as f64);
            parameters.insert("d".into(), f.d);
            parameters.insert("box".into(), f.box_radius);
        }
        Family::Rotational(_) => unreachable!("rotational models have no map"),
    }
    Ok(Setup {
        id: family.id(),
        map,
        parameters,
        vertex,
        spec: SampleSpec::new(f.samples, f.seed, f.scheme.into()),
    })
}

fn cone_choice(f: &FamilyArgs, vertex: &Vector) -> Result<ConeChoice, CliError> {
    Ok(match (&f.axis, f.theta) {
        (Some(axis), Some(theta)) => ConeChoice::Fixed(
            Cone::new(vertex.clone(), Vector::from_column_slice(axis), theta)
                .map_err(|e| CliError::InvalidFlag(format!("--axis/--theta: {e}")))?,
        ),
        (Some(axis), None) => ConeChoice::Axis(Vector::from_column_slice(axis)),
        _ => ConeChoice::Fit,
    })
}

fn verdict_finding(satisfied: bool, failures: usize) -> Option<String> {
    if failures > 0 {
        Some("hypothesis-violated".into())
    } else if !satisfied {
        Some("bound-violated".into())
    } else {
        None
    }
}

pub fn theorem1(a: &Theorem1Args) -> Result<Outcome, CliError> {
    let s = setup(&a.family)?;
    let mode = match a.metric {
        MetricArg::Induced => MetricMode::Induced,
        MetricArg::Euclidean => MetricMode::euclidean(s.map.dim_domain()),
    };
    if a.isometric && a.metric != MetricArg::Induced {
        return Err(CliError::InvalidFlag("--isometric needs --metric induced".into()));
    }
    let choice = cone_choice(&a.family, &s.vertex)?;
    match certify_theorem1(&*s.map, &mode, &s.vertex, &choice, &s.spec, a.isometric) {
        Ok(r) => {
            let r = r.labelled(&s.id, s.parameters);
            let summary = format!(
                "theorem 1 on {} ({} samples): cos θ = {:.6}, bound = {:.6}{}, margin = {:.3e}: {}",
                r.family,
                r.sample_count,
                r.lhs,
                r.rhs_bound,
                if r.unconstrained { " (unconstrained)" } else { "" },
                r.margin,
                if r.satisfied { "satisfied" } else { "NOT satisfied" }
            );
            let finding = verdict_finding(r.satisfied, r.failures.len());
            Ok(Outcome { body: to_value(&r), finding, summary })
        }
        Err(e) => match degenerate(&e) {
            Some(angle) => Ok(degenerate_outcome(angle, json!({ "family": s.id, "parameters": s.parameters }))),
            None => Err(e.into()),
        },
    }
}

pub fn theorem2(a: &Theorem2Args) -> Result<Outcome, CliError> {
    let s = setup(&a.family)?;
    if let Some(chi) = a.chi {
        if !(chi >= 0.0) {
            return Err(CliError::InvalidFlag("--chi must be non-negative".into()));
        }
    }
    let choice = cone_choice(&a.family, &s.vertex)?;
    match certify_theorem2(&*s.map, &s.vertex, &choice, &s.spec, a.chi) {
        Ok(r) => {
            let r = r.labelled(&s.id, s.parameters);
            let summary = format!(
                "theorem 2 on {} ({} samples, chi = {:.6} {}): cos θ = {:.6}, bound = {:.6}: {} (assumed: {})",
                r.family,
                r.sample_count,
                r.chi,
                r.chi_source,
                r.lhs,
                r.rhs_bound,
                if r.satisfied { "satisfied" } else { "NOT satisfied" },
                r.assumed_hypotheses.join("; ")
            );
            let finding = verdict_finding(r.satisfied, r.failures.len());
            Ok(Outcome { body: to_value(&r), finding, summary })
        }
        Err(e) => match degenerate(&e) {
            Some(angle) => Ok(degenerate_outcome(angle, json!({ "family": s.id, "parameters": s.parameters }))),
            None => Err(e.into()),
        },
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn proof_identities(a: &ProofArgs) -> Result<Outcome, CliError> {
    let s = setup(&a.family)?;
    let map = &*s.map;
    let points = s.spec.generate(&map.domain_box());
    let images: Vec<Vector> = points.iter().map(|x| map.evaluate(x)).collect();
    let o = &s.vertex;
    let cone = match &a.family.axis {
        Some(axis) => cone_with_axis(&images, o, &Vector::from_column_slice(axis)),
        None => min_enclosing_cone(&images, o),
    };
    let cone = match cone {
        Ok(c) => c,
        Err(e) => match degenerate(&e) {
            Some(angle) => return Ok(degenerate_outcome(angle, json!({ "family": s.id, "parameters": s.parameters }))),
            None => return Err(e.into()),
        },
    };
    let v = cone.axis();
    let b = a.b.unwrap_or(cone.cos_width() * (1.0 - 1e-9));
    let (params, x_o) = match a.x_o {
        None => AuxParams::at_median(&images, o, &v, b, a.xi, a.alpha),
        Some(i) if i < images.len() => AuxParams::anchored(&images[i], o, &v, b, a.xi, a.alpha).map(|p| (p, i)),
        Some(i) => return Err(CliError::InvalidFlag(format!("--x-o {i} exceeds the sample count"))),
    }
    .map_err(|e| CliError::InvalidFlag(format!("auxiliary parameters: {e}")))?;

    let mode = MetricMode::Induced;
    let delta_u = par::try_map(&points, |x| aux_quantities(map, &mode, x, &params, o, &v))?;
    let delta_u_err = delta_u.iter().map(|q| rel(q.delta_u_analytic, q.delta_u_numeric)).fold(0.0, f64::max);

    let region = omega_region(&images, &params, o, &v, Some(x_o))?;
    let members: Vec<Vector> = region.members.iter().map(|&i| points[i].clone()).collect();
    let finale = finale_check(map, &mode, &members, &params, o, &v)?;

    let hess_points = &members[..members.len().min(200)];
    let hess_errs = par::try_map(hess_points, |x| -> conebound::Result<f64> {
        let point = evaluate_point(map, &mode, x)?;
        let w = point.metric.orthonormal_basis().column(0).into_owned();
        let u_of = |y: &Vector| params.u(&(map.evaluate(y) - o), &v);
        let oracle = hessian_scalar(&u_of, &point.metric, x)?.along(&w);
        Ok(rel(hess_u_direction(map, x, &w, &params, o, &v)?, oracle))
    })?;
    let hess_err = hess_errs.iter().copied().fold(0.0, f64::max);

    let finding = if !region.violations.is_empty() || finale.hypothesis_violated() {
        Some("hypothesis-violated")
    } else if !finale.positive {
        Some("floor-violated")
    } else if !(delta_u_err < IDENTITY_TOLERANCE && hess_err < IDENTITY_TOLERANCE) {
        Some("identity-mismatch")
    } else {
        None
    };
    let summary = format!(
        "proof identities on {} ({} samples, |Ω_o| = {}): Δu rel err {:.2e}, Hessian rel err {:.2e}, \
         Ω_o violations {}, min Lu = {:.4e} vs δ = {:.4e}, tension requirement fails at {} samples",
        s.id,
        points.len(),
        members.len(),
        delta_u_err,
        hess_err,
        region.violations.len(),
        finale.min_lu,
        finale.delta,
        finale.hypothesis_violations.len()
    );
    let body = json!({
        "family": s.id,
        "parameters": s.parameters,
        "sample_count": points.len(),
        "cone": cone,
        "aux_params": params,
        "x_o": x_o,
        "x_o_point": points[x_o].iter().copied().collect::<Vec<_>>(),
        "delta_u_max_rel_error": delta_u_err,
        "hess_u_max_rel_error": hess_err,
        "hess_u_samples": hess_points.len(),
        "identity_tolerance": IDENTITY_TOLERANCE,
        "omega": {
            "u_xo": region.u_xo,
            "member_count": region.members.len(),
            "violations": region.violations,
        },
        "finale": finale,
        "finding": finding,
    });
    Ok(Outcome { body, finding: finding.map(String::from), summary })
}

fn load_points(path: &Path, dim: Option<usize>) -> Result<Vec<Vector>, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    read_points(file, dim).map_err(|e| match e {
        CloudError::Parse { line, message } => CliError::Parse { path: path.to_path_buf(), line: line as usize, message },
        CloudError::Io(source) => CliError::io(path, source),
    })
}

pub fn fit_cone(a: &FitConeArgs) -> Result<Outcome, CliError> {
    let points = load_points(&a.points, Some(a.vertex.len()))?;
    let o = Vector::from_column_slice(&a.vertex);
    match min_enclosing_cone_with(&points, &o, FitOptions { seed: a.seed, ..Default::default() }) {
        Ok(cone) => {
            let d = plane_distance(&points, &o, &cone.axis())?;
            let summary = format!(
                "cone around {} points: width {:.9} rad, cos θ = {:.9}",
                points.len(),
                cone.width,
                cone.cos_width()
            );
            Ok(Outcome::ok(
                json!({ "cone": cone, "cos_width": cone.cos_width(), "plane_distance": d, "sample_count": points.len() }),
                summary,
            ))
        }
        Err(e) => match degenerate(&e) {
            Some(angle) => Ok(degenerate_outcome(angle, json!({ "sample_count": points.len() }))),
            None => Err(e.into()),
        },
    }
}

pub fn corner(a: &CornerArgs) -> Result<Outcome, CliError> {
    let points = load_points(&a.points, Some(a.vertex.len()))?;
    let p = Vector::from_column_slice(&a.vertex);
    let r = corner_test(&points, &p)?;
    let summary = match &r.witness {
        Some(c) if r.is_corner => format!("corner: witness cone of width {:.9} rad", c.width),
        _ => "not a corner: every cone with this vertex degenerates".into(),
    };
    Ok(Outcome::ok(json!({ "result": r, "sample_count": points.len() }), summary))
}

pub fn a_eta(a: &AEtaArgs) -> Result<Outcome, CliError> {
    if a.eta.is_empty() || a.eta.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(CliError::InvalidFlag("--eta values must be positive".into()));
    }
    let results: Vec<_> = a.eta.iter().map(|&e| compute_a_seeded(e, a.seed)).collect();
    let summary =
        results.iter().map(|r| format!("A_{} = {:.6}", r.eta, r.value)).collect::<Vec<_>>().join(", ");
    let mut body = json!({
        "results": results,
        "series": { "a_eta": series("eta", "A_eta", results.iter().map(|r| (r.eta, r.value)).collect()) },
    });
    if let [single] = results.as_slice() {
        body["eta"] = json!(single.eta);
        body["value"] = json!(single.value);
    }
    Ok(Outcome::ok(body, summary))
}

pub fn stochastic(a: &StochasticArgs) -> Result<Outcome, CliError> {
    let params = FamilyParams { m: a.m, ..Default::default() };
    let model = match Family::from_id(&a.model, &params)? {
        Family::Rotational(m) => m,
        _ => return Err(CliError::InvalidFlag(format!("{} is not a rotational model", a.model))),
    };
    let options = IntegrabilityOptions { r_max: a.r_max, ..Default::default() };
    let verdict = match a.criterion {
        Criterion::Model => integrability_test(|r| model.model_integrand(r), a.r_start, options)?,
        Criterion::Volume => {
            integrability_test(|r| model.volume_growth_integrand(r, a.beta), a.r_start, options)?
        }
    };
    let summary = format!(
        "{} (m = {}), {} criterion: {:?} over [{}, {}] ({})",
        a.model,
        a.m,
        match a.criterion {
            Criterion::Model => "volume quotient",
            Criterion::Volume => "volume growth",
        },
        verdict.classification,
        a.r_start,
        verdict.radii.last().copied().unwrap_or(a.r_start),
        verdict.scope
    );
    let partial = verdict.radii.iter().copied().zip(verdict.partial_integrals.iter().copied()).collect();
    let body = json!({
        "model": model,
        "criterion": a.criterion,
        "verdict": verdict,
        "series": { "partial_integrals": series("r", "integral", partial) },
    });
    Ok(Outcome::ok(body, summary))
}

pub fn sharpness(a: &SharpnessArgs) -> Result<Outcome, CliError> {
    if a.d_min > a.d_max {
        return Err(CliError::InvalidFlag("--d-min exceeds --d-max".into()));
    }
    let ds: Vec<f64> = if a.points == 1 {
        vec![a.d_min]
    } else {
        let step = (a.d_max / a.d_min).ln() / (a.points - 1) as f64;
        (0..a.points).map(|k| a.d_min * (step * k as f64).exp()).collect()
    };
    let spec = SampleSpec::radial(a.samples, a.seed);
    let pts = sharpness_series(a.m, &ds, a.box_radius, &spec)?;
    let min_small = pts.iter().filter(|p| p.d <= 0.05).map(|p| p.ratio).fold(f64::INFINITY, f64::min);
    let summary = format!(
        "sharpness over {} values of d in [{:.3e}, {:.3e}]: min cos²θ_d/d for d ≤ 0.05 is {:.4}",
        pts.len(),
        a.d_min,
        a.d_max,
        min_small
    );
    let body = json!({
        "points": pts,
        "series": {
            "sharpness": series("d", "cos2_theta_over_d", pts.iter().map(|p| (p.d, p.ratio)).collect()),
            "cos2_theta": series("d", "cos2_theta", pts.iter().map(|p| (p.d, p.cos2_fitted)).collect()),
        },
    });
    Ok(Outcome::ok(body, summary))
}

/// Two-column CSV of a report series, with a comment line naming it.
pub fn plot(a: &PlotArgs) -> Result<(Vec<u8>, String), CliError> {
    let text = std::fs::read(&a.report).map_err(|e| CliError::io(&a.report, e))?;
    let report: Value = serde_json::from_slice(&text)?;
    let missing = || CliError::MissingSeries(a.series.clone());
    let s = report.get("series").and_then(|s| s.get(&a.series)).ok_or_else(missing)?;
    let points = s.get("points").and_then(Value::as_array).filter(|p| !p.is_empty()).ok_or_else(missing)?;
    let x = s.get("x").and_then(Value::as_str).unwrap_or("x");
    let y = s.get("y").and_then(Value::as_str).unwrap_or("y");
    let mut out = format!("# series: {}\n{x},{y}\n", a.series);
    for p in points {
        let pair = p.as_array().filter(|p| p.len() == 2).ok_or_else(missing)?;
        let (px, py) = (pair[0].as_f64().ok_or_else(missing)?, pair[1].as_f64().ok_or_else(missing)?);
        out.push_str(&format!("{px:.16e},{py:.16e}\n"));
    }
    Ok((out.into_bytes(), format!("{} rows of {}", points.len(), a.series)))
}
