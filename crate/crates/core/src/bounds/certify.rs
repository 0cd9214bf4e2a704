//! Sampled certificates for the two width bounds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::aeta::compute_a;
use super::otsuki::FrameForm;
use super::width::{theorem1_bound_raw, theorem2_bound_raw};
use crate::cone::{cone_contains, cone_with_axis, min_enclosing_cone, plane_distance, Cone};
use crate::geometry::{evaluate_point, ChartedMap, DomainBox, MetricMode, PointGeometry, SecondFundamentalForm};
use crate::sampling::SampleSpec;
use crate::{par, Error, Result, Vector};

/// `satisfied` holds when `margin >= -SATISFIED_SLACK`.
pub const SATISFIED_SLACK: f64 = 1e-9;

const SCOPE: &str = "certificate over the listed samples of the domain box only";

/// How the cone around the sampled image is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ConeChoice {
    /// Minimal enclosing cone with the given vertex.
    Fit,
    /// Narrowest cone with the given vertex and axis.
    Axis(Vector),
    /// A prescribed cone; samples outside it are reported as failures.
    Fixed(Cone),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub index: usize,
    pub point: Vec<f64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub parameters: BTreeMap<String, f64>,
    pub sample_count: usize,
    pub sample_box: DomainBox,
    pub samples: SampleSpec,
    pub sup_ratio: f64,
    pub sup_ratio_at: Vec<f64>,
    pub d: f64,
    pub cone: Cone,
    #[serde(rename = "A_used")]
    pub a_used: f64,
    #[serde(rename = "A_eta")]
    pub a_eta: f64,
    pub isometric: bool,
    pub rhs_bound: f64,
    /// The bound before clamping to `[0, 1]`.
    pub rhs_unclamped: f64,
    pub unconstrained: bool,
    pub lhs: f64,
    pub satisfied: bool,
    pub margin: f64,
    pub failures: Vec<SampleFailure>,
    pub scope: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub family: String,
    pub parameters: BTreeMap<String, f64>,
    pub sample_count: usize,
    pub sample_box: DomainBox,
    pub samples: SampleSpec,
    pub codimension: usize,
    pub chi: f64,
    /// `"input"` or `"sampled"`.
    pub chi_source: String,
    pub max_sectional: f64,
    pub d: f64,
    pub cone: Cone,
    #[serde(rename = "A_used")]
    pub a_used: f64,
    #[serde(rename = "A_eta")]
    pub a_eta: f64,
    pub rhs_bound: f64,
    /// The bound before clamping to `[0, 1]`.
    pub rhs_unclamped: f64,
    pub unconstrained: bool,
    pub lhs: f64,
    pub satisfied: bool,
    pub margin: f64,
    pub failures: Vec<SampleFailure>,
    pub assumed_hypotheses: Vec<String>,
    pub scope: String,
}

macro_rules! labelled {
    ($t:ty) => {
        impl $t {
            /// Attaches a family id and its numeric parameters.
            pub fn labelled(mut self, family: &str, parameters: BTreeMap<String, f64>) -> Self {
                self.family = family.to_string();
                self.parameters = parameters;
                self
            }

            /// A finding: the inequality fails or some sample breaks a hypothesis.
            pub fn is_finding(&self) -> bool {
                !self.satisfied || !self.failures.is_empty()
            }
        }
    };
}
labelled!(VerificationReport);
labelled!(Theorem2Report);

fn sweep<M: ChartedMap + ?Sized>(map: &M, mode: &MetricMode, points: &[Vector]) -> Result<Vec<PointGeometry>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    par::map_range(points.len(), |i| evaluate_point(map, mode, &points[i]).map_err(|e| e.at_sample(i, &points[i])))
        .into_iter()
        .collect()
}

/// Cone per `choice`, plus containment failures for prescribed cones.
fn place_cone(
    choice: &ConeChoice,
    images: &[Vector],
    points: &[Vector],
    o: &Vector,
) -> Result<(Cone, Vec<SampleFailure>)> {
    let cone = match choice {
        ConeChoice::Fit => min_enclosing_cone(images, o)?,
        ConeChoice::Axis(v) => cone_with_axis(images, o, v)?,
        ConeChoice::Fixed(c) => c.clone(),
    };
    let mut failures = Vec::new();
    if matches!(choice, ConeChoice::Fixed(_)) {
        for (i, z) in images.iter().enumerate() {
            let reason = match cone_contains(&cone, z) {
                Ok(true) => continue,
                Ok(false) => "image outside the cone".to_string(),
                Err(e) => e.to_string(),
            };
            failures.push(SampleFailure { index: i, point: points[i].iter().copied().collect(), reason });
        }
    }
    Ok((cone, failures))
}

struct Verdict {
    rhs: f64,
    raw: f64,
    unconstrained: bool,
    lhs: f64,
    margin: f64,
    satisfied: bool,
}

fn verdict(raw: f64, cone: &Cone) -> Verdict {
    let rhs = raw.clamp(0.0, 1.0);
    let lhs = cone.cos_width();
    let margin = rhs - lhs;
    Verdict { rhs, raw, unconstrained: raw > 1.0, lhs, margin, satisfied: margin >= -SATISFIED_SLACK }
}

/// Samples the domain box, computes `sup |τ|/|dphi|²` and the plane distance
/// along the cone axis, and compares `cos θ` with the bound. With `isometric`
/// the constant is `A_m`, otherwise `A_1`.
pub fn certify_theorem1<M: ChartedMap + ?Sized>(
    map: &M,
    mode: &MetricMode,
    o: &Vector,
    choice: &ConeChoice,
    spec: &SampleSpec,
    isometric: bool,
) -> Result<VerificationReport> {
    if isometric && !mode.is_induced() {
        return Err(Error::InvalidParams("the isometric refinement needs the induced metric".into()));
    }
    let sample_box = map.domain_box();
    let points = spec.generate(&sample_box);
    let geo = sweep(map, mode, &points)?;
    let images: Vec<Vector> = geo.iter().map(|p| p.image().clone()).collect();

    let ratios: Vec<f64> = geo.iter().map(|p| p.tension.ratio()).collect();
    let arg = (0..ratios.len()).fold(0, |b, i| if ratios[i] > ratios[b] { i } else { b });
    let sup_ratio = ratios[arg];

    let (cone, failures) = place_cone(choice, &images, &points, o)?;
    let d = plane_distance(&images, o, &cone.axis())?;
    let eta = if isometric { map.dim_domain() as f64 } else { 1.0 };
    let a_used = compute_a(eta).value;
    let v = verdict(theorem1_bound_raw(d, sup_ratio, a_used), &cone);

    Ok(VerificationReport {
        family: "custom".into(),
        parameters: BTreeMap::new(),
        sample_count: points.len(),
        sample_box,
        samples: spec.clone(),
        sup_ratio,
        sup_ratio_at: points[arg].iter().copied().collect(),
        d,
        cone,
        a_used,
        a_eta: eta,
        isometric,
        rhs_bound: v.rhs,
        rhs_unclamped: v.raw,
        unconstrained: v.unconstrained,
        lhs: v.lhs,
        satisfied: v.satisfied,
        margin: v.margin,
        failures,
        scope: SCOPE.into(),
    })
}

/// Width bound for isometric immersions with `0 < n - m < m`. Without `chi`
/// the square root of the largest sampled sectional curvature is used; a
/// given `chi` is checked against the samples.
pub fn certify_theorem2<M: ChartedMap + ?Sized>(
    map: &M,
    o: &Vector,
    choice: &ConeChoice,
    spec: &SampleSpec,
    chi: Option<f64>,
) -> Result<Theorem2Report> {
    let (m, n) = (map.dim_domain(), map.dim_ambient());
    if !(n > m && n - m < m) {
        return Err(Error::CodimensionOutOfRange { codim: n.saturating_sub(m), m });
    }
    if let Some(c) = chi {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::InvalidParams("chi must be finite and non-negative".into()));
        }
    }
    let sample_box = map.domain_box();
    let points = spec.generate(&sample_box);
    let geo = sweep(map, &MetricMode::Induced, &points)?;
    let images: Vec<Vector> = geo.iter().map(|p| p.image().clone()).collect();
    let sectional = par::map_range(geo.len(), |i| {
        let sff = SecondFundamentalForm::from_point(&geo[i]);
        FrameForm::new(&sff, &geo[i].metric).max_sectional(spec.seed ^ i as u64)
    });
    let max_sectional = sectional.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let (cone, mut failures) = place_cone(choice, &images, &points, o)?;
    let (chi, chi_source) = match chi {
        Some(c) => {
            for (i, k) in sectional.iter().enumerate() {
                if *k > c * c + 1e-9 {
                    failures.push(SampleFailure {
                        index: i,
                        point: points[i].iter().copied().collect(),
                        reason: format!("sectional curvature {k} exceeds chi^2"),
                    });
                }
            }
            (c, "input")
        }
        None => (max_sectional.max(0.0).sqrt(), "sampled"),
    };
    let d = plane_distance(&images, o, &cone.axis())?;
    let a_used = compute_a(1.0).value;
    let v = verdict(theorem2_bound_raw(d, chi, a_used), &cone);

    Ok(Theorem2Report {
        family: "custom".into(),
        parameters: BTreeMap::new(),
        sample_count: points.len(),
        sample_box,
        samples: spec.clone(),
        codimension: n - m,
        chi,
        chi_source: chi_source.into(),
        max_sectional,
        d,
        cone,
        a_used,
        a_eta: 1.0,
        rhs_bound: v.rhs,
        rhs_unclamped: v.raw,
        unconstrained: v.unconstrained,
        lhs: v.lhs,
        satisfied: v.satisfied,
        margin: v.margin,
        failures,
        assumed_hypotheses: vec!["weak maximum principle for the Hessian".into()],
        scope: SCOPE.into(),
    })
}
