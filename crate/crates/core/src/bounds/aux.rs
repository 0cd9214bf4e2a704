//! The auxiliary function `u = sqrt(T² + a²|phi|²) - <phi, v>` and the
//! pointwise estimates built on it.

use serde::{Deserialize, Serialize};

use crate::geometry::{
    evaluate_point, hessian_scalar, ChartedMap, MetricMode, PointGeometry, SecondFundamentalForm,
};
use crate::{Error, Result, Vector};

/// Relative slack on `|phi| <= phi_max`.
const PHI_MAX_SLACK: f64 = 1e-9;
/// Absolute slack on `Lu >= delta`.
const FLOOR_SLACK: f64 = 1e-9;
/// Unit-length tolerance for tangent directions.
const UNIT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxParams {
    #[serde(rename = "T")]
    pub t: f64,
    pub b: f64,
    pub xi: f64,
    pub alpha: f64,
    pub a: f64,
}

impl AuxParams {
    /// Requires `T > 0`, `b, ξ ∈ (0,1)` and `α ∈ (0, sqrt(1-ξ))`, so that
    /// `ξ + a²/b² < 1`.
    pub fn new(t: f64, b: f64, xi: f64, alpha: f64) -> Result<Self> {
        let bad = |what: &str| Err(Error::InvalidParams(what.to_string()));
        if !(t > 0.0 && t.is_finite()) {
            return bad("T must be positive");
        }
        if !(b > 0.0 && b < 1.0) {
            return bad("b must lie in (0, 1)");
        }
        if !(xi > 0.0 && xi < 1.0) {
            return bad("xi must lie in (0, 1)");
        }
        if !(alpha > 0.0 && alpha * alpha < 1.0 - xi) {
            return bad("alpha must lie in (0, sqrt(1 - xi))");
        }
        Ok(Self { t, b, xi, alpha, a: b * alpha })
    }

    /// Takes `T = <phi(x_o) - o, v>`.
    pub fn anchored(image: &Vector, o: &Vector, v: &Vector, b: f64, xi: f64, alpha: f64) -> Result<Self> {
        Self::new((image - o).dot(v), b, xi, alpha)
    }

    /// Anchors at the sample of median `u`. Since `u` depends on `T`, the
    /// ranking uses the median height `<phi - o, v>` as a provisional `T`;
    /// the returned parameters then take `T = <phi(x_o) - o, v>`.
    pub fn at_median(
        images: &[Vector],
        o: &Vector,
        v: &Vector,
        b: f64,
        xi: f64,
        alpha: f64,
    ) -> Result<(Self, usize)> {
        if images.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut heights: Vec<f64> = images.iter().map(|z| (z - o).dot(v)).collect();
        heights.sort_by(f64::total_cmp);
        let probe = Self::new(heights[heights.len() / 2], b, xi, alpha)?;
        let x_o = omega_region(images, &probe, o, v, None)?.x_o;
        Ok((Self::anchored(&images[x_o], o, v, b, xi, alpha)?, x_o))
    }

    fn root(&self, r: f64) -> f64 {
        (self.t * self.t + self.a * self.a * r * r).sqrt()
    }

    /// `u` at a point whose offset from the vertex is `phi`.
    pub fn u(&self, phi: &Vector, v: &Vector) -> f64 {
        self.root(phi.norm()) - phi.dot(v)
    }

    /// `S = a²|phi| / sqrt(T² + a²|phi|²)`.
    pub fn s(&self, r: f64) -> f64 {
        self.a * self.a * r / self.root(r)
    }

    /// `T / sqrt(b² - a²)`.
    pub fn phi_max(&self) -> f64 {
        self.t / (self.b * self.b - self.a * self.a).sqrt()
    }

    /// `(a² sqrt(b²-a²) / (bT)) (1 - ξ - a²/b²)`.
    pub fn delta(&self) -> f64 {
        let (a2, b) = (self.a * self.a, self.b);
        a2 * (b * b - a2).sqrt() / (b * self.t) * (1.0 - self.xi - a2 / (b * b))
    }

    /// Right-hand side factor of the tension requirement:
    /// `T|τ| < (ξ a² sqrt(b²-a²) / b) |dphi|²`.
    pub fn tension_factor(&self) -> f64 {
        let a2 = self.a * self.a;
        self.xi * a2 * (self.b * self.b - a2).sqrt() / self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxQuantities {
    pub u: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub phi_max: f64,
    pub delta_u_analytic: f64,
    pub delta_u_numeric: f64,
    #[serde(rename = "Lu")]
    pub lu: f64,
}

fn offset(point: &PointGeometry, o: &Vector) -> Result<Vector> {
    let phi = point.image() - o;
    let r = phi.norm();
    if !(r > crate::cone::APEX_TOLERANCE * (1.0 + o.norm())) {
        return Err(Error::ApexSample { distance: r });
    }
    Ok(phi)
}

/// Analytic `Δu` from the jet, tension and metric at one point.
fn delta_u(point: &PointGeometry, phi: &Vector, params: &AuxParams, v: &Vector) -> f64 {
    let r = phi.norm();
    let s = params.s(r);
    let tau = point.tau();
    let energy = point.tension.energy_density;
    let m = point.jet.dim_domain();
    let proj: Vec<f64> = point.jet.first.iter().map(|d| phi.dot(d)).collect();
    let mut frame_sum = 0.0;
    for i in 0..m {
        for j in 0..m {
            frame_sum += point.metric.g_inv[(i, j)] * proj[i] * proj[j];
        }
    }
    let drift = phi * (s / r) - v;
    drift.dot(&tau) + s * energy / r - s * s / (r * r * params.root(r)) * frame_sum
}

pub fn aux_quantities<M: ChartedMap + ?Sized>(
    map: &M,
    mode: &MetricMode,
    x: &Vector,
    params: &AuxParams,
    o: &Vector,
    v: &Vector,
) -> Result<AuxQuantities> {
    let point = evaluate_point(map, mode, x)?;
    let phi = offset(&point, o)?;
    let analytic = delta_u(&point, &phi, params, v);
    let u_of = |y: &Vector| params.u(&(map.evaluate(y) - o), v);
    let numeric = hessian_scalar(&u_of, &point.metric, x)?.laplacian(&point.metric);
    Ok(AuxQuantities {
        u: params.u(&phi, v),
        s: params.s(phi.norm()),
        phi_max: params.phi_max(),
        delta_u_analytic: analytic,
        delta_u_numeric: numeric,
        lu: analytic / point.tension.energy_density,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `u >= T` at a point inside the cone.
    UBound,
    /// `|phi| > phi_max`.
    Radius,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaViolation {
    pub index: usize,
    pub kind: ViolationKind,
    pub value: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaRegion {
    pub x_o: usize,
    pub u_xo: f64,
    /// Indices with `u >= u(x_o)`, in input order.
    pub members: Vec<usize>,
    pub violations: Vec<OmegaViolation>,
}

/// Superlevel set `{u >= u(x_o)}` over sampled images, checked against
/// `u < T` (where the image lies in the cone of opening `b`) and
/// `|phi| <= phi_max`. Without `x_o` the sample of median `u` is used.
pub fn omega_region(
    images: &[Vector],
    params: &AuxParams,
    o: &Vector,
    v: &Vector,
    x_o: Option<usize>,
) -> Result<OmegaRegion> {
    if images.is_empty() {
        return Err(Error::EmptyInput);
    }
    let us: Vec<f64> = images.iter().map(|z| params.u(&(z - o), v)).collect();
    let x_o = match x_o {
        Some(i) if i < images.len() => i,
        Some(i) => return Err(Error::InvalidParams(format!("x_o index {i} out of range"))),
        None => {
            let mut order: Vec<usize> = (0..us.len()).collect();
            order.sort_by(|&i, &j| us[i].total_cmp(&us[j]).then(i.cmp(&j)));
            order[order.len() / 2]
        }
    };
    let u_xo = us[x_o];
    let members: Vec<usize> = (0..us.len()).filter(|&i| us[i] >= u_xo).collect();
    let phi_max = params.phi_max();
    let mut violations = Vec::new();
    for &i in &members {
        let phi = &images[i] - o;
        let r = phi.norm();
        let inside = phi.dot(v) >= params.b * r * (1.0 - 1e-12);
        if inside && !(us[i] < params.t) {
            violations.push(OmegaViolation { index: i, kind: ViolationKind::UBound, value: us[i], limit: params.t });
        }
        if r > phi_max * (1.0 + PHI_MAX_SLACK) {
            violations.push(OmegaViolation { index: i, kind: ViolationKind::Radius, value: r, limit: phi_max });
        }
    }
    Ok(OmegaRegion { x_o, u_xo, members, violations })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinaleReport {
    #[serde(rename = "min_Lu")]
    pub min_lu: f64,
    pub delta: f64,
    /// `min_Lu >= delta - 1e-9`.
    pub positive: bool,
    /// Samples where `T|τ| < (ξa²sqrt(b²-a²)/b)|dphi|²` fails. The floor is
    /// only implied when this list is empty.
    pub hypothesis_violations: Vec<usize>,
    pub sample_count: usize,
}

impl FinaleReport {
    pub fn hypothesis_violated(&self) -> bool {
        !self.hypothesis_violations.is_empty()
    }
}

/// `min Lu` over chart points (normally the members of `Ω_o`) against the
/// floor `delta`.
pub fn finale_check<M: ChartedMap + ?Sized>(
    map: &M,
    mode: &MetricMode,
    points: &[Vector],
    params: &AuxParams,
    o: &Vector,
    v: &Vector,
) -> Result<FinaleReport> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rows = crate::par::map_range(points.len(), |i| -> Result<(f64, bool)> {
        let x = &points[i];
        let point = evaluate_point(map, mode, x).map_err(|e| e.at_sample(i, x))?;
        let phi = offset(&point, o).map_err(|e| e.at_sample(i, x))?;
        let energy = point.tension.energy_density;
        let lu = delta_u(&point, &phi, params, v) / energy;
        let holds = params.t * point.tension.norm() < params.tension_factor() * energy;
        Ok((lu, holds))
    });
    let mut min_lu = f64::INFINITY;
    let mut hypothesis_violations = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        let (lu, holds) = row?;
        min_lu = min_lu.min(lu);
        if !holds {
            hypothesis_violations.push(i);
        }
    }
    let delta = params.delta();
    Ok(FinaleReport {
        min_lu,
        delta,
        positive: min_lu >= delta - FLOOR_SLACK,
        hypothesis_violations,
        sample_count: points.len(),
    })
}

/// Second derivative of `u` along the geodesic with initial velocity `w`
/// for the induced metric:
/// `<(S/|phi|)phi - v, II(W,W)> + S/|phi| - (S³/(a²|phi|³)) <dphi(W), phi>²`.
pub fn hess_u_direction<M: ChartedMap + ?Sized>(
    map: &M,
    x: &Vector,
    w: &Vector,
    params: &AuxParams,
    o: &Vector,
    v: &Vector,
) -> Result<f64> {
    let point = evaluate_point(map, &MetricMode::Induced, x)?;
    let len = point.metric.norm(w);
    if (len - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::DegeneratePlane(format!("|W|_g = {len:.3e}")));
    }
    let phi = offset(&point, o)?;
    let r = phi.norm();
    let s = params.s(r);
    let sff = SecondFundamentalForm::from_point(&point);
    let ii = sff.apply(w, w);
    let dw = point.jet.push_forward(w).dot(&phi);
    let a2 = params.a * params.a;
    Ok((phi * (s / r) - v).dot(&ii) + s / r - s.powi(3) / (a2 * r.powi(3)) * dw * dw)
}
