//! Energy density and tension field.

use serde::{Deserialize, Serialize};

use super::map::{ChartedMap, Jet};
use super::metric::{metric_at, MetricMode, MetricSample};
use crate::{Result, Vector};

/// Tension vector together with `|dphi|^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensionVector {
    pub tau: Vec<f64>,
    pub energy_density: f64,
}

impl TensionVector {
    pub fn norm(&self) -> f64 {
        self.tau.iter().map(|t| t * t).sum::<f64>().sqrt()
    }

    /// `|tau| / |dphi|^2`.
    pub fn ratio(&self) -> f64 {
        self.norm() / self.energy_density
    }
}

/// `|dphi|^2 = g^{ij} <∂_i phi, ∂_j phi>`.
pub fn energy_density(jet: &Jet, metric: &MetricSample) -> f64 {
    let m = jet.dim_domain();
    let mut acc = 0.0;
    for i in 0..m {
        for j in 0..m {
            acc += metric.g_inv[(i, j)] * jet.first[i].dot(&jet.first[j]);
        }
    }
    acc
}

/// `∇dphi(∂_i, ∂_j) = ∂_i∂_j phi - Γ^k_{ij} ∂_k phi`.
pub fn covariant_hessian(jet: &Jet, metric: &MetricSample, i: usize, j: usize) -> Vector {
    let mut out = jet.second(i, j).clone();
    for (k, dk) in jet.first.iter().enumerate() {
        out -= dk * metric.christoffel.get(k, i, j);
    }
    out
}

/// `tau = g^{ij} ∇dphi(∂_i, ∂_j)`.
pub fn tension_from_jet(jet: &Jet, metric: &MetricSample) -> TensionVector {
    let m = jet.dim_domain();
    let mut tau = Vector::zeros(jet.dim_ambient());
    for i in 0..m {
        for j in 0..m {
            let w = metric.g_inv[(i, j)];
            if w != 0.0 {
                tau += covariant_hessian(jet, metric, i, j) * w;
            }
        }
    }
    TensionVector { tau: tau.iter().copied().collect(), energy_density: energy_density(jet, metric) }
}

/// Everything first- and second-order a sweep needs at one chart point.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    pub x: Vector,
    pub jet: Jet,
    pub metric: MetricSample,
    pub tension: TensionVector,
}

impl PointGeometry {
    pub fn image(&self) -> &Vector {
        &self.jet.value
    }

    pub fn tau(&self) -> Vector {
        Vector::from_vec(self.tension.tau.clone())
    }
}

pub fn evaluate_point<M: ChartedMap + ?Sized>(map: &M, mode: &MetricMode, x: &Vector) -> Result<PointGeometry> {
    let jet = map.jet(x);
    let metric = metric_at(map, mode, x, &jet)?;
    let tension = tension_from_jet(&jet, &metric);
    Ok(PointGeometry { x: x.clone(), jet, metric, tension })
}

pub fn tension_field<M: ChartedMap + ?Sized>(map: &M, mode: &MetricMode, x: &Vector) -> Result<TensionVector> {
    Ok(evaluate_point(map, mode, x)?.tension)
}
