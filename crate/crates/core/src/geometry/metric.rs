//! Metric tensors on chart domains: pullbacks, explicit fields, Christoffel symbols.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fd;
use super::map::{ChartedMap, Jet, JetKind};
use crate::{Error, Matrix, Result, Vector};

/// Relative singular-value threshold below which a differential or metric is singular.
pub const RANK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricSource {
    Induced,
    Explicit,
}

/// `Γ^k_{ij}` stored as `data[(k*m + i)*m + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    m: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn zeros(m: usize) -> Self {
        Self { m, data: vec![0.0; m * m * m] }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.data[(k * self.m + i) * self.m + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, value: f64) {
        self.data[(k * self.m + i) * self.m + j] = value;
    }

    /// `Γ^k_{ij} = ½ g^{kl} (∂_i g_{jl} + ∂_j g_{il} - ∂_l g_{ij})` from the
    /// coordinate derivatives `dg[l] = ∂_l g`.
    pub fn from_metric_derivatives(g_inv: &Matrix, dg: &[Matrix]) -> Self {
        let m = g_inv.nrows();
        let mut out = Self::zeros(m);
        for k in 0..m {
            for i in 0..m {
                for j in i..m {
                    let mut acc = 0.0;
                    for l in 0..m {
                        acc += g_inv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                    }
                    out.set(k, i, j, 0.5 * acc);
                    out.set(k, j, i, 0.5 * acc);
                }
            }
        }
        out
    }

    /// Largest `|Γ^k_{ij} - Γ^k_{ji}|`.
    pub fn asymmetry(&self) -> f64 {
        let m = self.m;
        let mut worst = 0.0_f64;
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    worst = worst.max((self.get(k, i, j) - self.get(k, j, i)).abs());
                }
            }
        }
        worst
    }
}

/// Metric, inverse and connection at one chart point.
#[derive(Debug, Clone)]
pub struct MetricSample {
    pub g: Matrix,
    pub g_inv: Matrix,
    pub christoffel: Christoffel,
    pub source: MetricSource,
}

impl MetricSample {
    pub fn dim(&self) -> usize {
        self.g.nrows()
    }

    /// `g(X, Y)` for chart components.
    pub fn inner(&self, x: &Vector, y: &Vector) -> f64 {
        x.dot(&(&self.g * y))
    }

    pub fn norm(&self, x: &Vector) -> f64 {
        self.inner(x, x).sqrt()
    }

    /// Lower-triangular `L` with `g = L Lᵀ`; the columns of `L^{-ᵀ}` form a
    /// g-orthonormal basis of chart vectors.
    pub fn cholesky_factor(&self) -> Matrix {
        nalgebra::Cholesky::new(self.g.clone())
            .expect("metric sample is positive definite by construction")
            .l()
    }

    /// Chart components of a g-orthonormal basis, as columns.
    pub fn orthonormal_basis(&self) -> Matrix {
        let l = self.cholesky_factor();
        l.transpose().try_inverse().expect("Cholesky factor is invertible")
    }
}

/// Checks symmetry and positive definiteness, then assembles a sample.
fn finish_sample(g: Matrix, christoffel: Christoffel, source: MetricSource) -> Result<MetricSample> {
    let g = (&g + g.transpose()) * 0.5;
    let eig = g.clone().symmetric_eigen();
    let max = eig.eigenvalues.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > RANK_TOLERANCE * max) || !min.is_finite() {
        return Err(Error::SingularMetric { sigma_min: min, sigma_max: max });
    }
    let g_inv = nalgebra::Cholesky::new(g.clone())
        .ok_or(Error::SingularMetric { sigma_min: min, sigma_max: max })?
        .inverse();
    Ok(MetricSample { g, g_inv, christoffel, source })
}

/// A metric tensor field on a chart domain.
pub trait MetricField: Send + Sync {
    fn dim(&self) -> usize;
    fn metric(&self, x: &Vector) -> Matrix;

    /// Closed-form connection, when known.
    fn christoffel_analytic(&self, _x: &Vector) -> Option<Christoffel> {
        None
    }

    fn sample(&self, x: &Vector) -> Result<MetricSample> {
        let g = self.metric(x);
        let christoffel = match self.christoffel_analytic(x) {
            Some(c) => c,
            None => christoffel(self, x)?,
        };
        finish_sample(g, christoffel, MetricSource::Explicit)
    }
}

/// Christoffel symbols of `field` at `x` from central differences of `g`.
pub fn christoffel<F: MetricField + ?Sized>(field: &F, x: &Vector) -> Result<Christoffel> {
    christoffel_with_step(field, x, fd::first_step(x))
}

fn christoffel_with_step<F: MetricField + ?Sized>(field: &F, x: &Vector, h: f64) -> Result<Christoffel> {
    let g = field.metric(x);
    let sample = finish_sample(g, Christoffel::zeros(x.len()), MetricSource::Explicit)?;
    let dg: Vec<Matrix> = (0..x.len())
        .map(|l| {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[l] += h;
            xm[l] -= h;
            (field.metric(&xp) - field.metric(&xm)) / (2.0 * h)
        })
        .collect();
    Ok(Christoffel::from_metric_derivatives(&sample.g_inv, &dg))
}

/// The flat metric `δ_ij`.
#[derive(Debug, Clone, Copy)]
pub struct EuclideanMetric {
    pub m: usize,
}

impl MetricField for EuclideanMetric {
    fn dim(&self) -> usize {
        self.m
    }
    fn metric(&self, _x: &Vector) -> Matrix {
        Matrix::identity(self.m, self.m)
    }
    fn christoffel_analytic(&self, _x: &Vector) -> Option<Christoffel> {
        Some(Christoffel::zeros(self.m))
    }
}

type MetricFn = dyn Fn(&Vector) -> Matrix + Send + Sync;

/// Metric given by a closure; connection from finite differences.
#[derive(Clone)]
pub struct FnMetric {
    m: usize,
    f: Arc<MetricFn>,
}

impl FnMetric {
    pub fn new<F>(m: usize, f: F) -> Self
    where
        F: Fn(&Vector) -> Matrix + Send + Sync + 'static,
    {
        Self { m, f: Arc::new(f) }
    }
}

impl fmt::Debug for FnMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnMetric").field("m", &self.m).finish()
    }
}

impl MetricField for FnMetric {
    fn dim(&self) -> usize {
        self.m
    }
    fn metric(&self, x: &Vector) -> Matrix {
        (self.f)(x)
    }
}

/// Pullback metric of a map, viewed as a metric field (first partials only).
struct InducedField<'a, M: ?Sized>(&'a M);

impl<M: ChartedMap + ?Sized> MetricField for InducedField<'_, M> {
    fn dim(&self) -> usize {
        self.0.dim_domain()
    }
    fn metric(&self, x: &Vector) -> Matrix {
        let d = self.0.jet(x).differential();
        d.transpose() * d
    }
}

/// Which metric the chart domain carries.
#[derive(Clone)]
pub enum MetricMode {
    /// Pullback of the ambient Euclidean metric (isometric immersion).
    Induced,
    Explicit(Arc<dyn MetricField>),
}

impl MetricMode {
    pub fn euclidean(m: usize) -> Self {
        MetricMode::Explicit(Arc::new(EuclideanMetric { m }))
    }

    pub fn is_induced(&self) -> bool {
        matches!(self, MetricMode::Induced)
    }
}

impl fmt::Debug for MetricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricMode::Induced => f.write_str("Induced"),
            MetricMode::Explicit(field) => write!(f, "Explicit(dim = {})", field.dim()),
        }
    }
}

fn check_rank(jet: &Jet) -> Result<()> {
    let sv = jet.differential().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min >= RANK_TOLERANCE * max) || max == 0.0 {
        return Err(Error::SingularMetric { sigma_min: min, sigma_max: max });
    }
    Ok(())
}

/// Induced metric from an already computed jet.
///
/// Analytic jets give the connection exactly through
/// `Γ^k_{ij} = g^{kl} <∂_i∂_j phi, ∂_l phi>`; finite-difference jets
/// differentiate `g` numerically instead.
pub fn induced_from_jet<M: ChartedMap + ?Sized>(map: &M, x: &Vector, jet: &Jet) -> Result<MetricSample> {
    check_rank(jet)?;
    let d = jet.differential();
    let g = d.transpose() * &d;
    let m = jet.dim_domain();
    let christoffel = match map.jet_kind() {
        JetKind::Analytic => {
            let g_inv = finish_sample(g.clone(), Christoffel::zeros(m), MetricSource::Induced)?.g_inv;
            let mut c = Christoffel::zeros(m);
            for i in 0..m {
                for j in i..m {
                    let proj: Vec<f64> = (0..m).map(|l| jet.second(i, j).dot(&jet.first[l])).collect();
                    for k in 0..m {
                        let v: f64 = (0..m).map(|l| g_inv[(k, l)] * proj[l]).sum();
                        c.set(k, i, j, v);
                        c.set(k, j, i, v);
                    }
                }
            }
            c
        }
        // Differentiating a finite-difference metric compounds rounding; the
        // second-order step keeps the nested error near sqrt(eps).
        JetKind::FiniteDifference => christoffel_with_step(&InducedField(map), x, fd::second_step(x))?,
    };
    finish_sample(g, christoffel, MetricSource::Induced)
}

/// Pullback of the Euclidean metric by `map` at `x`.
pub fn pullback_metric<M: ChartedMap + ?Sized>(map: &M, x: &Vector) -> Result<MetricSample> {
    induced_from_jet(map, x, &map.jet(x))
}

/// Metric sample at `x` for the chosen mode.
pub fn metric_at<M: ChartedMap + ?Sized>(map: &M, mode: &MetricMode, x: &Vector, jet: &Jet) -> Result<MetricSample> {
    match mode {
        MetricMode::Induced => induced_from_jet(map, x, jet),
        MetricMode::Explicit(field) => {
            if field.dim() != map.dim_domain() {
                return Err(Error::DimensionMismatch { expected: map.dim_domain(), got: field.dim() });
            }
            field.sample(x)
        }
    }
}
