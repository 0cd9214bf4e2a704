//! Heuristic classification of `∫^∞ f(r) dr` from partial integrals at doubling radii.
//!
//! Verdicts are evidence about one-dimensional integrals on model manifolds
//! only; integrability at infinity cannot be decided from finitely many
//! samples, hence the explicit `Inconclusive` outcome.

use serde::{Deserialize, Serialize};

use super::quadrature::simpson;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Divergent,
    Integrable,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrabilityOptions {
    pub r_max: f64,
    /// Number of trailing doublings inspected.
    pub window: usize,
    /// Divergent if each trailing increment is at least this fraction of the median.
    pub divergence_fraction: f64,
    /// Integrable if each trailing ratio of successive increments is at most this.
    pub decay_ratio: f64,
}

impl Default for IntegrabilityOptions {
    fn default() -> Self {
        Self { r_max: 1e6, window: 5, divergence_fraction: 0.5, decay_ratio: 0.7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrabilityVerdict {
    pub classification: Classification,
    /// `R_k = r_start 2^k`.
    pub radii: Vec<f64>,
    /// `I(R_{k+1}) - I(R_k)`.
    pub increments: Vec<f64>,
    /// `I(R_k) = ∫_{r_start}^{R_k} f`.
    pub partial_integrals: Vec<f64>,
    pub scope: String,
}

fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn integrability_test<F>(integrand: F, r_start: f64, options: IntegrabilityOptions) -> Result<IntegrabilityVerdict>
where
    F: Fn(f64) -> f64,
{
    if !(r_start > 0.0) || !(options.r_max > 2.0 * r_start) {
        return Err(Error::InvalidParams("integrability test needs 0 < 2 r_start < r_max".into()));
    }
    let checked = |r: f64| {
        let y = integrand(r);
        if y.is_finite() && y >= 0.0 {
            y
        } else {
            f64::NAN
        }
    };
    let mut radii = vec![r_start];
    let mut increments = Vec::new();
    let mut partial = vec![0.0];
    let mut r = r_start;
    while 2.0 * r <= options.r_max * (1.0 + 1e-12) {
        let inc = simpson(checked, r, 2.0 * r, 1e-9)?;
        increments.push(inc);
        partial.push(partial.last().copied().unwrap_or(0.0) + inc);
        r *= 2.0;
        radii.push(r);
    }

    let w = options.window;
    let classification = if increments.len() < w + 1 {
        Classification::Inconclusive
    } else {
        let tail = &increments[increments.len() - w..];
        let med = median(&increments);
        let decays = increments[increments.len() - w - 1..]
            .windows(2)
            .all(|p| p[0] > 0.0 && p[1] / p[0] <= options.decay_ratio);
        if med > 0.0 && tail.iter().all(|&x| x >= options.divergence_fraction * med) {
            Classification::Divergent
        } else if decays {
            Classification::Integrable
        } else {
            Classification::Inconclusive
        }
    };

    Ok(IntegrabilityVerdict {
        classification,
        radii,
        increments,
        partial_integrals: partial,
        scope: "model-only sufficient evidence".to_string(),
    })
}
