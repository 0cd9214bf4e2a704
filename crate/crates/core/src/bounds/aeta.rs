use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::par;

/// `sup_α α²√(1-α²) = 2/(3√3)`, the limit of `A_η` as `η → ∞`.
pub const A_ETA_CEILING: f64 = 0.384_900_179_459_750_5;

/// Distance kept from the boundary of the open parameter set.
const SHRINK: f64 = 1e-9;
const COARSE: usize = 200;
const REFINE_POINTS: usize = 21;
const REFINE_PASSES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AetaResult {
    pub eta: f64,
    pub value: f64,
    /// `(ξ, α)` at which `value` is attained.
    pub argmax: (f64, f64),
    /// Grid spacing of the last pass, in the normalized coordinates.
    pub resolution: f64,
}


fn objective(xi: f64, alpha: f64) -> f64 {
    xi * alpha * alpha * (1.0 - alpha * alpha).sqrt()
}

/// The feasible set is `{α ∈ (0,1), ξ ∈ (0, 1 - α²/η²)}`; the search runs
/// over `(α, ζ) ∈ [ε, 1-ε]²` with `ξ = ζ (1 - α²/η²)`. In these coordinates
/// the objective is smooth in `α` and increasing in `ζ`.
fn xi_of(eta: f64, alpha: f64, zeta: f64) -> f64 {
    zeta * (1.0 - (alpha / eta).powi(2))
}

fn value_at(eta: f64, alpha: f64, zeta: f64) -> f64 {
    objective(xi_of(eta, alpha, zeta), alpha)
}

fn grid(center: f64, half: f64, count: usize, offset: f64) -> Vec<f64> {
    let (lo, hi) = (SHRINK, 1.0 - SHRINK);
    let a = (center - half).max(lo);
    let b = (center + half).min(hi);
    let step = (b - a) / (count - 1) as f64;
    (0..count).map(|i| (a + (i as f64 + offset) * step).min(hi)).collect()
}

/// Best grid point; ties keep the first in row-major order.
fn best_on_grid(eta: f64, alphas: &[f64], zetas: &[f64]) -> (f64, f64, f64) {
    let rows = par::map(alphas, |&alpha| {
        zetas.iter().fold((f64::NEG_INFINITY, alpha, 0.0), |best, &zeta| {
            let v = value_at(eta, alpha, zeta);
            if v > best.0 {
                (v, alpha, zeta)
            } else {
                best
            }
        })
    });
    rows.into_iter().fold((f64::NEG_INFINITY, 0.0, 0.0), |best, r| if r.0 > best.0 { r } else { best })
}

/// `A_η = sup { ξ α² √(1-α²) : ξ ∈ (0,1), α ∈ (0, min(1, η√(1-ξ))) }`.
pub fn compute_a(eta: f64) -> AetaResult {
    compute_a_seeded(eta, 0)
}

/// Same search with the coarse grid shifted by a seed-dependent fraction of a cell.
pub fn compute_a_seeded(eta: f64, seed: u64) -> AetaResult {
    assert!(eta > 0.0 && eta.is_finite(), "eta must be positive and finite");
    let (alpha_off, zeta_off) = if seed == 0 {
        (0.0, 0.0)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (rng.gen::<f64>(), rng.gen::<f64>())
    };
    let mut cell = (1.0 - 2.0 * SHRINK) / (COARSE - 1) as f64;
    let (mut value, mut alpha, mut zeta) =
        best_on_grid(eta, &grid(0.5, 0.5, COARSE, alpha_off), &grid(0.5, 0.5, COARSE, zeta_off));
    for _ in 0..REFINE_PASSES {
        let next = cell / ((REFINE_POINTS - 1) / 2) as f64;
        let (v, a, z) =
            best_on_grid(eta, &grid(alpha, cell, REFINE_POINTS, 0.0), &grid(zeta, cell, REFINE_POINTS, 0.0));
        if v >= value {
            value = v;
            alpha = a;
            zeta = z;
        }
        cell = next;
    }
    AetaResult { eta, value, argmax: (xi_of(eta, alpha, zeta), alpha), resolution: cell }
}
