use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::quadrature::simpson;
use crate::{Error, Result};

const QUAD_TOL: f64 = 1e-8;

/// `ω_{m-1} = 2π^{m/2} / Γ(m/2)`, the area of the unit sphere in `R^m`.
pub fn unit_sphere_area(m: usize) -> f64 {
    let half = m as f64 / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma(half)
}

/// Warping functions `σ` of a model `dr² + σ(r)² dθ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Warping {
    /// `σ(r) = r`.
    Euclidean,
    /// `σ(r) = sinh r`.
    Hyperbolic,
    /// `σ(r) = exp(r³)` for `r ≥ 1`, spliced on `[0, 1]` to a cubic with
    /// `σ(0) = 0`, `σ'(0) = 1` matching value and slope at `r = 1`.
    SuperExponential,
}

/// Cubic `r + c₂r² + c₃r³` meeting `e^{r³}` in value and slope at `r = 1`.
const SPLICE_C3: f64 = 3.0 * std::f64::consts::E - 2.0 * (std::f64::consts::E - 1.0) - 1.0;
const SPLICE_C2: f64 = std::f64::consts::E - 1.0 - SPLICE_C3;

impl Warping {
    pub fn from_preset(name: &str) -> Option<Self> {
        match name {
            "euclidean" => Some(Self::Euclidean),
            "hyperbolic" => Some(Self::Hyperbolic),
            "superexp" | "super-exponential" => Some(Self::SuperExponential),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Hyperbolic => "hyperbolic",
            Self::SuperExponential => "superexp",
        }
    }

    pub fn sigma(&self, r: f64) -> f64 {
        match self {
            Self::Euclidean => r,
            Self::Hyperbolic => r.sinh(),
            Self::SuperExponential if r < 1.0 => r + SPLICE_C2 * r * r + SPLICE_C3 * r * r * r,
            Self::SuperExponential => (r * r * r).exp(),
        }
    }

    pub fn ln_sigma(&self, r: f64) -> f64 {
        match self {
            Self::Hyperbolic if r > 20.0 => r - std::f64::consts::LN_2 + (-(-2.0 * r).exp()).ln_1p(),
            Self::SuperExponential if r >= 1.0 => r * r * r,
            _ => self.sigma(r).ln(),
        }
    }

    /// `(ln σ)'(r)`.
    pub fn d_ln_sigma(&self, r: f64) -> f64 {
        match self {
            Self::Euclidean => 1.0 / r,
            Self::Hyperbolic => 1.0 / r.tanh(),
            Self::SuperExponential if r < 1.0 => {
                (1.0 + 2.0 * SPLICE_C2 * r + 3.0 * SPLICE_C3 * r * r) / self.sigma(r)
            }
            Self::SuperExponential => 3.0 * r * r,
        }
    }

    /// `ln σ(r - w) - ln σ(r)` for `0 ≤ w ≤ r`, without cancellation at large `r`.
    pub fn ln_ratio(&self, r: f64, w: f64) -> f64 {
        let s = r - w;
        match self {
            Self::Euclidean => (-w / r).ln_1p(),
            Self::Hyperbolic if s > 1.0 => {
                // sinh(s)/sinh(r) = e^{-w} (1 - e^{-2s}) / (1 - e^{-2r})
                -w + (-(-2.0 * s).exp()).ln_1p() - (-(-2.0 * r).exp()).ln_1p()
            }
            Self::SuperExponential if s >= 1.0 => -w * (3.0 * r * r - 3.0 * r * w + w * w),
            _ => self.ln_sigma(s) - self.ln_sigma(r),
        }
    }
}

/// Greene-Wu model of dimension `m` with warping `σ`; `beta` is the exponent
/// used by the energy-decay condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationalModel {
    pub m: usize,
    pub sigma: Warping,
    pub beta: Option<f64>,
}

impl RotationalModel {
    pub fn new(m: usize, sigma: Warping) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("model dimension {m} < 2")));
        }
        Ok(Self { m, sigma, beta: None })
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    fn exponent(&self) -> f64 {
        (self.m - 1) as f64
    }

    /// `Vol(∂B_r) = ω_{m-1} σ(r)^{m-1}`.
    pub fn boundary_volume(&self, r: f64) -> f64 {
        unit_sphere_area(self.m) * self.sigma.sigma(r).powf(self.exponent())
    }

    /// `Vol(B_r) / Vol(∂B_r) = ∫_0^r (σ(s)/σ(r))^{m-1} ds`, integrated backwards
    /// from `r` over panels of doubling width so the computation never forms
    /// `σ(r)` itself.
    pub fn volume_ratio(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Ok(0.0);
        }
        let k = self.exponent();
        let rate = k * self.sigma.d_ln_sigma(r);
        let mut width = if rate > 0.0 { (1.0 / rate).min(r) } else { r };
        let integrand = |w: f64| (k * self.sigma.ln_ratio(r, w)).exp();
        let mut lo = 0.0;
        let mut total = 0.0;
        loop {
            let hi = (lo + width).min(r);
            let piece = simpson(integrand, lo, hi, QUAD_TOL)?;
            total += piece;
            if hi >= r || piece <= 1e-17 * total {
                break;
            }
            lo = hi;
            width *= 2.0;
        }
        Ok(total)
    }

    /// `ln Vol(B_r)`, finite even when `Vol(B_r)` overflows.
    pub fn ln_ball_volume(&self, r: f64) -> Result<f64> {
        Ok(unit_sphere_area(self.m).ln() + self.exponent() * self.sigma.ln_sigma(r) + self.volume_ratio(r)?.ln())
    }

    /// Integrand of the model criterion: `Vol(B_r)/Vol(∂B_r)`.
    pub fn model_integrand(&self, r: f64) -> f64 {
        self.volume_ratio(r).unwrap_or(f64::NAN)
    }

    /// Integrand of the volume-growth condition paired with the energy decay
    /// exponent `β`: `r^{1-β} / ln Vol(B_r)`, or `ln r / (r ln Vol(B_r))` when `β = 2`.
    pub fn volume_growth_integrand(&self, r: f64, beta: f64) -> f64 {
        let lv = self.ln_ball_volume(r).unwrap_or(f64::NAN);
        if !(lv > 0.0) {
            return f64::NAN;
        }
        if beta == 2.0 {
            r.ln() / (r * lv)
        } else {
            r.powf(1.0 - beta) / lv
        }
    }
}

/// Tabulated `Vol(∂B_r)` and `Vol(B_r)` at `r = step, 2 step, …, r_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumeTable {
    pub radii: Vec<f64>,
    pub boundary: Vec<f64>,
    pub ball: Vec<f64>,
}

pub fn volume_functions(model: &RotationalModel, r_max: f64, step: f64) -> Result<VolumeTable> {
    if !(step > 0.0) || !(r_max > 0.0) {
        return Err(Error::InvalidParams("volume tabulation needs step > 0 and r_max > 0".into()));
    }
    let count = (r_max / step + 1e-9).floor() as usize;
    let mut table = VolumeTable { radii: Vec::with_capacity(count), boundary: Vec::new(), ball: Vec::new() };
    let mut prev = 0.0;
    let mut acc = 0.0;
    for k in 1..=count {
        let r = k as f64 * step;
        acc += simpson(|s| model.boundary_volume(s), prev, r, QUAD_TOL * 1e-2)?;
        table.radii.push(r);
        table.boundary.push(model.boundary_volume(r));
        table.ball.push(acc);
        prev = r;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area(2) - 2.0 * PI).abs() < 1e-13);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-13);
        assert!((unit_sphere_area(4) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn euclidean_plane_volumes() {
        let model = RotationalModel::new(2, Warping::Euclidean).unwrap();
        let t = volume_functions(&model, 3.0, 0.5).unwrap();
        assert_eq!(t.radii.len(), 6);
        for (r, v) in t.radii.iter().zip(&t.ball) {
            assert!((v - PI * r * r).abs() <= 1e-8 * v);
        }
        let space = RotationalModel::new(3, Warping::Euclidean).unwrap();
        assert!((space.boundary_volume(2.0) - 16.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_plane_volumes() {
        let model = RotationalModel::new(2, Warping::Hyperbolic).unwrap();
        let t = volume_functions(&model, 4.0, 0.25).unwrap();
        for (r, v) in t.radii.iter().zip(&t.ball) {
            let exact = 2.0 * PI * (r.cosh() - 1.0);
            assert!((v - exact).abs() <= 1e-6 * exact);
        }
    }

    #[test]
    fn splice_is_c1_and_positive() {
        let w = Warping::SuperExponential;
        assert!((w.sigma(1.0 - 1e-12) - w.sigma(1.0)).abs() < 1e-9);
        assert!((w.d_ln_sigma(1.0 - 1e-12) - w.d_ln_sigma(1.0)).abs() < 1e-9);
        assert_eq!(w.sigma(0.0), 0.0);
        assert!((1..1000).all(|k| w.sigma(k as f64 * 1e-3) > 0.0));
    }

    #[test]
    fn ratio_matches_closed_forms() {
        let e = RotationalModel::new(3, Warping::Euclidean).unwrap();
        for r in [0.5, 10.0, 1e5] {
            assert!((e.volume_ratio(r).unwrap() - r / 3.0).abs() < 1e-8 * r);
        }
        let h = RotationalModel::new(2, Warping::Hyperbolic).unwrap();
        for r in [0.5_f64, 3.0, 50.0, 1e5] {
            let exact = if r < 30.0 { (r.cosh() - 1.0) / r.sinh() } else { 1.0 };
            assert!((h.volume_ratio(r).unwrap() - exact).abs() < 1e-7, "r = {r}");
        }
        let s = RotationalModel::new(2, Warping::SuperExponential).unwrap();
        for r in [10.0, 1e3, 1e6] {
            let asym = 1.0 / (3.0 * r * r);
            assert!((s.volume_ratio(r).unwrap() / asym - 1.0).abs() < 1e-2, "r = {r}");
        }
    }

    #[test]
    fn ln_volume_is_finite_where_volume_overflows() {
        let s = RotationalModel::new(2, Warping::SuperExponential).unwrap();
        let lv = s.ln_ball_volume(100.0).unwrap();
        assert!(lv.is_finite() && lv > 1e5);
    }
}
