use serde::{Deserialize, Serialize};

use crate::geometry::{evaluate_point, ChartedMap, MetricMode};
use crate::{par, Result, Vector};

/// Rounding allowance on the pointwise margin.
pub const MARGIN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasoBResult {
    pub holds: bool,
    /// Sample with the smallest `|dphi|² - C/(1+r)^β`.
    pub worst_index: usize,
    pub worst_margin: f64,
    pub note: Option<String>,
}

/// Checks `|dphi(x)|² ≥ C / (1 + r(x))^β` on every sample, with `r` a radius
/// function on the chart (for model families, the chart distance to the pole).
pub fn caso_b_check<M, R>(
    map: &M,
    mode: &MetricMode,
    c: f64,
    beta: f64,
    samples: &[Vector],
    radius: R,
) -> Result<CasoBResult>
where
    M: ChartedMap + ?Sized,
    R: Fn(&Vector) -> f64 + Sync + Send,
{
    let margins = par::try_map(samples, |x| {
        let p = evaluate_point(map, mode, x)?;
        Ok(p.tension.energy_density - c / (1.0 + radius(x)).powf(beta))
    })?;
    let (worst_index, worst_margin) = margins
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let note = (beta == 2.0).then(|| {
        "beta = 2: the volume condition takes its logarithmic form ln r / (r ln Vol(B_r))".to_string()
    });
    Ok(CasoBResult { holds: worst_margin >= -MARGIN_SLACK, worst_index, worst_margin, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{DomainBox, FnMap, FnMetric};
    use crate::models::ParaboloidFamily;
    use crate::sampling::SampleSpec;
    use crate::Matrix;
    use std::sync::Arc;

    #[test]
    fn isometric_immersion_with_constant_bound() {
        let fam = ParaboloidFamily::new(3, 0.2, 4.0).unwrap();
        let xs = SampleSpec::uniform(200, 1).generate(&fam.domain_box());
        let r = caso_b_check(&fam, &MetricMode::Induced, 3.0, 0.0, &xs, |x| x.norm()).unwrap();
        assert!(r.holds);
        assert!(r.worst_margin.abs() < 1e-12);
    }

    #[test]
    fn decaying_energy_needs_positive_beta() {
        // identity map under g = 2(1+|x|) δ has |dphi|² = 1/(1+|x|)
        let id = FnMap::new(2, 2, DomainBox::cube(2, 5.0), |x: &Vector| x.clone());
        let metric = FnMetric::new(2, |x: &Vector| Matrix::identity(2, 2) * (2.0 * (1.0 + x.norm())));
        let mode = MetricMode::Explicit(Arc::new(metric));
        let xs = SampleSpec::uniform(100, 3).generate(&id.domain_box());
        let ok = caso_b_check(&id, &mode, 1.0, 1.0, &xs, |x| x.norm()).unwrap();
        assert!(ok.holds, "margin {}", ok.worst_margin);
        let bad = caso_b_check(&id, &mode, 1.0, 0.0, &xs, |x| x.norm()).unwrap();
        assert!(!bad.holds);
        let edge = caso_b_check(&id, &mode, 1e-3, 2.0, &xs, |x| x.norm()).unwrap();
        assert!(edge.note.is_some());
    }
}
