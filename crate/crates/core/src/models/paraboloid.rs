use serde::{Deserialize, Serialize};

use crate::cone::min_enclosing_cone;
use crate::geometry::{ChartedMap, DomainBox, Jet, JetKind};
use crate::sampling::SampleSpec;
use crate::{Error, Result, Vector};

/// Graph `x -> (x, |x|² + d)` over `R^m`, the sharpness family of the width bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParaboloidFamily {
    pub m: usize,
    pub d: f64,
    pub box_radius: f64,
}

impl ParaboloidFamily {
    pub fn new(m: usize, d: f64, box_radius: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParams(format!("paraboloid dimension {m} < 2")));
        }
        if !(d > 0.0) || !(box_radius > 0.0) {
            return Err(Error::InvalidParams("paraboloid needs d > 0 and box radius > 0".into()));
        }
        Ok(Self { m, d, box_radius })
    }

    /// Unit normal of the hyperplane the image approaches, `e_{m+1}`.
    pub fn axis(&self) -> Vector {
        let mut v = Vector::zeros(self.m + 1);
        v[self.m] = 1.0;
        v
    }
}

impl ChartedMap for ParaboloidFamily {
    fn dim_domain(&self) -> usize {
        self.m
    }
    fn dim_ambient(&self) -> usize {
        self.m + 1
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        let mut z = x.clone().insert_row(self.m, 0.0);
        z[self.m] = x.norm_squared() + self.d;
        z
    }
    fn domain_box(&self) -> DomainBox {
        DomainBox::cube(self.m, self.box_radius)
    }
    fn jet_kind(&self) -> JetKind {
        JetKind::Analytic
    }
    fn jet(&self, x: &Vector) -> Jet {
        let m = self.m;
        let first = (0..m)
            .map(|i| {
                let mut e = Vector::zeros(m + 1);
                e[i] = 1.0;
                e[m] = 2.0 * x[i];
                e
            })
            .collect();
        let mut second = vec![Vector::zeros(m + 1); m * m];
        for i in 0..m {
            second[i * m + i][m] = 2.0;
        }
        Jet { value: self.evaluate(x), first, second }
    }
}

/// Closed-form values for the paraboloid with its induced metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParaboloidTruth {
    /// `(2m + 8(m-1)|x|²) / (1 + 4|x|²)^{3/2}`.
    pub tau_norm: f64,
    /// `|dphi|² = m`.
    pub energy: f64,
    /// `cos²θ_d = 4d / (1 + 4d)` of the tangent cone from the origin.
    pub tangent_cone_cos2: f64,
}

pub fn paraboloid_truth(family: &ParaboloidFamily, x: &Vector) -> ParaboloidTruth {
    let m = family.m as f64;
    let s = x.norm_squared();
    ParaboloidTruth {
        tau_norm: (2.0 * m + 8.0 * (m - 1.0) * s) / (1.0 + 4.0 * s).powf(1.5),
        energy: m,
        tangent_cone_cos2: 4.0 * family.d / (1.0 + 4.0 * family.d),
    }
}

/// One point of the sharpness curve `d -> cos²θ_d / d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpnessPoint {
    pub d: f64,
    /// From the minimal cone fitted to sampled images, vertex at the origin.
    pub cos2_fitted: f64,
    pub cos2_closed: f64,
    /// `cos2_fitted / d`.
    pub ratio: f64,
}

/// Fits the minimal cone to `spec` samples of each `φ_d` and records
/// `cos²θ_d / d`.
pub fn sharpness_series(m: usize, ds: &[f64], box_radius: f64, spec: &SampleSpec) -> Result<Vec<SharpnessPoint>> {
    ds.iter()
        .map(|&d| {
            let fam = ParaboloidFamily::new(m, d, box_radius)?;
            let images: Vec<Vector> = spec.generate(&fam.domain_box()).iter().map(|x| fam.evaluate(x)).collect();
            let cone = min_enclosing_cone(&images, &Vector::zeros(m + 1))?;
            let cos2 = cone.cos_width().powi(2);
            Ok(SharpnessPoint { d, cos2_fitted: cos2, cos2_closed: 4.0 * d / (1.0 + 4.0 * d), ratio: cos2 / d })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pullback_metric, second_fundamental_form, tension_field, MetricMode};

    #[test]
    fn truth_at_origin() {
        let fam = ParaboloidFamily::new(2, 0.25, 10.0).unwrap();
        let t = paraboloid_truth(&fam, &Vector::zeros(2));
        assert_eq!(t.tau_norm, 4.0);
        assert_eq!(t.energy, 2.0);
        assert_eq!(t.tangent_cone_cos2, 0.5);
    }

    #[test]
    fn metric_at_origin_and_on_axis() {
        let fam = ParaboloidFamily::new(2, 0.7, 10.0).unwrap();
        let g0 = pullback_metric(&fam, &Vector::zeros(2)).unwrap();
        assert!((g0.g.clone() - crate::Matrix::identity(2, 2)).norm() < 1e-15);
        let g1 = pullback_metric(&fam, &Vector::from_vec(vec![1.0, 0.0])).unwrap();
        assert_eq!(g1.g, crate::Matrix::from_row_slice(2, 2, &[5.0, 0.0, 0.0, 1.0]));
    }

    #[test]
    fn sff_at_origin_is_twice_identity_along_normal() {
        let fam = ParaboloidFamily::new(2, 1.0, 10.0).unwrap();
        let sff = second_fundamental_form(&fam, &Vector::zeros(2)).unwrap();
        let nu = fam.axis();
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { &nu * 2.0 } else { Vector::zeros(3) };
                assert!((sff.get(i, j) - expected).norm() < 1e-14);
            }
        }
        let t = tension_field(&fam, &MetricMode::Induced, &Vector::zeros(2)).unwrap();
        assert!((t.norm() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn sharpness_tracks_closed_form() {
        let pts = sharpness_series(2, &[0.01, 0.05], 10.0, &SampleSpec::radial(4000, 3)).unwrap();
        for p in pts {
            assert!((p.cos2_fitted - p.cos2_closed).abs() < 1e-3, "{p:?}");
            assert!(p.ratio >= 3.0);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ParaboloidFamily::new(1, 0.1, 1.0).is_err());
        assert!(ParaboloidFamily::new(2, 0.0, 1.0).is_err());
        assert!(ParaboloidFamily::new(2, 0.1, -1.0).is_err());
    }
}
