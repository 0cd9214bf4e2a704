use serde::{Deserialize, Serialize};

use crate::geometry::{ChartedMap, DomainBox, Jet, JetKind};
use crate::{Error, Result, Vector};

/// Polar-angle margin keeping the chart away from its coordinate singularities.
const POLE_MARGIN: f64 = 0.15;

/// Round sphere of radius `R` centered at `(0, 0, h)` in spherical coordinates
/// `(s, t)`: polar angle and azimuth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereFamily {
    pub radius: f64,
    pub center_height: f64,
}

impl SphereFamily {
    pub fn new(radius: f64, center_height: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidParams(format!("sphere radius {radius} must be positive")));
        }
        Ok(Self { radius, center_height })
    }

    pub fn center(&self) -> Vector {
        Vector::from_vec(vec![0.0, 0.0, self.center_height])
    }
}

impl ChartedMap for SphereFamily {
    fn dim_domain(&self) -> usize {
        2
    }
    fn dim_ambient(&self) -> usize {
        3
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        let (s, t) = (x[0], x[1]);
        Vector::from_vec(vec![
            self.radius * s.sin() * t.cos(),
            self.radius * s.sin() * t.sin(),
            self.center_height + self.radius * s.cos(),
        ])
    }
    fn domain_box(&self) -> DomainBox {
        use std::f64::consts::PI;
        DomainBox::new(vec![POLE_MARGIN, 0.0], vec![PI - POLE_MARGIN, 2.0 * PI])
    }
    fn jet_kind(&self) -> JetKind {
        JetKind::Analytic
    }
    fn jet(&self, x: &Vector) -> Jet {
        let r = self.radius;
        let (ss, cs) = x[0].sin_cos();
        let (st, ct) = x[1].sin_cos();
        let v = |a: f64, b: f64, c: f64| Vector::from_vec(vec![r * a, r * b, r * c]);
        let first = vec![v(cs * ct, cs * st, -ss), v(-ss * st, ss * ct, 0.0)];
        let dst = v(-cs * st, cs * ct, 0.0);
        let second = vec![v(-ss * ct, -ss * st, -cs), dst.clone(), dst, v(-ss * ct, -ss * st, 0.0)];
        Jet { value: self.evaluate(x), first, second }
    }
}
