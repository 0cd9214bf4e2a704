use serde::{Deserialize, Serialize};

use crate::{par, Error, Result, Vector};

/// Relative distance to the vertex below which a sample is an apex sample.
pub const APEX_TOLERANCE: f64 = 1e-14;
/// Slack on `cos θ` in the closed membership test.
pub const CONTAINMENT_SLACK: f64 = 1e-12;

/// `{ z != o : <(z - o)/|z - o|, v> >= cos θ }` with `0 < θ < π/2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub vertex: Vec<f64>,
    pub axis: Vec<f64>,
    pub width: f64,
}

impl Cone {
    /// Normalizes `axis`; rejects zero axes and widths outside `(0, π/2)`.
    pub fn new(vertex: Vector, axis: Vector, width: f64) -> Result<Self> {
        if vertex.len() != axis.len() {
            return Err(Error::DimensionMismatch { expected: vertex.len(), got: axis.len() });
        }
        let norm = axis.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParams("cone axis must be a non-zero finite vector".into()));
        }
        if !(width > 0.0 && width < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidParams(format!("cone width {width} outside (0, pi/2)")));
        }
        Ok(Self { vertex: vertex.iter().copied().collect(), axis: (axis / norm).iter().copied().collect(), width })
    }

    pub fn dim(&self) -> usize {
        self.vertex.len()
    }

    pub fn vertex(&self) -> Vector {
        Vector::from_column_slice(&self.vertex)
    }

    pub fn axis(&self) -> Vector {
        Vector::from_column_slice(&self.axis)
    }

    /// `cos θ`, the `b` of the width bounds.
    pub fn cos_width(&self) -> f64 {
        self.width.cos()
    }
}

fn apex_distance_check(z: &Vector, o: &Vector) -> Result<Vector> {
    let diff = z - o;
    let dist = diff.norm();
    if dist < APEX_TOLERANCE * (1.0 + o.norm()) {
        return Err(Error::ApexSample { distance: dist });
    }
    Ok(diff / dist)
}

/// Closed membership test.
pub fn cone_contains(cone: &Cone, z: &Vector) -> Result<bool> {
    if z.len() != cone.dim() {
        return Err(Error::DimensionMismatch { expected: cone.dim(), got: z.len() });
    }
    let dir = apex_distance_check(z, &cone.vertex())?;
    Ok(dir.dot(&cone.axis()) >= cone.cos_width() - CONTAINMENT_SLACK)
}

/// Angle between unit vectors, accurate for nearly parallel inputs.
pub fn angle_between(a: &Vector, b: &Vector) -> f64 {
    let chord = (a - b).norm();
    2.0 * (0.5 * chord).min(1.0).asin()
}

/// Unit directions `(z - o)/|z - o|` of a point set seen from `o`.
#[derive(Debug, Clone)]
pub struct DirectionSet {
    pub directions: Vec<Vector>,
    pub source_count: usize,
}

impl DirectionSet {
    pub fn from_points(points: &[Vector], o: &Vector) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != o.len()) {
            return Err(Error::DimensionMismatch { expected: o.len(), got: p.len() });
        }
        let directions = par::try_map(points, |z| apex_distance_check(z, o))?;
        Ok(Self { source_count: points.len(), directions })
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// Largest angle between any direction and `axis` (unit).
    pub fn max_angle_to(&self, axis: &Vector) -> f64 {
        par::map(&self.directions, |d| angle_between(d, axis)).into_iter().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn axis_point_and_boundary_are_inside() {
        let cone = Cone::new(v(&[1.0, 0.0, 0.0]), v(&[0.0, 0.0, 2.0]), FRAC_PI_4).unwrap();
        assert!(cone_contains(&cone, &v(&[1.0, 0.0, 1.0])).unwrap());
        // exactly at angle π/4
        assert!(cone_contains(&cone, &v(&[2.0, 0.0, 1.0])).unwrap());
        assert!(!cone_contains(&cone, &v(&[2.01, 0.0, 1.0])).unwrap());
    }

    #[test]
    fn vertex_is_an_apex_sample() {
        let cone = Cone::new(v(&[1.0, 2.0]), v(&[0.0, 1.0]), 0.5).unwrap();
        assert!(matches!(cone_contains(&cone, &v(&[1.0, 2.0])), Err(Error::ApexSample { .. })));
    }

    #[test]
    fn width_must_be_non_degenerate() {
        assert!(Cone::new(v(&[0.0, 0.0]), v(&[0.0, 1.0]), std::f64::consts::FRAC_PI_2).is_err());
        assert!(Cone::new(v(&[0.0, 0.0]), v(&[0.0, 1.0]), 0.0).is_err());
        assert!(Cone::new(v(&[0.0, 0.0]), v(&[0.0, 0.0]), 0.3).is_err());
        let c = Cone::new(v(&[0.0, 0.0]), v(&[3.0, 4.0]), 0.3).unwrap();
        assert!((c.axis().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_angles_are_accurate() {
        let a = v(&[1.0, 0.0]);
        let t: f64 = 1e-9;
        let b = v(&[t.cos(), t.sin()]);
        assert!((angle_between(&a, &b) - t).abs() < 1e-20);
    }
}
