use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::miniball::smallest_enclosing_ball;
use super::shape::{Cone, DirectionSet, APEX_TOLERANCE};
use crate::{Error, Result, Vector};

/// Widths at or above `π/2 - DEGENERACY_MARGIN` count as half-spaces.
pub const DEGENERACY_MARGIN: f64 = 1e-9;
/// Width reported for single-direction inputs.
pub const THETA_MIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub seed: u64,
    pub theta_min: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { seed: 0, theta_min: THETA_MIN }
    }
}

fn finish(o: &Vector, axis: Vector, width: f64, theta_min: f64) -> Result<Cone> {
    if !(width < FRAC_PI_2 - DEGENERACY_MARGIN) {
        return Err(Error::DegenerateCone { angle: width });
    }
    Cone::new(o.clone(), axis, width.max(theta_min))
}

/// Smallest cone with vertex `o` containing every point.
///
/// The axis is the normalized center of the smallest ball enclosing the unit
/// directions; the width is the largest angle from that axis.
pub fn min_enclosing_cone(points: &[Vector], o: &Vector) -> Result<Cone> {
    min_enclosing_cone_with(points, o, FitOptions::default())
}

pub fn min_enclosing_cone_with(points: &[Vector], o: &Vector, options: FitOptions) -> Result<Cone> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dirs = DirectionSet::from_points(points, o)?;
    let ball = smallest_enclosing_ball(&dirs.directions, options.seed);
    let norm = ball.center.norm();
    if norm < 1e-12 {
        return Err(Error::DegenerateCone { angle: FRAC_PI_2 });
    }
    let axis = ball.center / norm;
    let width = dirs.max_angle_to(&axis);
    finish(o, axis, width, options.theta_min)
}

/// Narrowest cone with vertex `o` and the prescribed axis containing every point.
pub fn cone_with_axis(points: &[Vector], o: &Vector, axis: &Vector) -> Result<Cone> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let norm = axis.norm();
    if !(norm > 0.0) {
        return Err(Error::InvalidParams("cone axis must be non-zero".into()));
    }
    let axis = axis / norm;
    let dirs = DirectionSet::from_points(points, o)?;
    let width = dirs.max_angle_to(&axis);
    finish(o, axis, width, THETA_MIN)
}

/// `min <z - o, v>` over the points: the sampled distance from the image to
/// the hyperplane through `o` orthogonal to `v`. Negative when some point lies
/// behind that hyperplane.
pub fn plane_distance(points: &[Vector], o: &Vector, v: &Vector) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let unit = (v.norm() - 1.0).abs() <= 1e-12;
    if !unit {
        return Err(Error::InvalidParams(format!("plane normal has norm {}", v.norm())));
    }
    Ok(points.iter().map(|z| (z - o).dot(v)).fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerResult {
    pub is_corner: bool,
    pub witness: Option<Cone>,
    /// Points dropped for coinciding with the candidate vertex.
    pub dropped: usize,
}

/// Whether `p` is the vertex of a non-degenerate cone containing the points.
pub fn corner_test(points: &[Vector], p: &Vector) -> Result<CornerResult> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let tol = APEX_TOLERANCE * (1.0 + p.norm());
    let kept: Vec<Vector> = points.iter().filter(|z| (*z - p).norm() >= tol).cloned().collect();
    let dropped = points.len() - kept.len();
    if kept.is_empty() {
        return Err(Error::EmptyInput);
    }
    match min_enclosing_cone(&kept, p) {
        Ok(cone) => Ok(CornerResult { is_corner: true, witness: Some(cone), dropped }),
        Err(Error::DegenerateCone { .. }) => Ok(CornerResult { is_corner: false, witness: None, dropped }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::cone_contains;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn single_point_gives_clamped_width() {
        let o = v(&[1.0, 1.0, 1.0]);
        let cone = min_enclosing_cone(&[v(&[1.0, 1.0, 3.0])], &o).unwrap();
        assert_eq!(cone.width, THETA_MIN);
        assert!((cone.axis() - v(&[0.0, 0.0, 1.0])).norm() < 1e-15);
    }

    #[test]
    fn symmetric_pair_gives_half_angle() {
        let gamma: f64 = 1.1;
        let pts = [v(&[gamma.cos(), gamma.sin(), 0.0]) * 3.0, v(&[gamma.cos(), -gamma.sin(), 0.0]) * 0.5];
        let cone = min_enclosing_cone(&pts, &Vector::zeros(3)).unwrap();
        assert!((cone.width - gamma).abs() < 1e-12);
        assert!((cone.axis() - v(&[1.0, 0.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn antipodal_directions_are_degenerate() {
        let pts = [v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0])];
        assert!(matches!(min_enclosing_cone(&pts, &Vector::zeros(2)), Err(Error::DegenerateCone { .. })));
    }

    #[test]
    fn apex_samples_are_rejected_not_dropped() {
        let pts = [v(&[0.0, 0.0]), v(&[0.0, 1.0])];
        assert!(matches!(min_enclosing_cone(&pts, &Vector::zeros(2)), Err(Error::ApexSample { .. })));
        let r = corner_test(&pts, &Vector::zeros(2)).unwrap();
        assert_eq!(r.dropped, 1);
        assert!(r.is_corner);
    }

    #[test]
    fn plane_distance_examples() {
        let o = v(&[0.0, 0.0, 0.0]);
        let e3 = v(&[0.0, 0.0, 1.0]);
        assert_eq!(plane_distance(&[&o + &e3], &o, &e3).unwrap(), 1.0);
        let pts = [v(&[1.0, 0.0, 2.0]), v(&[0.0, 3.0, 0.5])];
        let shifted: Vec<Vector> = pts.iter().map(|p| p + &e3 * 4.0).collect();
        assert_eq!(plane_distance(&pts, &o, &e3).unwrap(), 0.5);
        assert_eq!(plane_distance(&shifted, &o, &e3).unwrap(), 4.5);
        assert_eq!(plane_distance(&[], &o, &e3), Err(Error::EmptyInput));
    }

    #[test]
    fn corners() {
        let p = v(&[1.0, -1.0, 0.5]);
        let dir = v(&[0.3, 0.4, 1.2]);
        let ray: Vec<Vector> = (1..20).map(|k| &p + &dir * (k as f64)).collect();
        let r = corner_test(&ray, &p).unwrap();
        assert!(r.is_corner);
        assert!(r.witness.unwrap().width < 1e-7);

        // simplex with p strictly inside
        let simplex = [
            &p + v(&[1.0, 0.0, 0.0]),
            &p + v(&[0.0, 1.0, 0.0]),
            &p + v(&[0.0, 0.0, 1.0]),
            &p + v(&[-1.0, -1.0, -1.0]),
        ];
        let r = corner_test(&simplex, &p).unwrap();
        assert!(!r.is_corner && r.witness.is_none());
    }

    #[test]
    fn fixed_axis_cone_contains_points() {
        let pts = [v(&[1.0, 0.0, 2.0]), v(&[0.0, 3.0, 1.0]), v(&[-1.0, -1.0, 4.0])];
        let o = Vector::zeros(3);
        let cone = cone_with_axis(&pts, &o, &v(&[0.0, 0.0, 1.0])).unwrap();
        assert!(pts.iter().all(|p| cone_contains(&cone, p).unwrap()));
        let fitted = min_enclosing_cone(&pts, &o).unwrap();
        assert!(fitted.width <= cone.width + 1e-12);
    }
}
