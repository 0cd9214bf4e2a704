//! Non-degenerate cones with a fixed vertex.

pub mod cloud;
mod fit;
pub mod miniball;
mod shape;

pub use fit::{
    cone_with_axis, corner_test, min_enclosing_cone, min_enclosing_cone_with, plane_distance, CornerResult,
    FitOptions, DEGENERACY_MARGIN, THETA_MIN,
};
pub use shape::{angle_between, cone_contains, Cone, DirectionSet, APEX_TOLERANCE, CONTAINMENT_SLACK};
