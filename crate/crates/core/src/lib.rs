//! Numerical laboratory for maps from Riemannian manifolds into non-degenerate
//! Euclidean cones.
//!
//! The crate is split along the quantities it checks:
//!
//! - [`geometry`]: jets of charted maps, pullback metrics, Christoffel symbols,
//!   tension fields, second fundamental forms and sectional curvature.
//! - [`cone`]: non-degenerate cones, containment, minimal enclosing cones with a
//!   fixed vertex, plane distance and corner tests.
//! - [`bounds`]: the constant `A_eta`, the width bounds for general maps and for
//!   isometric immersions of bounded curvature, and the pointwise identities
//!   behind them (auxiliary function `u`, its Laplacian and Hessian).
//! - [`models`]: built-in families with closed-form ground truth and the volume
//!   growth tests on rotationally symmetric models.
//!
//! Per-sample work runs on rayon when the `parallel` feature is enabled (the
//! default) and falls back to plain iterators otherwise. Results are identical
//! in both modes.

pub mod bounds;
pub mod cone;
pub mod error;
pub mod geometry;
pub mod models;
pub mod par;
pub mod sampling;

pub use error::{Error, Result};

/// Points of the ambient space and chart coordinates.
pub type Vector = nalgebra::DVector<f64>;
/// Small dense matrices (metrics, Hessians, frames).
pub type Matrix = nalgebra::DMatrix<f64>;
