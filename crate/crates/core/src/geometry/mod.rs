//! First- and second-order differential geometry of charted maps.

pub mod fd;
pub mod hessian;
pub mod map;
pub mod metric;
pub mod sff;
pub mod tension;

pub use hessian::{hessian_scalar, ScalarHessian};
pub use map::{
    ChartedMap, DomainBox, FiniteDifference, FnMap, Jet, JetKind, Reparametrized, Scaled,
};
pub use metric::{
    christoffel, metric_at, pullback_metric, Christoffel, EuclideanMetric, FnMetric,
    MetricField, MetricMode, MetricSample, MetricSource,
};
pub use sff::{second_fundamental_form, sectional_curvature, SecondFundamentalForm};
pub use tension::{energy_density, evaluate_point, tension_field, PointGeometry, TensionVector};
