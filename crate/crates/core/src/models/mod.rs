//! Built-in families with closed-form ground truth, and volume-growth tests on
//! rotationally symmetric models.

mod affine;
mod caso_b;
mod flat_cone;
pub mod integrability;
mod paraboloid;
pub mod quadrature;
pub mod registry;
mod rotational;
mod sphere;

pub use affine::AffineMap;
pub use caso_b::{caso_b_check, CasoBResult};
pub use flat_cone::{flat_cone_surface, FlatCone, FlatConeMetric, FLAT_CONE_R_MIN};
pub use integrability::{integrability_test, Classification, IntegrabilityOptions, IntegrabilityVerdict};
pub use paraboloid::{paraboloid_truth, sharpness_series, ParaboloidFamily, ParaboloidTruth, SharpnessPoint};
pub use registry::{Family, FamilyParams};
pub use rotational::{unit_sphere_area, volume_functions, RotationalModel, VolumeTable, Warping};
pub use sphere::SphereFamily;
