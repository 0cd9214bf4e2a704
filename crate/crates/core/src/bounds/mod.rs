//! Width bounds for cones containing the image of a map, and numerical checks
//! of the pointwise identities behind them.

mod aeta;
mod aux;
mod certify;
mod otsuki;
mod width;

pub use aeta::{compute_a, compute_a_seeded, AetaResult, A_ETA_CEILING};
pub use aux::{
    aux_quantities, finale_check, hess_u_direction, omega_region, AuxParams, AuxQuantities, FinaleReport,
    OmegaRegion, OmegaViolation, ViolationKind,
};
pub use certify::{
    certify_theorem1, certify_theorem2, ConeChoice, SampleFailure, Theorem2Report, VerificationReport,
    SATISFIED_SLACK,
};
pub use otsuki::{otsuki_direction, OtsukiResult};
pub use width::{theorem1_bound, theorem1_bound_raw, theorem2_bound, theorem2_bound_raw};
