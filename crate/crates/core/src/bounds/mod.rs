//! Checkable forms of the duality-mapping and projection-continuity estimates.

pub mod continuity;
pub mod duality;
pub mod order;
pub mod record;

pub use continuity::{
    estimate_rhs, is_asserted, monotone_projection_check, monotone_projection_record, projection_bound_check,
    projection_constant, projection_estimate_rhs, projection_records, Estimate, EstimateInputs, EstimateKind,
};
pub use duality::{
    duality_lower_check, duality_upper_check, jmap_modulus_check, parallelogram_upper_check, thm22_constant,
    DualityUpper,
};
pub use order::{estimator_slope, expected_slope, order_exponent, OrderFit};
pub use record::{BoundCheckRecord, BoundKind, Constants, SampleMeta, REL_SLACK};
