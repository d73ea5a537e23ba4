//! Metric projection onto convex sets in `l^p`: set descriptions, solvers, the
//! variational certificate, a brute-force oracle and alternating projections.

pub mod alternating;
pub mod certificate;
pub mod euclidean;
pub mod linalg;
pub mod oracle;
pub mod sets;
pub mod solver;

pub use alternating::{alternating_projections, AlternatingResult};
pub use certificate::certificate_residual;
pub use euclidean::{euclidean_project, infeasibility};
pub use oracle::{brute_force_project, OracleResult};
pub use sets::{ConvexSetSpec, SetKind};
pub use solver::{
    certificate_exact, certificate_reach, project, projected_descent, rounding_floor, rounding_shift, Method,
    ProjectionResult, FEASIBILITY_TOL,
};
