//! Metric projection onto convex sets of finite-dimensional `l^p` spaces and
//! numerical verification of the continuity estimates it satisfies.
//!
//! The numeric core is generic over [`Scalar`] (`f32`/`f64`); the aliases at
//! the crate root fix it to `f64`, which is what the harness and CLI use.

pub mod bounds;
pub mod error;
pub mod harness;
pub mod lp;
pub mod moduli;
pub mod numeric;
pub mod projection;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type SpaceSpec = lp::SpaceSpec<f64>;
pub type Point = lp::Point<f64>;
pub type DualPoint = lp::DualPoint<f64>;
pub type ModuliProfile = moduli::ModuliProfile<f64>;
pub type ConvexSetSpec = projection::ConvexSetSpec<f64>;
pub type ProjectionResult = projection::ProjectionResult<f64>;
