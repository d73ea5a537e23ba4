//! Alternating metric projections `x_{k+1} = P_A(P_B(x_k))`.

use crate::error::{Error, Result};
use crate::lp::{Point, SpaceSpec};
use crate::scalar::Scalar;

use super::euclidean::infeasibility;
use super::sets::ConvexSetSpec;
use super::solver::project;

/// Tolerance passed to the inner projection solver.
pub const INNER_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct AlternatingResult<T> {
    /// `x_0, x_1, …`
    pub trajectory: Vec<Point<T>>,
    /// `(infeasibility w.r.t. A, infeasibility w.r.t. B)` of each iterate.
    pub infeasibility: Vec<(T, T)>,
    /// Whether the last iterate is within `tol` of both sets.
    pub converged: bool,
}

impl<T: Scalar> AlternatingResult<T> {
    pub fn iterations(&self) -> usize {
        self.trajectory.len() - 1
    }

    pub fn last(&self) -> &Point<T> {
        self.trajectory.last().expect("trajectory is never empty")
    }
}

/// Runs alternating projections from `x0` until both infeasibilities are below
/// `tol` or `maxiter` iterations have been made.
pub fn alternating_projections<T: Scalar>(
    space: &SpaceSpec<T>,
    set_a: &ConvexSetSpec<T>,
    set_b: &ConvexSetSpec<T>,
    x0: &Point<T>,
    maxiter: usize,
    tol: T,
) -> Result<AlternatingResult<T>> {
    set_a.validate(space.dim())?;
    set_b.validate(space.dim())?;
    if x0.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: x0.dim(),
        });
    }
    if tol.is_nan() || tol <= T::zero() {
        return Err(Error::Domain {
            name: "tol",
            value: tol.as_f64(),
            domain: "tol > 0",
        });
    }
    let p = space.p();
    let measure = |x: &Point<T>| (infeasibility(set_a, x.coords(), p), infeasibility(set_b, x.coords(), p));
    let inner = T::lit(INNER_TOL);
    let mut trajectory = vec![x0.clone()];
    let mut infeas = vec![measure(x0)];
    let done = |m: (T, T)| m.0 < tol && m.1 < tol;
    while !done(*infeas.last().unwrap()) && trajectory.len() <= maxiter {
        let xk = trajectory.last().unwrap();
        let half = project(space, set_b, xk, inner)?.argmin;
        let next = project(space, set_a, &half, inner)?.argmin;
        infeas.push(measure(&next));
        trajectory.push(next);
    }
    let converged = done(*infeas.last().unwrap());
    Ok(AlternatingResult {
        trajectory,
        infeasibility: infeas,
        converged,
    })
}
