//! Metric projection `P_Ω x = argmin_{ξ ∈ Ω} ||x - ξ||_p`.
//!
//! Every solver minimizes the smooth surrogate `f(ξ) = Σ|x_i - ξ_i|^p / p`,
//! which has the same minimizer as the norm.
//!
//! * Box: coordinatewise clamp (the objective is separable).
//! * Hyperplane and halfspace: stationarity `φ_p(x - ξ) = λ a` with
//!   `φ_p(t) = |t|^{p-1} sign t` gives `ξ = x - s φ_q(a)`,
//!   `s = (<a,x> - b) / ||a||_q^q`.
//! * Simplex: stationarity gives `ξ_i = max(0, x_i - θ)` with the same
//!   threshold equation `Σ ξ_i = scale` as in the Euclidean case, so the `l^p`
//!   and Euclidean projections coincide for every `p`.
//! * Ball: `φ_p(z - u) = λ u` with `u = ξ - c`, `z = x - c`; each coordinate is
//!   a monotone scalar root in `u_i`, and `||u(λ)||_2` decreases in `λ`, so two
//!   nested bisections recover the multiplier.
//! * Affine subspace: damped Newton in orthonormal subspace coordinates with an
//!   exact derivative line search.
//!
//! [`projected_descent`] is the general projected-gradient solver with an
//! Armijo backtracking line search and Euclidean re-projection; it applies to
//! every set and is kept as an independent route for cross-checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{dot, duality_map_raw, l2_norm, lp_norm, lp_norm_pow, Point, SpaceSpec};
use crate::numeric::{root_decreasing, BISECTION_MAX_ITER};
use crate::scalar::{signed_pow, Scalar};

use super::euclidean::{euclidean_project_raw, simplex};
use super::linalg::{orthonormalize, solve};
use super::sets::ConvexSetSpec;

/// Iteration cap for the iterative solvers.
pub const MAX_ITER: usize = 10_000;
/// Feasibility tolerance for solver outputs.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Admissible range of the solver tolerance.
pub const TOL_RANGE: (f64, f64) = (1e-12, 1e-4);

const ARMIJO_SHRINK: f64 = 0.5;
const ARMIJO_SUFFICIENT_DECREASE: f64 = 1e-4;
const ARMIJO_INITIAL_STEP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    /// Scalar root finding on a Lagrange multiplier.
    Multiplier,
    Descent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult<T> {
    pub argmin: Point<T>,
    /// `||x - argmin||_p`
    pub distance: T,
    /// Exact minimum of `<J(x - x̄), x̄ - ξ>` over feasible `ξ` (within a
    /// Euclidean window of radius `1 + distance` around `x̄` for unbounded sets).
    pub certificate_residual: T,
    /// Shift of the certificate that rounding of `x - x̄` can cause; see [`rounding_floor`].
    pub rounding_floor: T,
    pub iterations: usize,
    pub converged: bool,
    pub method: Method,
}

impl<T: Scalar> ProjectionResult<T> {
    /// Certificate acceptance: residual at least `-tol·(1 + distance²) - rounding_floor`.
    pub fn certificate_ok(&self, tol: T) -> bool {
        certificate_ok(self.certificate_residual, self.distance, tol, self.rounding_floor)
    }
}

fn certificate_ok<T: Scalar>(residual: T, dist: T, tol: T, floor: T) -> bool {
    residual >= -tol * (T::one() + dist * dist) - floor
}

fn check_inputs<T: Scalar>(space: &SpaceSpec<T>, set: &ConvexSetSpec<T>, x: &Point<T>, tol: T) -> Result<()> {
    if x.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: x.dim(),
        });
    }
    set.validate(space.dim())?;
    let t = tol.as_f64();
    if !(TOL_RANGE.0..=TOL_RANGE.1).contains(&t) {
        return Err(Error::Domain {
            name: "tol",
            value: t,
            domain: "1e-12 <= tol <= 1e-4",
        });
    }
    Ok(())
}

/// Metric projection of `x` onto `set` in the norm of `space`.
pub fn project<T: Scalar>(
    space: &SpaceSpec<T>,
    set: &ConvexSetSpec<T>,
    x: &Point<T>,
    tol: T,
) -> Result<ProjectionResult<T>> {
    check_inputs(space, set, x, tol)?;
    let p = space.p();
    let xs = x.coords();
    let (argmin, iterations, converged, method) = match set {
        ConvexSetSpec::Box { .. } => (euclidean_project_raw(set, xs), 0, true, Method::ClosedForm),
        ConvexSetSpec::Hyperplane { a, b } => (hyperplane(space, a, *b, xs), 0, true, Method::ClosedForm),
        ConvexSetSpec::Halfspace { a, b } => {
            let xi = if dot(a, xs) <= *b {
                xs.to_vec()
            } else {
                hyperplane(space, a, *b, xs)
            };
            (xi, 0, true, Method::ClosedForm)
        }
        ConvexSetSpec::Simplex { scale } => (simplex(xs, *scale), 0, true, Method::ClosedForm),
        ConvexSetSpec::Ball { center, radius } => {
            let (xi, iters) = ball(p, center, *radius, xs);
            (xi, iters, true, Method::Multiplier)
        }
        ConvexSetSpec::Affine { base, basis } => {
            let q = orthonormalize(basis);
            if q.is_empty() {
                (base.clone(), 0, true, Method::ClosedForm)
            } else {
                let (xi, iters, ok) = affine_newton(p, base, &q, xs, tol);
                (xi, iters, ok, Method::Descent)
            }
        }
    };
    finish(space, set, xs, argmin, iterations, converged, method)
}

fn finish<T: Scalar>(
    space: &SpaceSpec<T>,
    set: &ConvexSetSpec<T>,
    x: &[T],
    argmin: Vec<T>,
    iterations: usize,
    converged: bool,
    method: Method,
) -> Result<ProjectionResult<T>> {
    let p = space.p();
    let r: Vec<T> = x.iter().zip(&argmin).map(|(&a, &b)| a - b).collect();
    let distance = lp_norm(&r, p);
    let certificate_residual = certificate_exact(p, set, x, &argmin);
    let floor = rounding_floor(p, set, x, &argmin);
    let feasible = set.contains(&argmin, T::lit(FEASIBILITY_TOL));
    Ok(ProjectionResult {
        argmin: Point::new(argmin)?,
        distance,
        certificate_residual,
        rounding_floor: floor,
        iterations,
        converged: converged && feasible,
        method,
    })
}

/// `ξ = x - s φ_q(a)`, `s = (<a,x> - b)/||a||_q^q`.
fn hyperplane<T: Scalar>(space: &SpaceSpec<T>, a: &[T], b: T, x: &[T]) -> Vec<T> {
    let q = space.q();
    let aq = lp_norm_pow(a, q);
    let s = (dot(a, x) - b) / aq;
    let e = q - T::one();
    x.iter().zip(a).map(|(&xi, &ai)| xi - s * signed_pow(ai, e)).collect()
}

/// Solves `(m - v)^{p-1} = λ v` for `v ∈ [0, m]`.
fn ball_coordinate<T: Scalar>(p: T, m: T, lambda: T) -> T {
    if m == T::zero() {
        return T::zero();
    }
    if lambda == T::zero() {
        return m;
    }
    let e = p - T::one();
    root_decreasing(|v: T| (m - v).powf(e) - lambda * v, T::zero(), m)
}

fn ball_offsets<T: Scalar>(p: T, z: &[T], lambda: T) -> Vec<T> {
    z.iter()
        .map(|&zi| ball_coordinate(p, zi.abs(), lambda).copysign(zi))
        .collect()
}

fn ball<T: Scalar>(p: T, center: &[T], radius: T, x: &[T]) -> (Vec<T>, usize) {
    let z: Vec<T> = x.iter().zip(center).map(|(&a, &c)| a - c).collect();
    if l2_norm(&z) <= radius {
        return (x.to_vec(), 0);
    }
    let two = T::lit(2.0);
    let outside = |lam: T| l2_norm(&ball_offsets(p, &z, lam)) > radius;
    let (mut lo, mut hi) = (T::one(), T::one());
    let mut iters = 0;
    if outside(hi) {
        while outside(hi) && iters < BISECTION_MAX_ITER * 5 {
            lo = hi;
            hi = hi * two;
            iters += 1;
        }
    } else {
        while !outside(lo) && iters < BISECTION_MAX_ITER * 5 {
            hi = lo;
            lo = lo / two;
            iters += 1;
        }
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        iters += 1;
        if outside(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut u = ball_offsets(p, &z, hi);
    let un = l2_norm(&u);
    if un > T::zero() {
        for ui in &mut u {
            *ui = *ui * (radius / un);
        }
    }
    (center.iter().zip(&u).map(|(&c, &ui)| c + ui).collect(), iters)
}

fn phi<T: Scalar>(r: &[T], p: T) -> Vec<T> {
    let e = p - T::one();
    r.iter().map(|&t| signed_pow(t, e)).collect()
}

/// Whether the exact certificate of the affine subspace accepts `ξ`.
fn affine_accepts<T: Scalar>(p: T, q: &[Vec<T>], x: &[T], xi: &[T], tol: T) -> bool {
    let r: Vec<T> = x.iter().zip(xi).map(|(&a, &b)| a - b).collect();
    let dist = lp_norm(&r, p);
    let w = duality_map_raw(&r, p);
    let along: T = q.iter().map(|qv| dot(qv, &w).powi(2)).sum::<T>().sqrt();
    let window = T::one() + dist;
    let floor = rounding_floor_raw(p, x, xi, T::lit(2.0) * T::one().max(dist));
    certificate_ok(-window * along, dist, tol, floor)
}

fn affine_newton<T: Scalar>(p: T, base: &[T], q: &[Vec<T>], x: &[T], tol: T) -> (Vec<T>, usize, bool) {
    let k = q.len();
    let n = x.len();
    let point = |t: &[T]| -> Vec<T> {
        let mut xi = base.to_vec();
        for (qv, &tj) in q.iter().zip(t) {
            for (o, &qi) in xi.iter_mut().zip(qv) {
                *o = *o + tj * qi;
            }
        }
        xi
    };
    let diff: Vec<T> = x.iter().zip(base).map(|(&a, &b)| a - b).collect();
    let mut t: Vec<T> = q.iter().map(|qv| dot(qv, &diff)).collect();
    let e = p - T::one();
    for iter in 0..MAX_ITER {
        let xi = point(&t);
        if affine_accepts(p, q, x, &xi, tol) {
            return (xi, iter, true);
        }
        let r: Vec<T> = x.iter().zip(&xi).map(|(&a, &b)| a - b).collect();
        let ph = phi(&r, p);
        // minimize F(t) = Σ|r_i|^p/p; ∇F = -Qᵀφ(r)
        let grad: Vec<T> = q.iter().map(|qv| -dot(qv, &ph)).collect();
        let rmax = r.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
        let floor = (rmax * T::lit(1e-12)).max(T::min_positive_value().sqrt());
        let weights: Vec<T> = r
            .iter()
            .map(|&ri| e * ri.abs().max(floor).powf(p - T::lit(2.0)))
            .collect();
        let mut hess = vec![vec![T::zero(); k]; k];
        for a in 0..k {
            for b in 0..k {
                hess[a][b] = (0..n).map(|i| q[a][i] * weights[i] * q[b][i]).sum();
            }
        }
        let trace: T = (0..k).map(|a| hess[a][a]).sum::<T>() / T::from_usize(k).unwrap();
        for (a, row) in hess.iter_mut().enumerate() {
            row[a] = row[a] + trace * T::lit(1e-12) + T::min_positive_value();
        }
        let neg: Vec<T> = grad.iter().map(|&g| -g).collect();
        let mut dir = solve(hess, neg.clone()).unwrap_or(neg.clone());
        if dot(&dir, &grad) >= T::zero() {
            dir = neg;
        }
        let step_vec: Vec<T> = (0..n)
            .map(|i| q.iter().zip(&dir).map(|(qv, &dj)| qv[i] * dj).sum())
            .collect();
        // D(α) = d/dα F(t + α d) = -<φ(r - α Q d), Q d>, increasing in α.
        let deriv = |alpha: T| -> T {
            let rr: Vec<T> = r.iter().zip(&step_vec).map(|(&ri, &si)| ri - alpha * si).collect();
            -dot(&phi(&rr, p), &step_vec)
        };
        let alpha = exact_line_search(deriv);
        let tnorm = l2_norm(&t);
        let dnorm = l2_norm(&dir);
        for (tj, &dj) in t.iter_mut().zip(&dir) {
            *tj = *tj + alpha * dj;
        }
        if alpha * dnorm <= T::epsilon() * (T::one() + tnorm) {
            let xi = point(&t);
            let ok = affine_accepts(p, q, x, &xi, tol);
            return (xi, iter + 1, ok);
        }
    }
    let xi = point(&t);
    let ok = affine_accepts(p, q, x, &xi, tol);
    (xi, MAX_ITER, ok)
}

/// Root of an increasing derivative with `deriv(0) < 0`.
fn exact_line_search<T: Scalar, F: Fn(T) -> T>(deriv: F) -> T {
    let two = T::lit(2.0);
    let mut hi = T::one();
    let mut lo = T::zero();
    let mut guard = 0;
    while deriv(hi) < T::zero() && guard < 200 {
        lo = hi;
        hi = hi * two;
        guard += 1;
    }
    for _ in 0..BISECTION_MAX_ITER {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let d = deriv(mid);
        if d == T::zero() {
            return mid;
        }
        if d < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / two
}

/// Projected gradient descent on `f(ξ) = Σ|x_i - ξ_i|^p / p` with Armijo
/// backtracking (shrink 0.5, sufficient decrease 1e-4), Euclidean re-projection
/// after every step, and the exact certificate as stopping rule. The first trial
/// step is 1.0; later iterations start from twice the last accepted step.
pub fn projected_descent<T: Scalar>(
    space: &SpaceSpec<T>,
    set: &ConvexSetSpec<T>,
    x: &Point<T>,
    tol: T,
) -> Result<ProjectionResult<T>> {
    check_inputs(space, set, x, tol)?;
    let p = space.p();
    let xs = x.coords();
    let f = |xi: &[T]| -> T {
        let r: Vec<T> = xs.iter().zip(xi).map(|(&a, &b)| a - b).collect();
        lp_norm_pow(&r, p) / p
    };
    let mut xi = euclidean_project_raw(set, xs);
    let mut step = T::lit(ARMIJO_INITIAL_STEP) / T::lit(2.0);
    let sigma = T::lit(ARMIJO_SUFFICIENT_DECREASE);
    let mut converged = false;
    let mut iterations = MAX_ITER;
    for iter in 0..MAX_ITER {
        let cert = certificate_exact(p, set, xs, &xi);
        let r: Vec<T> = xs.iter().zip(&xi).map(|(&a, &b)| a - b).collect();
        let dist = lp_norm(&r, p);
        let floor = rounding_floor(p, set, xs, &xi);
        if certificate_ok(cert, dist, tol, floor) {
            converged = true;
            iterations = iter;
            break;
        }
        let w = phi(&r, p);
        let fx = f(&xi);
        let mut trial_step = step * T::lit(2.0);
        let mut accepted = None;
        while trial_step > T::lit(1e-30) {
            let cand: Vec<T> = xi.iter().zip(&w).map(|(&a, &g)| a + trial_step * g).collect();
            let trial = euclidean_project_raw(set, &cand);
            let delta: Vec<T> = trial.iter().zip(&xi).map(|(&a, &b)| a - b).collect();
            if delta.iter().all(|d| *d == T::zero()) {
                break;
            }
            // ∇f = -w
            if f(&trial) <= fx - sigma * dot(&w, &delta) {
                accepted = Some(trial);
                break;
            }
            trial_step = trial_step * T::lit(ARMIJO_SHRINK);
        }
        match accepted {
            Some(t) => {
                xi = t;
                step = trial_step;
            }
            None => {
                iterations = iter;
                converged = certificate_ok(cert, dist, tol, floor);
                break;
            }
        }
    }
    finish(space, set, xs, xi, iterations, converged, Method::Descent)
}

/// Exact minimum of `<J(x - x̄), x̄ - ξ>` over feasible `ξ`. For unbounded sets
/// `ξ` is restricted to a Euclidean window of radius `1 + ||x - x̄||_p` around `x̄`.
pub fn certificate_exact<T: Scalar>(p: T, set: &ConvexSetSpec<T>, x: &[T], xbar: &[T]) -> T {
    let r: Vec<T> = x.iter().zip(xbar).map(|(&a, &b)| a - b).collect();
    let w = duality_map_raw(&r, p);
    if w.iter().all(|t| *t == T::zero()) {
        return T::zero();
    }
    let window = T::one() + lp_norm(&r, p);
    match set {
        ConvexSetSpec::Box { lo, hi } => w
            .iter()
            .zip(xbar)
            .zip(lo.iter().zip(hi))
            .map(|((&wi, &xb), (&l, &h))| wi * xb - (wi * l).max(wi * h))
            .sum(),
        ConvexSetSpec::Ball { center, radius } => {
            let d: Vec<T> = xbar.iter().zip(center).map(|(&a, &c)| a - c).collect();
            dot(&w, &d) - *radius * l2_norm(&w)
        }
        ConvexSetSpec::Simplex { scale } => {
            let wmax = w.iter().fold(T::neg_infinity(), |m, &v| m.max(v));
            dot(&w, xbar) - *scale * wmax
        }
        ConvexSetSpec::Hyperplane { a, .. } => -window * tangential(&w, a),
        ConvexSetSpec::Halfspace { a, b } => {
            let an = l2_norm(a);
            let slack = *b - dot(a, xbar);
            let scale = T::one() + b.abs() + an * l2_norm(xbar);
            if slack > T::lit(1e-12) * scale {
                -window * l2_norm(&w)
            } else if dot(&w, a) >= T::zero() {
                -window * tangential(&w, a)
            } else {
                -window * l2_norm(&w)
            }
        }
        ConvexSetSpec::Affine { basis, .. } => {
            let q = orthonormalize(basis);
            let along: T = q.iter().map(|qv| dot(qv, &w).powi(2)).sum::<T>().sqrt();
            -window * along
        }
    }
}

/// Rounding in units of machine epsilon assumed for each coordinate of `x - x̄`.
pub const ROUNDING_ULPS: f64 = 16.0;

/// Largest Euclidean distance from `x̄` to the feasible points either
/// certificate considers: the set diameter for bounded sets, and the window
/// `2 max(1, ||x - x̄||_p)` for unbounded ones.
pub fn certificate_reach<T: Scalar>(set: &ConvexSetSpec<T>, dist: T) -> T {
    match set {
        ConvexSetSpec::Box { lo, hi } => {
            let w: Vec<T> = lo.iter().zip(hi).map(|(&l, &h)| h - l).collect();
            l2_norm(&w)
        }
        ConvexSetSpec::Ball { radius, .. } => T::lit(2.0) * *radius,
        ConvexSetSpec::Simplex { scale } => T::lit(2.0).sqrt() * *scale,
        _ => T::lit(2.0) * T::one().max(dist),
    }
}

/// Bound on how far the certificate moves when each coordinate of the residual
/// `r = x - x̄` is perturbed by `δ_i = ROUNDING_ULPS·ε·(|x_i| + |x̄_i|)`.
///
/// Each coordinate of `J r = ||r||^{2-p} |r_i|^{p-1} sign r_i` moves by at most
/// `||r||^{2-p}` times the largest change of `t ↦ |t|^{p-1} sign t` over
/// `[r_i - δ_i, r_i + δ_i]`, and the certificate by that vector's Euclidean norm
/// times [`certificate_reach`]. For `p < 2` the power is only `(p-1)`-Hölder, so
/// coordinates of `r` at the rounding scale give a visible floor; otherwise it
/// is negligible.
pub fn rounding_floor<T: Scalar>(p: T, set: &ConvexSetSpec<T>, x: &[T], xbar: &[T]) -> T {
    let r: Vec<T> = x.iter().zip(xbar).map(|(&a, &b)| a - b).collect();
    rounding_floor_raw(p, x, xbar, certificate_reach(set, lp_norm(&r, p)))
}

fn rounding_floor_raw<T: Scalar>(p: T, x: &[T], xbar: &[T], reach: T) -> T {
    rounding_shift(p, x, xbar) * reach
}

/// Euclidean norm of the largest change of `J(x - x̄)` under the perturbation
/// described in [`rounding_floor`].
pub fn rounding_shift<T: Scalar>(p: T, x: &[T], xbar: &[T]) -> T {
    let r: Vec<T> = x.iter().zip(xbar).map(|(&a, &b)| a - b).collect();
    let nr = lp_norm(&r, p);
    if nr == T::zero() {
        return T::zero();
    }
    let e = p - T::one();
    let ulps = T::lit(ROUNDING_ULPS) * T::epsilon();
    let shifts: Vec<T> = r
        .iter()
        .zip(x.iter().zip(xbar))
        .map(|(&ri, (&xi, &bi))| {
            let a = ri.abs();
            let d = ulps * (xi.abs() + bi.abs());
            let up = (a + d).powf(e) - a.powf(e);
            let down = if a >= d {
                a.powf(e) - (a - d).powf(e)
            } else {
                a.powf(e) + (d - a).powf(e)
            };
            up.max(down)
        })
        .collect();
    nr.powf(T::lit(2.0) - p) * l2_norm(&shifts)
}

fn tangential<T: Scalar>(w: &[T], a: &[T]) -> T {
    let lam = dot(w, a) / dot(a, a);
    let t: Vec<T> = w.iter().zip(a).map(|(&wi, &ai)| wi - lam * ai).collect();
    l2_norm(&t)
}
