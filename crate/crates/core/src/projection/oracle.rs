//! Brute-force grid oracle for the metric projection in dimension at most 3.
//!
//! The minimizer is searched on a low-dimensional parametrization of the part
//! of the set where it must lie:
//!
//! * box: the box itself, intersected with `[x - 2r, x + 2r]`;
//! * hyperplane, and halfspace with `x` outside: the boundary hyperplane in
//!   orthonormal coordinates centred at the Euclidean projection of `x`;
//! * ball with `x` outside: the sphere in angular coordinates whose equator
//!   passes through the Euclidean projection of `x`;
//! * simplex: every face, in the coordinates of its support;
//! * affine subspace: orthonormal coordinates centred at the Euclidean projection.
//!
//! Here `r` is the `l^p` distance from `x` to its Euclidean projection, an upper
//! bound on the true distance. Each search is a full grid with `resolution`
//! points per axis followed by three refinement rounds that divide the step by
//! ten around the incumbent.

use crate::error::{Error, Result};
use crate::lp::{lp_norm, Point, SpaceSpec};
use crate::scalar::Scalar;

use super::euclidean::euclidean_project_raw;
use super::linalg::{complement_basis, orthonormalize};
use super::sets::ConvexSetSpec;

/// Largest supported dimension.
pub const MAX_ORACLE_DIM: usize = 3;
/// Smallest accepted resolution.
pub const MIN_RESOLUTION: usize = 3;
const REFINE_ROUNDS: usize = 3;
const REFINE_FACTOR: f64 = 10.0;
/// The refinement window always spans at least this many new steps on each
/// side of the incumbent, i.e. two steps of the previous round.
const MIN_HALF_WIDTH_STEPS: usize = 20;
/// The reported resolution is never below this many ulps of `max(1, ||x||_p)`.
pub const RESOLUTION_FLOOR_ULPS: f64 = 8.0;

/// Output of [`brute_force_project`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    pub point: Point<T>,
    /// `||x - point||_p`
    pub distance: T,
    /// Length, in the `l^p` norm, of the largest single-axis step of the final
    /// refinement grid, and at least [`RESOLUTION_FLOOR_ULPS`] ulps of
    /// `max(1, ||x||_p)`, the finest resolution a floating-point point can carry.
    pub grid_step: T,
}

/// One search problem: a box of parameters `lo ≤ t ≤ hi` mapped into the
/// ambient space by `embed`, which returns `None` for infeasible parameters.
/// Map from search parameters to a feasible point, `None` outside the set.
type Embed<'a, T> = Box<dyn Fn(&[T]) -> Option<Vec<T>> + 'a>;

struct Search<'a, T> {
    lo: Vec<T>,
    hi: Vec<T>,
    embed: Embed<'a, T>,
    /// Ambient `l^p` length of a unit parameter step along the worst axis.
    step_scale: T,
}

/// Grid-search approximation of the metric projection of `x` onto `set`.
pub fn brute_force_project<T: Scalar>(
    space: &SpaceSpec<T>,
    set: &ConvexSetSpec<T>,
    x: &Point<T>,
    resolution: usize,
) -> Result<OracleResult<T>> {
    let n = space.dim();
    if n > MAX_ORACLE_DIM {
        return Err(Error::Oracle(format!("dimension {n} exceeds {MAX_ORACLE_DIM}")));
    }
    if resolution < MIN_RESOLUTION {
        return Err(Error::Oracle(format!("resolution must be at least {MIN_RESOLUTION}")));
    }
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    set.validate(n)?;
    let p = space.p();
    let xs = x.coords();
    let e = euclidean_project_raw(set, xs);
    let resid: Vec<T> = xs.iter().zip(&e).map(|(&a, &b)| a - b).collect();
    let r = lp_norm(&resid, p);
    let floor = T::lit(RESOLUTION_FLOOR_ULPS) * T::epsilon() * T::one().max(lp_norm(xs, p));
    if r == T::zero() {
        return Ok(OracleResult {
            point: x.clone(),
            distance: T::zero(),
            grid_step: floor,
        });
    }
    let searches = searches(set, xs, &e, r, p, n);
    let objective = |xi: &[T], reference: &[T]| -> T { excess(xs, xi, reference, p) };
    let mut best: Option<(Vec<T>, T)> = None;
    for s in &searches {
        if let Some((xi, step)) = run_search(s, resolution, &e, &objective) {
            if best.as_ref().is_none_or(|b| objective(&xi, &b.0) < T::zero()) {
                best = Some((xi, step));
            }
        }
    }
    let (xi, step) = best.ok_or_else(|| Error::Oracle("empty feasible grid".into()))?;
    let d: Vec<T> = xs.iter().zip(&xi).map(|(&a, &b)| a - b).collect();
    Ok(OracleResult {
        distance: lp_norm(&d, p),
        point: Point::new(xi)?,
        grid_step: step.max(floor),
    })
}

/// `Σ |x_i - ξ_i|^p - |x_i - ref_i|^p`, summed termwise so that coordinates
/// with small residuals keep their resolution next to large ones.
fn excess<T: Scalar>(x: &[T], xi: &[T], reference: &[T], p: T) -> T {
    x.iter()
        .zip(xi.iter().zip(reference))
        .map(|(&a, (&b, &c))| (a - b).abs().powf(p) - (a - c).abs().powf(p))
        .sum()
}

fn max_lp_norm<T: Scalar>(vectors: &[Vec<T>], p: T) -> T {
    vectors.iter().fold(T::zero(), |m, v| m.max(lp_norm(v, p)))
}

/// Affine parametrization `origin + Σ t_k q_k` on the cube `|t_k| ≤ half`.
fn flat_search<'a, T: Scalar>(origin: Vec<T>, q: Vec<Vec<T>>, half: T, p: T) -> Search<'a, T> {
    let m = q.len();
    let step_scale = max_lp_norm(&q, p);
    Search {
        lo: vec![-half; m],
        hi: vec![half; m],
        step_scale,
        embed: Box::new(move |t: &[T]| {
            let mut out = origin.clone();
            for (qk, &tk) in q.iter().zip(t) {
                for (o, &qi) in out.iter_mut().zip(qk) {
                    *o = *o + tk * qi;
                }
            }
            Some(out)
        }),
    }
}

fn searches<'a, T: Scalar>(set: &'a ConvexSetSpec<T>, x: &[T], e: &[T], r: T, p: T, n: usize) -> Vec<Search<'a, T>> {
    let two = T::lit(2.0);
    let half = two * T::from_usize(n).unwrap().sqrt() * r;
    match set {
        ConvexSetSpec::Box { lo, hi } => {
            let lo_w: Vec<T> = lo.iter().zip(x).map(|(&l, &xi)| l.max(xi - two * r)).collect();
            let hi_w: Vec<T> = hi.iter().zip(x).map(|(&h, &xi)| h.min(xi + two * r)).collect();
            vec![Search {
                lo: lo_w,
                hi: hi_w,
                step_scale: T::one(),
                embed: Box::new(|t: &[T]| Some(t.to_vec())),
            }]
        }
        ConvexSetSpec::Hyperplane { a, .. } | ConvexSetSpec::Halfspace { a, .. } => {
            let q = complement_basis(std::slice::from_ref(a), n);
            vec![flat_search(e.to_vec(), q, half, p)]
        }
        ConvexSetSpec::Affine { basis, .. } => vec![flat_search(e.to_vec(), orthonormalize(basis), half, p)],
        ConvexSetSpec::Ball { center, radius } => vec![sphere_search(center, *radius, e, p, n)],
        ConvexSetSpec::Simplex { scale } => simplex_searches(*scale, n, p),
    }
}

fn sphere_search<'a, T: Scalar>(center: &[T], radius: T, e: &[T], p: T, n: usize) -> Search<'a, T> {
    let pi = T::lit(std::f64::consts::PI);
    let u0: Vec<T> = e.iter().zip(center).map(|(&a, &c)| (a - c) / radius).collect();
    let t = complement_basis(std::slice::from_ref(&u0), n);
    let center = center.to_vec();
    // Chord length of an angular step is at most radius·step in l^2.
    let l2_to_lp = T::one().max(T::from_usize(n).unwrap().powf(p.recip() - T::lit(0.5)));
    let step_scale = radius * l2_to_lp;
    let (lo, hi) = match n {
        1 => (vec![], vec![]),
        2 => (vec![-pi], vec![pi]),
        _ => (vec![-pi, -pi / T::lit(2.0)], vec![pi, pi / T::lit(2.0)]),
    };
    Search {
        lo,
        hi,
        step_scale,
        embed: Box::new(move |ang: &[T]| {
            let mut dir = u0.clone();
            if n >= 2 {
                let (s0, c0) = ang[0].sin_cos();
                let (s1, c1) = if n >= 3 {
                    ang[1].sin_cos()
                } else {
                    (T::zero(), T::one())
                };
                for i in 0..n {
                    dir[i] = c1 * (c0 * u0[i] + s0 * t[0][i]);
                    if n >= 3 {
                        dir[i] = dir[i] + s1 * t[1][i];
                    }
                }
            }
            Some(center.iter().zip(&dir).map(|(&c, &d)| c + radius * d).collect())
        }),
    }
}

fn simplex_searches<'a, T: Scalar>(scale: T, n: usize, p: T) -> Vec<Search<'a, T>> {
    let step_scale = T::lit(2.0).powf(p.recip());
    (1..1usize << n)
        .map(|mask| {
            let support: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let k = support.len();
            Search {
                lo: vec![T::zero(); k - 1],
                hi: vec![scale; k - 1],
                step_scale,
                embed: Box::new(move |t: &[T]| {
                    let mut xi = vec![T::zero(); n];
                    let mut sum = T::zero();
                    for (&i, &ti) in support.iter().zip(t) {
                        xi[i] = ti;
                        sum = sum + ti;
                    }
                    let last = scale - sum;
                    if last < T::zero() {
                        return None;
                    }
                    xi[support[k - 1]] = last;
                    Some(xi)
                }),
            }
        })
        .collect()
}

type Objective<'a, T> = &'a dyn Fn(&[T], &[T]) -> T;

/// Grid search plus refinement. Returns the best point and the ambient step.
fn run_search<T: Scalar>(
    s: &Search<'_, T>,
    resolution: usize,
    reference: &[T],
    objective: Objective<'_, T>,
) -> Option<(Vec<T>, T)> {
    let m = s.lo.len();
    if m == 0 {
        return (s.embed)(&[]).map(|xi| (xi, T::zero()));
    }
    let intervals = T::from_usize(resolution - 1).unwrap();
    let mut step: Vec<T> = s.lo.iter().zip(&s.hi).map(|(&l, &h)| (h - l) / intervals).collect();
    let mut best = scan(s, &s.lo, &step, resolution, reference, objective)?;
    let half_steps = ((resolution - 1) / 2).max(MIN_HALF_WIDTH_STEPS);
    let count = 2 * half_steps + 1;
    for _ in 0..REFINE_ROUNDS {
        for h in step.iter_mut() {
            *h = *h / T::lit(REFINE_FACTOR);
        }
        let start: Vec<T> = best
            .0
            .iter()
            .zip(&step)
            .map(|(&c, &h)| c - h * T::from_usize(half_steps).unwrap())
            .collect();
        if let Some(b) = scan(s, &start, &step, count, &best.1, objective) {
            if objective(&b.1, &best.1) <= T::zero() {
                best = b;
            }
        }
    }
    let max_step = step.iter().fold(T::zero(), |a, &b| a.max(b));
    Some((best.1, max_step * s.step_scale))
}

/// Evaluates the tensor grid `start + k·step`, `k < count`, clipped to the
/// parameter box. Returns the best `(parameters, point)`; objective values are
/// compared against `reference`.
fn scan<T: Scalar>(
    s: &Search<'_, T>,
    start: &[T],
    step: &[T],
    count: usize,
    reference: &[T],
    objective: Objective<'_, T>,
) -> Option<(Vec<T>, Vec<T>)> {
    let m = start.len();
    let mut idx = vec![0usize; m];
    let mut best: Option<(T, Vec<T>, Vec<T>)> = None;
    let mut t = vec![T::zero(); m];
    let last = T::from_usize(count - 1).unwrap();
    loop {
        for j in 0..m {
            let at_end = idx[j] + 1 == count && start[j] + step[j] * last >= s.hi[j];
            let v = if at_end {
                s.hi[j]
            } else {
                start[j] + step[j] * T::from_usize(idx[j]).unwrap()
            };
            t[j] = v.max(s.lo[j]).min(s.hi[j]);
        }
        if let Some(xi) = (s.embed)(&t) {
            let val = objective(&xi, reference);
            if best.as_ref().is_none_or(|b| val < b.0) {
                best = Some((val, t.clone(), xi));
            }
        }
        let mut j = 0;
        loop {
            if j == m {
                return best.map(|b| (b.1, b.2));
            }
            idx[j] += 1;
            if idx[j] < count {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}
