//! Sampled check of the variational characterization
//! `<J(x - x̄), x̄ - ξ> ≥ 0` for all feasible `ξ`.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::lp::{dot, duality_map_raw, lp_norm, Point, SpaceSpec};
use crate::rng::{self, gaussian_vec, Rng};
use crate::scalar::Scalar;

use super::euclidean::euclidean_project_raw;
use super::linalg::{complement_basis, orthonormalize};
use super::sets::ConvexSetSpec;
use super::solver::FEASIBILITY_TOL;

/// Largest dimension for which all box corners are enumerated.
const MAX_CORNER_DIM: usize = 12;

/// Minimum of `<J(x - x̄), x̄ - ξ>` over `nsamples` random feasible `ξ` plus the
/// set's enumerable extreme points (box corners, simplex vertices, ball poles).
/// A correct projection gives a value of at least `-tol·max(1, ||x - x̄||²)`.
pub fn certificate_residual<T: Scalar>(
    space: &SpaceSpec<T>,
    set: &ConvexSetSpec<T>,
    x: &Point<T>,
    xbar: &Point<T>,
    nsamples: usize,
    seed: u64,
) -> Result<T> {
    set.validate(space.dim())?;
    for v in [x, xbar] {
        if v.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: v.dim(),
            });
        }
    }
    if !set.contains(xbar.coords(), T::lit(FEASIBILITY_TOL)) {
        return Err(Error::Infeasible(set.violation(xbar.coords()).as_f64()));
    }
    let p = space.p();
    let r: Vec<T> = x.coords().iter().zip(xbar.coords()).map(|(&a, &b)| a - b).collect();
    let w = duality_map_raw(&r, p);
    let value = |xi: &[T]| -> T {
        let d: Vec<T> = xbar.coords().iter().zip(xi).map(|(&a, &b)| a - b).collect();
        dot(&w, &d)
    };
    let window = T::one().max(lp_norm(&r, p)) * T::lit(2.0);
    let mut best = T::zero();
    for xi in extreme_points(set, space.dim()) {
        best = best.min(value(&xi));
    }
    for i in 0..nsamples {
        let mut g = rng::stream(seed, i as u64);
        let xi = sample_feasible(set, xbar.coords(), window, &mut g);
        best = best.min(value(&xi));
    }
    Ok(best)
}

/// Enumerable extreme points of bounded sets.
pub fn extreme_points<T: Scalar>(set: &ConvexSetSpec<T>, n: usize) -> Vec<Vec<T>> {
    match set {
        ConvexSetSpec::Box { lo, hi } if n <= MAX_CORNER_DIM => (0..1usize << n)
            .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] }).collect())
            .collect(),
        ConvexSetSpec::Simplex { scale } => (0..n)
            .map(|i| {
                let mut v = vec![T::zero(); n];
                v[i] = *scale;
                v
            })
            .collect(),
        ConvexSetSpec::Ball { center, radius } => (0..2 * n)
            .map(|k| {
                let mut v = center.clone();
                let s = if k % 2 == 0 { *radius } else { -*radius };
                v[k / 2] = v[k / 2] + s;
                v
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// A random feasible point. Unbounded sets are sampled in a Euclidean window of
/// radius `window` around `anchor`, which must itself be feasible.
pub fn sample_feasible<T: Scalar>(set: &ConvexSetSpec<T>, anchor: &[T], window: T, g: &mut Rng) -> Vec<T> {
    let n = anchor.len();
    let u = |g: &mut Rng| T::lit(g.random::<f64>());
    match set {
        ConvexSetSpec::Box { lo, hi } => lo.iter().zip(hi).map(|(&l, &h)| l + (h - l) * u(g)).collect(),
        ConvexSetSpec::Ball { center, radius } => {
            let dir: Vec<T> = gaussian_vec(g, n);
            let dn = crate::lp::l2_norm(&dir);
            let rad = *radius * u(g).powf(T::from_usize(n).unwrap().recip());
            center.iter().zip(&dir).map(|(&c, &d)| c + d / dn * rad).collect()
        }
        ConvexSetSpec::Simplex { scale } => {
            let e: Vec<T> = (0..n).map(|_| -(T::one() - u(g)).ln()).collect();
            let s: T = e.iter().copied().sum();
            e.into_iter().map(|t| t / s * *scale).collect()
        }
        ConvexSetSpec::Hyperplane { a, .. } => {
            let basis = complement_basis(std::slice::from_ref(a), n);
            along(anchor, &basis, window, g)
        }
        ConvexSetSpec::Affine { basis, .. } => along(anchor, &orthonormalize(basis), window, g),
        ConvexSetSpec::Halfspace { .. } => {
            let dir: Vec<T> = gaussian_vec(g, n);
            let dn = crate::lp::l2_norm(&dir);
            let rad = window * u(g);
            let cand: Vec<T> = anchor.iter().zip(&dir).map(|(&c, &d)| c + d / dn * rad).collect();
            euclidean_project_raw(set, &cand)
        }
    }
}

fn along<T: Scalar>(anchor: &[T], basis: &[Vec<T>], window: T, g: &mut Rng) -> Vec<T> {
    let mut out = anchor.to_vec();
    if basis.is_empty() {
        return out;
    }
    let coef: Vec<T> = gaussian_vec(g, basis.len());
    let cn = crate::lp::l2_norm(&coef);
    let rad = window * T::lit(g.random::<f64>());
    for (b, &c) in basis.iter().zip(&coef) {
        for (o, &bi) in out.iter_mut().zip(b) {
            *o = *o + bi * c / cn * rad;
        }
    }
    out
}
