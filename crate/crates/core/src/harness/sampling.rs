//! Random points, pairs and convex sets for the Monte-Carlo suites.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::lp::{lp_norm, Point, SpaceSpec};
use crate::projection::{ConvexSetSpec, SetKind};
use crate::rng::{gaussian_vec, unit_vec, Rng};

/// Re-draw cap of [`sample_set`].
pub const MAX_SET_ATTEMPTS: usize = 100;
/// Range of the offset `b` of sampled hyperplanes and halfspaces.
pub const OFFSET_RANGE: (f64, f64) = (-5.0, 5.0);

fn check_radius(radius: f64) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Sampling(format!("radius must be positive, got {radius}")));
    }
    Ok(())
}

/// Uniform direction (normalized Gaussian) scaled by `radius·u^{1/n}`, so the
/// result lies in the `l^p` ball of the given radius.
pub fn sample_point(space: &SpaceSpec<f64>, radius: f64, rng: &mut Rng) -> Result<Point<f64>> {
    check_radius(radius)?;
    let n = space.dim();
    let dir: Vec<f64> = unit_vec(rng, n, space.p());
    let r = radius * rng.random::<f64>().powf(1.0 / n as f64);
    Point::new(dir.into_iter().map(|t| t * r).collect())
}

/// Two points of the radius ball, or, with `d_target`, a point of the ball and
/// a second point at exactly that distance along a random chord.
pub fn sample_pair(
    space: &SpaceSpec<f64>,
    radius: f64,
    d_target: Option<f64>,
    rng: &mut Rng,
) -> Result<(Point<f64>, Point<f64>)> {
    check_radius(radius)?;
    let x = sample_point(space, radius, rng)?;
    let Some(d) = d_target else {
        let y = sample_point(space, radius, rng)?;
        return Ok((x, y));
    };
    if !(d >= 0.0 && d <= 2.0 * radius) {
        return Err(Error::Sampling(format!("target distance {d} not in [0, 2·radius]")));
    }
    if d == 0.0 {
        return Ok((x.clone(), x));
    }
    let chord: Vec<f64> = unit_vec(rng, space.dim(), space.p());
    let y: Vec<f64> = x.coords().iter().zip(&chord).map(|(&a, &c)| a + d * c).collect();
    Ok((x, Point::new(y)?))
}

/// Minimal `l^p` norm of a point of `set`, or an upper bound on it given by a
/// known member.
fn min_norm_bound(set: &ConvexSetSpec<f64>, p: f64) -> f64 {
    let q = p / (p - 1.0);
    match set {
        ConvexSetSpec::Hyperplane { a, b } => b.abs() / lp_norm(a, q),
        ConvexSetSpec::Halfspace { a, b } => (-b).max(0.0) / lp_norm(a, q),
        ConvexSetSpec::Box { lo, hi } => {
            let v: Vec<f64> = lo.iter().zip(hi).map(|(&l, &h)| 0f64.max(l).min(h)).collect();
            lp_norm(&v, p)
        }
        ConvexSetSpec::Ball { center, .. } => lp_norm(center, p),
        ConvexSetSpec::Simplex { scale } => *scale,
        ConvexSetSpec::Affine { base, .. } => lp_norm(base, p),
    }
}

/// Random well-formed set of the given kind that meets the `l^p` ball of
/// radius `radius` (re-drawn up to [`MAX_SET_ATTEMPTS`] times).
///
/// * hyperplane / halfspace: `a` Gaussian normalized to `||a||_q = 1`, `b ∈ [-5, 5]`;
/// * box: centre in the ball, half-widths in `[0.1, 3]`;
/// * ball: centre in the ball, radius in `[0.5, 5]`;
/// * simplex: scale in `[0.5, 5]`;
/// * affine: base in the ball, `k ∈ [1, n-1]` Gaussian directions (`k = 0` for `n = 1`).
pub fn sample_set(kind: SetKind, space: &SpaceSpec<f64>, radius: f64, rng: &mut Rng) -> Result<ConvexSetSpec<f64>> {
    check_radius(radius)?;
    let n = space.dim();
    let p = space.p();
    for _ in 0..MAX_SET_ATTEMPTS {
        let set = match kind {
            SetKind::Hyperplane | SetKind::Halfspace => {
                let a: Vec<f64> = unit_vec(rng, n, space.q());
                let b = rng.random_range(OFFSET_RANGE.0..OFFSET_RANGE.1);
                if kind == SetKind::Hyperplane {
                    ConvexSetSpec::Hyperplane { a, b }
                } else {
                    ConvexSetSpec::Halfspace { a, b }
                }
            }
            SetKind::Box => {
                let c = sample_point(space, radius, rng)?;
                let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..3.0)).collect();
                ConvexSetSpec::Box {
                    lo: c.coords().iter().zip(&w).map(|(&ci, &wi)| ci - wi).collect(),
                    hi: c.coords().iter().zip(&w).map(|(&ci, &wi)| ci + wi).collect(),
                }
            }
            SetKind::Ball => ConvexSetSpec::Ball {
                center: sample_point(space, radius, rng)?.into_coords(),
                radius: rng.random_range(0.5..5.0),
            },
            SetKind::Simplex => ConvexSetSpec::Simplex {
                scale: rng.random_range(0.5..5.0),
            },
            SetKind::Affine => {
                let k = if n == 1 { 0 } else { rng.random_range(1..n) };
                ConvexSetSpec::Affine {
                    base: sample_point(space, radius, rng)?.into_coords(),
                    basis: (0..k).map(|_| gaussian_vec(rng, n)).collect(),
                }
            }
        };
        if set.validate(n).is_ok() && min_norm_bound(&set, p) <= radius {
            return Ok(set);
        }
    }
    Err(Error::Sampling(format!(
        "could not draw a {kind} meeting the sampling ball"
    )))
}
