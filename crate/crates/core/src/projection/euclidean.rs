//! Exact Euclidean projections, used as the inner oracle of projected descent
//! and as the cheap infeasibility measure.

use crate::error::Result;
use crate::lp::{dot, l2_norm, Point};
use crate::scalar::Scalar;

use super::linalg::orthonormalize;
use super::sets::ConvexSetSpec;

/// Euclidean projection of `x` onto `set`.
pub fn euclidean_project<T: Scalar>(set: &ConvexSetSpec<T>, x: &Point<T>) -> Result<Point<T>> {
    set.validate(x.dim())?;
    Point::new(euclidean_project_raw(set, x.coords()))
}

pub(crate) fn euclidean_project_raw<T: Scalar>(set: &ConvexSetSpec<T>, x: &[T]) -> Vec<T> {
    match set {
        ConvexSetSpec::Box { lo, hi } => x
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(&t, (&l, &h))| t.max(l).min(h))
            .collect(),
        ConvexSetSpec::Hyperplane { a, b } => hyperplane(a, *b, x),
        ConvexSetSpec::Halfspace { a, b } => {
            if dot(a, x) <= *b {
                x.to_vec()
            } else {
                hyperplane(a, *b, x)
            }
        }
        ConvexSetSpec::Ball { center, radius } => {
            let d: Vec<T> = x.iter().zip(center).map(|(&u, &c)| u - c).collect();
            let n = l2_norm(&d);
            if n <= *radius {
                x.to_vec()
            } else {
                center.iter().zip(&d).map(|(&c, &di)| c + di * (*radius / n)).collect()
            }
        }
        ConvexSetSpec::Simplex { scale } => simplex(x, *scale),
        ConvexSetSpec::Affine { base, basis } => {
            let q = orthonormalize(basis);
            affine(base, &q, x)
        }
    }
}

fn hyperplane<T: Scalar>(a: &[T], b: T, x: &[T]) -> Vec<T> {
    let s = (dot(a, x) - b) / dot(a, a);
    x.iter().zip(a).map(|(&t, &ai)| t - s * ai).collect()
}

/// Sort-based projection onto `{ξ ≥ 0, Σξ = scale}`: `ξ_i = max(0, x_i - θ)`.
pub(crate) fn simplex<T: Scalar>(x: &[T], scale: T) -> Vec<T> {
    let theta = simplex_threshold(x, scale);
    x.iter().map(|&t| (t - theta).max(T::zero())).collect()
}

pub(crate) fn simplex_threshold<T: Scalar>(x: &[T], scale: T) -> T {
    let mut u = x.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite coordinates"));
    let mut cum = T::zero();
    let mut theta = (u[0] - scale) / T::one();
    for (k, &uk) in u.iter().enumerate() {
        cum = cum + uk;
        let t = (cum - scale) / T::from_usize(k + 1).unwrap();
        if uk - t > T::zero() {
            theta = t;
        }
    }
    theta
}

/// `base + Q Qᵀ (x - base)` for orthonormal rows `q`.
pub(crate) fn affine<T: Scalar>(base: &[T], q: &[Vec<T>], x: &[T]) -> Vec<T> {
    let r: Vec<T> = x.iter().zip(base).map(|(&u, &b)| u - b).collect();
    let mut out = base.to_vec();
    for qv in q {
        let c = dot(qv, &r);
        for (o, &qi) in out.iter_mut().zip(qv) {
            *o = *o + c * qi;
        }
    }
    out
}

/// Infeasibility of `x` measured as the `l^p` distance to its Euclidean projection.
pub fn infeasibility<T: Scalar>(set: &ConvexSetSpec<T>, x: &[T], p: T) -> T {
    let e = euclidean_project_raw(set, x);
    let d: Vec<T> = x.iter().zip(&e).map(|(&a, &b)| a - b).collect();
    crate::lp::lp_norm(&d, p)
}
