use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{dot, l2_norm};
use crate::scalar::Scalar;

use super::linalg::orthonormalize;

/// Relative rank tolerance when orthonormalizing an affine basis.
pub const RANK_TOL: f64 = 1e-10;

/// A closed convex set of `R^n`.
///
/// JSON form carries a `"type"` discriminator, e.g.
/// `{"type":"halfspace","a":[1,0],"b":0.5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConvexSetSpec<T> {
    /// `<a, ξ> = b`
    Hyperplane { a: Vec<T>, b: T },
    /// `<a, ξ> ≤ b`
    Halfspace { a: Vec<T>, b: T },
    /// `lo ≤ ξ ≤ hi` coordinatewise.
    Box { lo: Vec<T>, hi: Vec<T> },
    /// Euclidean ball `||ξ - center||_2 ≤ radius`.
    #[serde(alias = "euclidean_ball")]
    Ball { center: Vec<T>, radius: T },
    /// `ξ ≥ 0, Σ ξ = scale`; the dimension comes from the space.
    Simplex { scale: T },
    /// `base + span(basis)`.
    #[serde(alias = "affine_subspace")]
    Affine { base: Vec<T>, basis: Vec<Vec<T>> },
}

/// Discriminant of [`ConvexSetSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Hyperplane,
    Halfspace,
    Box,
    Ball,
    Simplex,
    Affine,
}

impl SetKind {
    pub const ALL: [SetKind; 6] = [
        SetKind::Hyperplane,
        SetKind::Halfspace,
        SetKind::Box,
        SetKind::Ball,
        SetKind::Simplex,
        SetKind::Affine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Hyperplane => "hyperplane",
            SetKind::Halfspace => "halfspace",
            SetKind::Box => "box",
            SetKind::Ball => "ball",
            SetKind::Simplex => "simplex",
            SetKind::Affine => "affine",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl std::fmt::Display for SetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn malformed<R>(msg: impl Into<String>) -> Result<R> {
    Err(Error::MalformedSet(msg.into()))
}

fn check_len<T>(v: &[T], n: usize, what: &str) -> Result<()> {
    if v.len() != n {
        return malformed(format!("{what} has length {}, expected {n}", v.len()));
    }
    Ok(())
}

fn check_finite<T: Scalar>(v: &[T], what: &str) -> Result<()> {
    if v.iter().any(|t| !t.is_finite()) {
        return malformed(format!("{what} has non-finite entries"));
    }
    Ok(())
}

impl<T: Scalar> ConvexSetSpec<T> {
    pub fn kind(&self) -> SetKind {
        match self {
            Self::Hyperplane { .. } => SetKind::Hyperplane,
            Self::Halfspace { .. } => SetKind::Halfspace,
            Self::Box { .. } => SetKind::Box,
            Self::Ball { .. } => SetKind::Ball,
            Self::Simplex { .. } => SetKind::Simplex,
            Self::Affine { .. } => SetKind::Affine,
        }
    }

    /// Checks the set is well formed in dimension `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Self::Hyperplane { a, b } | Self::Halfspace { a, b } => {
                check_len(a, n, "a")?;
                check_finite(a, "a")?;
                if !b.is_finite() {
                    return malformed("b is not finite");
                }
                if a.iter().all(|t| *t == T::zero()) {
                    return malformed("normal vector a is zero");
                }
            }
            Self::Box { lo, hi } => {
                check_len(lo, n, "lo")?;
                check_len(hi, n, "hi")?;
                check_finite(lo, "lo")?;
                check_finite(hi, "hi")?;
                if lo.iter().zip(hi).any(|(l, h)| l > h) {
                    return malformed("box has lo > hi in some coordinate");
                }
            }
            Self::Ball { center, radius } => {
                check_len(center, n, "center")?;
                check_finite(center, "center")?;
                if !(*radius > T::zero() && radius.is_finite()) {
                    return malformed("ball radius must be positive");
                }
            }
            Self::Simplex { scale } => {
                if !(*scale > T::zero() && scale.is_finite()) {
                    return malformed("simplex scale must be positive");
                }
            }
            Self::Affine { base, basis } => {
                check_len(base, n, "base")?;
                check_finite(base, "base")?;
                for v in basis {
                    check_len(v, n, "basis vector")?;
                    check_finite(v, "basis vector")?;
                }
                if orthonormalize(basis).len() != basis.len() {
                    return malformed("affine basis is not linearly independent");
                }
            }
        }
        Ok(())
    }

    /// Distance-like feasibility violation of `x` (zero when `x` is in the set),
    /// measured in the natural Euclidean sense of each set.
    pub fn violation(&self, x: &[T]) -> T {
        let zero = T::zero();
        match self {
            Self::Hyperplane { a, b } => (dot(a, x) - *b).abs() / l2_norm(a),
            Self::Halfspace { a, b } => (dot(a, x) - *b).max(zero) / l2_norm(a),
            Self::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&t, (&l, &h))| (l - t).max(t - h).max(zero))
                .fold(zero, T::max),
            Self::Ball { center, radius } => {
                let d: Vec<T> = x.iter().zip(center).map(|(&u, &c)| u - c).collect();
                (l2_norm(&d) - *radius).max(zero)
            }
            Self::Simplex { scale } => {
                let neg = x.iter().fold(zero, |m, &t| m.max(-t));
                let s: T = x.iter().copied().sum();
                neg.max((s - *scale).abs())
            }
            Self::Affine { base, basis } => {
                let q = orthonormalize(basis);
                let r: Vec<T> = x.iter().zip(base).map(|(&u, &b)| u - b).collect();
                let mut resid = r.clone();
                for qv in &q {
                    let c = dot(qv, &r);
                    for (ri, &qi) in resid.iter_mut().zip(qv) {
                        *ri = *ri - c * qi;
                    }
                }
                l2_norm(&resid)
            }
        }
    }

    /// Membership with absolute tolerance scaled by `max(1, ||x||_inf)`.
    pub fn contains(&self, x: &[T], tol: T) -> bool {
        let scale = x.iter().fold(T::one(), |m, &t| m.max(t.abs()));
        self.violation(x) <= tol * scale
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Self::Box { .. } | Self::Ball { .. } | Self::Simplex { .. })
    }

    /// Short human-readable description for reports.
    pub fn describe(&self) -> String
    where
        T: Serialize,
    {
        serde_json::to_string(self).unwrap_or_else(|_| self.kind().to_string())
    }
}
