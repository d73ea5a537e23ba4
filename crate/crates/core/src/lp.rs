//! Finite-dimensional `l^p` primitives: norms, the dual pairing with `l^q`,
//! and the normalized duality mapping `J`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{signed_pow, Scalar};

/// Smallest exponent accepted by [`SpaceSpec::new`].
pub const MIN_EXPONENT: f64 = 1.05;
/// Largest exponent accepted by [`SpaceSpec::new`].
pub const MAX_EXPONENT: f64 = 50.0;

/// The space `l^p` in dimension `n`, together with its dual exponent `q = p/(p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec<T> {
    n: usize,
    p: T,
    q: T,
}

impl<T: Scalar> SpaceSpec<T> {
    /// Builds `l^p` of dimension `n`. The exponent must lie in `[1.05, 50]`.
    pub fn new(n: usize, p: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let pf = p.as_f64();
        if !pf.is_finite() || !(MIN_EXPONENT..=MAX_EXPONENT).contains(&pf) {
            return Err(Error::ExponentOutOfRange(pf));
        }
        Ok(Self::unchecked(n, p))
    }

    fn unchecked(n: usize, p: T) -> Self {
        let q = p / (p - T::one());
        Self { n, p, q }
    }

    /// The dual space `l^q`. Its exponent may fall outside the range accepted by
    /// [`SpaceSpec::new`] (e.g. `p = 50` gives `q ≈ 1.02`); that is allowed here.
    pub fn dual(&self) -> Self {
        Self {
            n: self.n,
            p: self.q,
            q: self.p,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }

    pub fn is_hilbert(&self) -> bool {
        self.p == T::lit(2.0)
    }

    fn check(&self, v: &[T]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        if v.iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// `(Σ|v_i|^p)^{1/p}`.
    pub fn norm(&self, v: &Point<T>) -> Result<T> {
        self.check(v.coords())?;
        Ok(lp_norm(v.coords(), self.p))
    }

    /// `(Σ|w_i|^q)^{1/q}`, the norm of `l^q = (l^p)*`.
    pub fn dual_norm(&self, w: &DualPoint<T>) -> Result<T> {
        self.check(w.coords())?;
        Ok(lp_norm(w.coords(), self.q))
    }

    /// `(Jv)_i = ||v||^{2-p} |v_i|^{p-1} sign(v_i)`, with `J0 = 0`.
    pub fn duality_map(&self, v: &Point<T>) -> Result<DualPoint<T>> {
        self.check(v.coords())?;
        Ok(DualPoint(duality_map_raw(v.coords(), self.p)))
    }

    /// `<Jx - Jy, x - y>`; nonnegative by monotonicity of `J`.
    pub fn duality_product(&self, x: &Point<T>, y: &Point<T>) -> Result<T> {
        self.check(x.coords())?;
        self.check(y.coords())?;
        let jx = duality_map_raw(x.coords(), self.p);
        let jy = duality_map_raw(y.coords(), self.p);
        Ok(jx
            .iter()
            .zip(&jy)
            .zip(x.coords().iter().zip(y.coords()))
            .map(|((&a, &b), (&u, &v))| (a - b) * (u - v))
            .sum())
    }
}

/// `l^p` norm of a raw slice, scaled by the largest magnitude to avoid overflow
/// for large exponents.
pub fn lp_norm<T: Scalar>(v: &[T], p: T) -> T {
    let m = v.iter().fold(T::zero(), |acc, t| acc.max(t.abs()));
    if m == T::zero() {
        return T::zero();
    }
    let s: T = v.iter().map(|t| (t.abs() / m).powf(p)).sum();
    m * s.powf(p.recip())
}

/// `Σ|v_i|^p`, unscaled.
pub fn lp_norm_pow<T: Scalar>(v: &[T], p: T) -> T {
    v.iter().map(|t| t.abs().powf(p)).sum()
}

/// Euclidean norm of a raw slice.
pub fn l2_norm<T: Scalar>(v: &[T]) -> T {
    lp_norm(v, T::lit(2.0))
}

/// Duality map on a raw slice; see [`SpaceSpec::duality_map`].
pub fn duality_map_raw<T: Scalar>(v: &[T], p: T) -> Vec<T> {
    let norm = lp_norm(v, p);
    if norm == T::zero() {
        return vec![T::zero(); v.len()];
    }
    // ||v|| * (|v_i|/||v||)^{p-1} sign(v_i) keeps every intermediate bounded.
    let e = p - T::one();
    v.iter().map(|&t| norm * signed_pow(t / norm, e)).collect()
}

/// `Σ w_i v_i`.
pub fn pairing<T: Scalar>(w: &DualPoint<T>, v: &Point<T>) -> Result<T> {
    if w.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: w.dim(),
            got: v.dim(),
        });
    }
    Ok(dot(w.coords(), v.coords()))
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub(crate) fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub(crate) fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

pub(crate) fn scale<T: Scalar>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

macro_rules! coord_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name<T>(Vec<T>);

        impl<T: Scalar> $name<T> {
            /// Wraps coordinates, rejecting non-finite entries.
            pub fn new(coords: Vec<T>) -> Result<Self> {
                if coords.iter().any(|t| !t.is_finite()) {
                    return Err(Error::NonFinite);
                }
                Ok(Self(coords))
            }

            pub fn zeros(n: usize) -> Self {
                Self(vec![T::zero(); n])
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn coords(&self) -> &[T] {
                &self.0
            }

            pub fn into_coords(self) -> Vec<T> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|t| *t == T::zero())
            }

            pub fn scaled(&self, s: T) -> Self {
                Self(scale(&self.0, s))
            }
        }

        impl<T: Scalar> std::ops::Sub for &$name<T> {
            type Output = $name<T>;
            fn sub(self, rhs: Self) -> $name<T> {
                $name(sub(&self.0, &rhs.0))
            }
        }

        impl<T: Scalar> std::ops::Add for &$name<T> {
            type Output = $name<T>;
            fn add(self, rhs: Self) -> $name<T> {
                $name(add(&self.0, &rhs.0))
            }
        }

        impl<T: Scalar> std::ops::Index<usize> for $name<T> {
            type Output = T;
            fn index(&self, i: usize) -> &T {
                &self.0[i]
            }
        }

        impl<T> From<$name<T>> for Vec<T> {
            fn from(v: $name<T>) -> Vec<T> {
                v.0
            }
        }
    };
}

coord_vector!(Point, "A point of `l^p`.");
coord_vector!(DualPoint, "A point of the dual space `l^q`.");

impl<T: Scalar> Point<T> {
    /// Builds a point from `f64` literals (test and CLI convenience).
    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| T::lit(c)).collect())
    }
}

impl<T: Scalar> DualPoint<T> {
    pub fn from_f64(coords: &[f64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| T::lit(c)).collect())
    }
}
