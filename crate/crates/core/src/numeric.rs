//! Small numerical kernels: bracketed inversion of monotone functions,
//! adaptive Simpson quadrature and log-log slope fitting.

use crate::scalar::Scalar;

/// Iteration cap for every bisection in the crate.
pub const BISECTION_MAX_ITER: usize = 200;
/// Absolute stopping width for bisection.
pub const BISECTION_ABS_TOL: f64 = 1e-12;

/// Result of inverting a monotone function on a bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion<T> {
    pub value: T,
    /// The target was at or beyond the value at the upper end of the bracket,
    /// so `value` was clamped to that end.
    pub saturated: bool,
}

/// Solves `f(x) = target` for nondecreasing `f` on `[lo, hi]` by bisection.
///
/// Targets at or below `f(lo)` return `lo`; targets at or above `f(hi)` return
/// `hi` flagged as saturated. Bisection stops when the bracket is narrower than
/// both [`BISECTION_ABS_TOL`] and a few ulps of the midpoint, so small roots are
/// resolved in relative terms too.
pub fn invert_nondecreasing<T, F>(f: F, target: T, lo: T, hi: T) -> Inversion<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if target <= f(lo) {
        return Inversion {
            value: lo,
            saturated: false,
        };
    }
    if target >= f(hi) {
        return Inversion {
            value: hi,
            saturated: true,
        };
    }
    let (mut a, mut b) = (lo, hi);
    let abs_tol = T::lit(BISECTION_ABS_TOL);
    let rel = T::epsilon() * T::lit(4.0);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = (a + b) / T::lit(2.0);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == target {
            return Inversion {
                value: mid,
                saturated: false,
            };
        }
        if fm < target {
            a = mid;
        } else {
            b = mid;
        }
        if b - a <= abs_tol.min(rel * b) {
            break;
        }
    }
    Inversion {
        value: (a + b) / T::lit(2.0),
        saturated: false,
    }
}

/// Finds the root of a decreasing function `g` on `[lo, hi]` with `g(lo) ≥ 0 ≥ g(hi)`.
pub(crate) fn root_decreasing<T, F>(g: F, lo: T, hi: T) -> T
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let (mut a, mut b) = (lo, hi);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = (a + b) / T::lit(2.0);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == T::zero() {
            return mid;
        }
        if gm > T::zero() {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a + b) / T::lit(2.0)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` with absolute error target `tol`.
pub fn adaptive_simpson<T, F>(f: F, a: T, b: T, tol: T) -> T
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if a == b {
        return T::zero();
    }
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) / T::lit(2.0);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 60)
}

fn simpson<T: Scalar>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<T, F>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let m = (a + b) / T::lit(2.0);
    let lm = (a + m) / T::lit(2.0);
    let rm = (m + b) / T::lit(2.0);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    let half = tol / T::lit(2.0);
    simpson_step(f, a, m, fa, flm, fm, left, half, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, half, depth - 1)
}

/// Least-squares line through `(x_i, y_i)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> LineFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    LineFit {
        slope,
        intercept,
        r_squared,
    }
}

/// `points` values geometrically spaced from `lo` to `hi` inclusive.
pub fn geometric_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_square() {
        let inv = invert_nondecreasing(|x: f64| x * x, 2.0, 0.0, 2.0);
        assert!(!inv.saturated);
        assert!((inv.value - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn saturates_and_floors() {
        let inv = invert_nondecreasing(|x: f64| x, 5.0, 0.0, 2.0);
        assert!(inv.saturated);
        assert_eq!(inv.value, 2.0);
        let inv = invert_nondecreasing(|x: f64| x, -1.0, 0.0, 2.0);
        assert!(!inv.saturated);
        assert_eq!(inv.value, 0.0);
    }

    #[test]
    fn tiny_roots_keep_relative_accuracy() {
        let inv = invert_nondecreasing(|x: f64| x.powi(4), 1e-40, 0.0, 2.0);
        assert!((inv.value / 1e-10 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simpson_polynomial_and_sqrt() {
        let v = adaptive_simpson(|x: f64| x * x, 0.0, 3.0, 1e-12);
        assert!((v - 9.0).abs() < 1e-12);
        let v = adaptive_simpson(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12);
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn line_fit_exact() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 * x - 1.0).collect();
        let fit = fit_line(&xs, &ys);
        assert!((fit.slope - 0.5).abs() < 1e-15);
        assert!((fit.intercept + 1.0).abs() < 1e-15);
        assert!((fit.r_squared - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_endpoints() {
        let g = geometric_grid(1e-4, 1e-2, 5);
        assert!((g[0] - 1e-4).abs() < 1e-18);
        assert!((g[4] - 1e-2).abs() < 1e-15);
        assert!((g[2] - 1e-3).abs() < 1e-16);
    }
}
