//! Log-log slope fits of the estimates as `d → 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::ModuliProfile;
use crate::numeric::{fit_line, geometric_grid};

use super::continuity::{estimate_rhs, EstimateInputs, EstimateKind};
use super::record::Constants;

/// Smallest accepted number of grid points.
pub const MIN_POINTS: usize = 5;
/// Default number of grid points of the order study.
pub const DEFAULT_POINTS: usize = 13;
/// Ratio `d_hi / d_lo` of the automatic window.
pub const WINDOW_DECADES: i32 = 3;
/// Range of decades `10^{-k}` searched for the automatic window.
const SEARCH_DECADES: std::ops::RangeInclusive<i32> = 0..=30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub d_lo: f64,
    pub d_hi: f64,
    pub points: usize,
}

/// Least-squares slope of `log f(d)` against `log d` on a geometric grid.
pub fn order_exponent<F: Fn(f64) -> f64>(evaluator: F, d_lo: f64, d_hi: f64, points: usize) -> Result<OrderFit> {
    if !(d_lo > 0.0 && d_lo < d_hi && d_hi.is_finite()) {
        return Err(Error::Domain {
            name: "d_lo",
            value: d_lo,
            domain: "0 < d_lo < d_hi",
        });
    }
    if points < MIN_POINTS {
        return Err(Error::Domain {
            name: "points",
            value: points as f64,
            domain: "points >= 5",
        });
    }
    let grid = geometric_grid(d_lo, d_hi, points);
    let mut ys = Vec::with_capacity(points);
    for &d in &grid {
        let v = evaluator(d);
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::Domain {
                name: "evaluator",
                value: v,
                domain: "positive on the grid",
            });
        }
        ys.push(v.ln());
    }
    let xs: Vec<f64> = grid.iter().map(|d| d.ln()).collect();
    let fit = fit_line(&xs, &ys);
    Ok(OrderFit {
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        d_lo,
        d_hi,
        points,
    })
}

/// Asymptotic order in `d` of an estimate: `2/p` or `p/2` for the
/// modulus-based estimates, `1/(p-1)` or `p-1` for the `g`-based one, and 1 for
/// the linear Hilbert form.
pub fn expected_slope(kind: EstimateKind, p: f64) -> f64 {
    match kind {
        EstimateKind::BjornestalB2 | EstimateKind::ZrB3 | EstimateKind::Thm31B14 | EstimateKind::Thm32B16 => {
            if p > 2.0 {
                2.0 / p
            } else {
                p / 2.0
            }
        }
        EstimateKind::JmapB4 => {
            if p > 2.0 {
                1.0 / (p - 1.0)
            } else {
                p - 1.0
            }
        }
        EstimateKind::HilbertRemark => 1.0,
    }
}

/// Estimate value at the unit geometry (`C = 2`) together with whether any
/// clamp or saturation was hit.
pub fn unit_geometry_value(
    kind: EstimateKind,
    profile: &ModuliProfile<f64>,
    dual: &ModuliProfile<f64>,
    consts: &Constants,
    d: f64,
) -> (f64, bool) {
    let e = estimate_rhs(kind, profile, dual, consts, &EstimateInputs::unit_geometry(d));
    (e.value, e.saturated || e.clamped)
}

/// Window `[d_hi / 10^3, d_hi]` where `d_hi` is one decade below the largest
/// power of ten at which the estimate is free of clamping and saturation, so
/// the whole grid sits in the asymptotic regime.
pub fn asymptotic_window(
    kind: EstimateKind,
    profile: &ModuliProfile<f64>,
    dual: &ModuliProfile<f64>,
    consts: &Constants,
) -> Result<(f64, f64)> {
    for k in SEARCH_DECADES {
        let d = 10f64.powi(-k);
        let (v, flagged) = unit_geometry_value(kind, profile, dual, consts, d);
        if !flagged && v > 0.0 {
            let hi = d / 10.0;
            return Ok((hi / 10f64.powi(WINDOW_DECADES), hi));
        }
    }
    Err(Error::Domain {
        name: "d",
        value: 10f64.powi(-SEARCH_DECADES.end()),
        domain: "estimate unsaturated somewhere above this distance",
    })
}

/// Slope of an estimate at the unit geometry over its asymptotic window.
pub fn estimator_slope(kind: EstimateKind, p: f64, consts: &Constants, points: usize) -> Result<OrderFit> {
    let profile = ModuliProfile::new(p)?;
    let dual = ModuliProfile::new(p / (p - 1.0))?;
    let (lo, hi) = asymptotic_window(kind, &profile, &dual, consts)?;
    order_exponent(
        |d| unit_geometry_value(kind, &profile, &dual, consts, d).0,
        lo,
        hi,
        points,
    )
}

/// Whether `f` is nondecreasing on the grid (up to `1e-12` relative).
pub fn is_nondecreasing<F: Fn(f64) -> f64>(f: F, grid: &[f64]) -> bool {
    grid.windows(2).all(|w| {
        let (a, b) = (f(w[0]), f(w[1]));
        b >= a - 1e-12 * a.abs().max(1e-300)
    })
}
