//! Estimates for the duality mapping: two upper bounds on `<Jx - Jy, x - y>`,
//! the upper parallelogram inequality, the modulus of continuity of `J`, and the
//! lower bound on `<Jx - Jy, x - y>` through the dual modulus of convexity.
//!
//! The true moduli are replaced by the computable bounds of
//! [`ModuliProfile`]: `ρ̄ ≥ ρ` on the right of upper estimates and `δ̱ ≤ δ` on the
//! right of the lower estimate, so every check is a necessary condition.

use crate::error::{Error, Result};
use crate::lp::{duality_map_raw, lp_norm, Point, SpaceSpec};
use crate::moduli::ModuliProfile;
use crate::scalar::Scalar;

use super::record::{constants_map, BoundCheckRecord, BoundKind, Constants};

/// Which upper bound on `<Jx - Jy, x - y>` to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualityUpper {
    Thm21,
    Thm22,
}

struct Pair<T> {
    d: T,
    nx: T,
    ny: T,
    product: T,
    jdiff_dual: T,
}

fn pair<T: Scalar>(space: &SpaceSpec<T>, x: &Point<T>, y: &Point<T>) -> Result<Pair<T>> {
    for v in [x, y] {
        if v.dim() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: v.dim(),
            });
        }
    }
    let p = space.p();
    let jx = duality_map_raw(x.coords(), p);
    let jy = duality_map_raw(y.coords(), p);
    let jd: Vec<T> = jx.iter().zip(&jy).map(|(&a, &b)| a - b).collect();
    let diff: Vec<T> = x.coords().iter().zip(y.coords()).map(|(&a, &b)| a - b).collect();
    Ok(Pair {
        d: lp_norm(&diff, p),
        nx: lp_norm(x.coords(), p),
        ny: lp_norm(y.coords(), p),
        product: jd.iter().zip(&diff).map(|(&a, &b)| a * b).sum(),
        jdiff_dual: lp_norm(&jd, space.q()),
    })
}

/// `C = 2 max{1, √((||x||² + ||y||²)/2)}`.
pub fn thm22_constant<T: Scalar>(nx: T, ny: T) -> T {
    let two = T::lit(2.0);
    two * T::one().max(((nx * nx + ny * ny) / two).sqrt())
}

/// Upper bound on `<Jx - Jy, x - y>`.
pub fn duality_upper_check<T: Scalar>(
    kind: DualityUpper,
    space: &SpaceSpec<T>,
    profile: &ModuliProfile<T>,
    consts: &Constants,
    x: &Point<T>,
    y: &Point<T>,
) -> Result<BoundCheckRecord> {
    let s = pair(space, x, y)?;
    let l = T::lit(consts.figiel_l);
    let rec = match kind {
        DualityUpper::Thm21 => {
            let c = T::lit(4.0) * (T::lit(2.0) * l).max(s.nx + s.ny);
            let rho = profile.rho_upper_detail(s.d);
            let rhs = T::lit(8.0) * s.d * s.d + c * rho.value;
            BoundCheckRecord::new(
                BoundKind::Thm21,
                s.product.as_f64(),
                rhs.as_f64(),
                constants_map([("C", c.as_f64()), ("L", consts.figiel_l)]),
            )
            .clamped(rho.clamped)
        }
        DualityUpper::Thm22 => {
            let c = thm22_constant(s.nx, s.ny);
            let rho = profile.rho_upper_detail(T::lit(8.0) * c * l * s.d);
            let rhs = rho.value / (T::lit(2.0) * l);
            BoundCheckRecord::new(
                BoundKind::Thm22,
                s.product.as_f64(),
                rhs.as_f64(),
                constants_map([("C", c.as_f64()), ("L", consts.figiel_l)]),
            )
            .clamped(rho.clamped)
        }
    };
    Ok(rec)
}

/// Upper parallelogram inequality with the minus sign on `||x + y||²`:
/// `2||x||² + 2||y||² - ||x + y||² ≤ 4||x - y||² + 2 max{2L, ||x|| + ||y||} ρ(||x - y||)`.
pub fn parallelogram_upper_check<T: Scalar>(
    space: &SpaceSpec<T>,
    profile: &ModuliProfile<T>,
    consts: &Constants,
    x: &Point<T>,
    y: &Point<T>,
) -> Result<BoundCheckRecord> {
    let s = pair(space, x, y)?;
    let two = T::lit(2.0);
    let l = T::lit(consts.figiel_l);
    let sum: Vec<T> = x.coords().iter().zip(y.coords()).map(|(&a, &b)| a + b).collect();
    let ns = lp_norm(&sum, space.p());
    let lhs = two * s.nx * s.nx + two * s.ny * s.ny - ns * ns;
    let k = (two * l).max(s.nx + s.ny);
    let rho = profile.rho_upper_detail(s.d);
    let rhs = T::lit(4.0) * s.d * s.d + two * k * rho.value;
    Ok(BoundCheckRecord::new(
        BoundKind::Parallelogram,
        lhs.as_f64(),
        rhs.as_f64(),
        constants_map([("K", k.as_f64()), ("L", consts.figiel_l)]),
    )
    .clamped(rho.clamped))
}

/// `||Jx - Jy||_* ≤ 4C h(8CL||x - y||)` with the constant of [`thm22_constant`];
/// both sides are 0 when `x = y`.
pub fn jmap_modulus_check<T: Scalar>(
    space: &SpaceSpec<T>,
    profile: &ModuliProfile<T>,
    consts: &Constants,
    x: &Point<T>,
    y: &Point<T>,
) -> Result<BoundCheckRecord> {
    let s = pair(space, x, y)?;
    let l = T::lit(consts.figiel_l);
    let c = thm22_constant(s.nx, s.ny);
    let tau = T::lit(8.0) * c * l * s.d;
    let (h, clamped) = if tau > T::zero() {
        let rho = profile.rho_upper_detail(tau);
        (rho.value / tau, rho.clamped)
    } else {
        (T::zero(), false)
    };
    let rhs = T::lit(4.0) * c * h;
    Ok(BoundCheckRecord::new(
        BoundKind::P1,
        s.jdiff_dual.as_f64(),
        rhs.as_f64(),
        constants_map([("C", c.as_f64()), ("L", consts.figiel_l)]),
    )
    .clamped(clamped))
}

/// `<Jx - Jy, x - y> ≥ (2L)^{-1} δ_*(||Jx - Jy||_* / C)` with `δ_*` the
/// convexity bound of the dual space and `C` of [`thm22_constant`]. The
/// argument of `δ_*` is clamped to `[0, 2]` (flagged as saturation). The record
/// is stored in `lhs ≤ rhs` orientation, i.e. `lhs` is the lower bound.
pub fn duality_lower_check<T: Scalar>(
    space: &SpaceSpec<T>,
    profile_dual: &ModuliProfile<T>,
    consts: &Constants,
    x: &Point<T>,
    y: &Point<T>,
) -> Result<BoundCheckRecord> {
    let s = pair(space, x, y)?;
    let l = T::lit(consts.figiel_l);
    let c = thm22_constant(s.nx, s.ny);
    let arg = s.jdiff_dual / c;
    let two = T::lit(2.0);
    let saturated = arg > two;
    let bound = profile_dual.delta_lower(arg.min(two))? / (two * l);
    Ok(BoundCheckRecord::new(
        BoundKind::A7,
        bound.as_f64(),
        s.product.as_f64(),
        constants_map([("C", c.as_f64()), ("L", consts.figiel_l)]),
    )
    .saturated(saturated))
}
