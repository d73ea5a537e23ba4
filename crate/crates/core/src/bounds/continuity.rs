//! Continuity estimates for the metric projection, `||P x - P y|| ≤ RHS(d)`
//! with `d = ||x - y||`, and the monotonicity of `x ↦ J(x - P x)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{duality_map_raw, l2_norm, lp_norm, Point, SpaceSpec};
use crate::moduli::ModuliProfile;
use crate::projection::{project, rounding_shift, ConvexSetSpec, ProjectionResult};
use crate::scalar::Scalar;

use super::record::{constants_map, passes, BoundCheckRecord, BoundKind, Constants};

/// Tolerances of the local regime of the Bjornestal estimate:
/// `| ||x - x̄|| - 1 | ≤ 0.05`, same for `y`, and `d ≤ 0.1`.
pub const B2_UNIT_DISTANCE_TOL: f64 = 0.05;
pub const B2_MAX_DISTANCE: f64 = 0.1;

/// The projection continuity estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateKind {
    /// `2 δ^{-1}(2 ρ(6d))`, local, for linear subspaces.
    BjornestalB2,
    /// `d + 4 C₁ δ^{-1}(N ψ(d / C₁))`, `C₁ = max{||x - ȳ||, ||x̄ - y||}`.
    ZrB3,
    /// `C g^{-1}(N C g_*^{-1}(N d))`, `N = 2LC`.
    JmapB4,
    /// `C δ^{-1}(2 L C₁ ρ(d))`, `C₁ = 16 + 24 max{L, ||x - ȳ||, ||y - x̄||}`.
    Thm31B14,
    /// `C δ^{-1}(ρ(8 L C d))`.
    Thm32B16,
    /// `16 L C² d`.
    HilbertRemark,
}

impl EstimateKind {
    pub const ALL: [EstimateKind; 6] = [
        EstimateKind::BjornestalB2,
        EstimateKind::ZrB3,
        EstimateKind::JmapB4,
        EstimateKind::Thm31B14,
        EstimateKind::Thm32B16,
        EstimateKind::HilbertRemark,
    ];

    pub fn bound_kind(self) -> BoundKind {
        match self {
            EstimateKind::BjornestalB2 => BoundKind::BjornestalB2,
            EstimateKind::ZrB3 => BoundKind::ZrB3,
            EstimateKind::JmapB4 => BoundKind::JmapB4,
            EstimateKind::Thm31B14 => BoundKind::Thm31B14,
            EstimateKind::Thm32B16 => BoundKind::Thm32B16,
            EstimateKind::HilbertRemark => BoundKind::HilbertRemark,
        }
    }

    pub fn name(self) -> &'static str {
        self.bound_kind().name()
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl std::fmt::Display for EstimateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The distances every estimate depends on. Constructing these directly makes
/// it possible to evaluate an estimate at a fixed geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateInputs<T> {
    /// `||x - y||`
    pub d: T,
    /// `||x - ȳ||`
    pub x_to_ybar: T,
    /// `||y - x̄||`
    pub y_to_xbar: T,
    /// `||x - x̄||`
    pub x_to_xbar: T,
    /// `||y - ȳ||`
    pub y_to_ybar: T,
}

impl<T: Scalar> EstimateInputs<T> {
    pub fn from_points(
        space: &SpaceSpec<T>,
        x: &Point<T>,
        y: &Point<T>,
        xbar: &Point<T>,
        ybar: &Point<T>,
    ) -> Result<Self> {
        for v in [x, y, xbar, ybar] {
            if v.dim() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    got: v.dim(),
                });
            }
        }
        let dist = |a: &Point<T>, b: &Point<T>| {
            let v: Vec<T> = a.coords().iter().zip(b.coords()).map(|(&s, &t)| s - t).collect();
            lp_norm(&v, space.p())
        };
        Ok(Self {
            d: dist(x, y),
            x_to_ybar: dist(x, ybar),
            y_to_xbar: dist(y, xbar),
            x_to_xbar: dist(x, xbar),
            y_to_ybar: dist(y, ybar),
        })
    }

    /// Geometry with `||x - ȳ|| = ||y - x̄|| = ||x - x̄|| = ||y - ȳ|| = 1`, so
    /// that `C = 2` in every estimate.
    pub fn unit_geometry(d: T) -> Self {
        Self {
            d,
            x_to_ybar: T::one(),
            y_to_xbar: T::one(),
            x_to_xbar: T::one(),
            y_to_ybar: T::one(),
        }
    }

    /// Whether the local regime of the Bjornestal estimate applies.
    pub fn b2_local(&self) -> bool {
        let tol = T::lit(B2_UNIT_DISTANCE_TOL);
        (self.x_to_xbar - T::one()).abs() <= tol
            && (self.y_to_ybar - T::one()).abs() <= tol
            && self.d <= T::lit(B2_MAX_DISTANCE)
    }
}

/// Value of an estimate with the constants it used.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub constants: BTreeMap<String, f64>,
    /// An inverse modulus was clamped at `ε = 2`.
    pub saturated: bool,
    /// The `ρ(τ) ≤ τ` clamp was active.
    pub clamped: bool,
    /// For the Bjornestal estimate: whether its local regime applies.
    pub local_ok: Option<bool>,
}

/// `C = 2 max{1, ||x - ȳ||, ||y - x̄||}`.
pub fn projection_constant<T: Scalar>(inputs: &EstimateInputs<T>) -> T {
    T::lit(2.0) * T::one().max(inputs.x_to_ybar).max(inputs.y_to_xbar)
}

/// Evaluates one estimate from the distances alone. `profile` is the profile of
/// the space and `dual` that of its dual.
pub fn estimate_rhs<T: Scalar>(
    kind: EstimateKind,
    profile: &ModuliProfile<T>,
    dual: &ModuliProfile<T>,
    consts: &Constants,
    inputs: &EstimateInputs<T>,
) -> Estimate<T> {
    let d = inputs.d;
    let l = T::lit(consts.figiel_l);
    let two = T::lit(2.0);
    let c = projection_constant(inputs);
    let mut est = Estimate {
        value: T::zero(),
        constants: BTreeMap::new(),
        saturated: false,
        clamped: false,
        local_ok: None,
    };
    match kind {
        EstimateKind::BjornestalB2 => {
            let rho = profile.rho_upper_detail(T::lit(6.0) * d);
            let inv = profile.delta_inverse_raw(two * rho.value);
            est.value = two * inv.value;
            est.saturated = inv.saturated;
            est.clamped = rho.clamped;
            est.local_ok = Some(inputs.b2_local());
        }
        EstimateKind::ZrB3 => {
            let c1 = inputs.x_to_ybar.max(inputs.y_to_xbar);
            let n = T::lit(consts.n_zr);
            est.value = d;
            if c1 > T::zero() && d > T::zero() {
                let psi = profile.psi(d / c1).expect("nonnegative argument");
                let inv = profile.delta_inverse_raw(n * psi);
                est.value = d + T::lit(4.0) * c1 * inv.value;
                est.saturated = inv.saturated;
                est.clamped = d / c1 > profile.rho_clamp_threshold();
            }
            est.constants = constants_map([("C1", c1.as_f64()), ("N", consts.n_zr)]);
        }
        EstimateKind::JmapB4 => {
            let n = two * l * c;
            let inner = dual.g_inverse_raw(n * d);
            let outer = profile.g_inverse_raw(n * c * inner.value);
            est.value = c * outer.value;
            est.saturated = inner.saturated || outer.saturated;
            est.constants = constants_map([("C", c.as_f64()), ("N", n.as_f64())]);
        }
        EstimateKind::Thm31B14 => {
            let c1 = T::lit(16.0) + T::lit(24.0) * l.max(inputs.x_to_ybar).max(inputs.y_to_xbar);
            let rho = profile.rho_upper_detail(d);
            let inv = profile.delta_inverse_raw(two * l * c1 * rho.value);
            est.value = c * inv.value;
            est.saturated = inv.saturated;
            est.clamped = rho.clamped;
            est.constants = constants_map([("C", c.as_f64()), ("C1", c1.as_f64())]);
        }
        EstimateKind::Thm32B16 => {
            let rho = profile.rho_upper_detail(T::lit(8.0) * l * c * d);
            let inv = profile.delta_inverse_raw(rho.value);
            est.value = c * inv.value;
            est.saturated = inv.saturated;
            est.clamped = rho.clamped;
            est.constants = constants_map([("C", c.as_f64())]);
        }
        EstimateKind::HilbertRemark => {
            est.value = T::lit(16.0) * l * c * c * d;
            est.constants = constants_map([("C", c.as_f64())]);
        }
    }
    est.constants.insert("L".into(), consts.figiel_l);
    est
}

/// Evaluates one estimate from points and their projections.
#[allow(clippy::too_many_arguments)]
pub fn projection_estimate_rhs<T: Scalar>(
    kind: EstimateKind,
    space: &SpaceSpec<T>,
    profile: &ModuliProfile<T>,
    consts: &Constants,
    x: &Point<T>,
    y: &Point<T>,
    xbar: &Point<T>,
    ybar: &Point<T>,
) -> Result<Estimate<T>> {
    let inputs = EstimateInputs::from_points(space, x, y, xbar, ybar)?;
    let dual = ModuliProfile::new(space.q())?;
    Ok(estimate_rhs(kind, profile, &dual, consts, &inputs))
}

/// Whether a failure of `kind` counts as a violation: the two theorems always,
/// the Hilbert form only for `p = 2`, the Bjornestal estimate only in its local
/// regime, and the third-party estimates never.
pub fn is_asserted<T: Scalar>(kind: EstimateKind, space: &SpaceSpec<T>, est: &Estimate<T>) -> bool {
    match kind {
        EstimateKind::Thm31B14 | EstimateKind::Thm32B16 => true,
        EstimateKind::HilbertRemark => space.is_hilbert(),
        EstimateKind::BjornestalB2 => est.local_ok == Some(true),
        EstimateKind::ZrB3 | EstimateKind::JmapB4 => false,
    }
}

/// Records for already computed projections.
#[allow(clippy::too_many_arguments)]
pub fn projection_records<T: Scalar>(
    space: &SpaceSpec<T>,
    profile: &ModuliProfile<T>,
    consts: &Constants,
    x: &Point<T>,
    y: &Point<T>,
    xbar: &Point<T>,
    ybar: &Point<T>,
    kinds: &[EstimateKind],
) -> Result<Vec<BoundCheckRecord>> {
    let inputs = EstimateInputs::from_points(space, x, y, xbar, ybar)?;
    let dual = ModuliProfile::new(space.q())?;
    let diff: Vec<T> = xbar.coords().iter().zip(ybar.coords()).map(|(&a, &b)| a - b).collect();
    let lhs = lp_norm(&diff, space.p()).as_f64();
    Ok(kinds
        .iter()
        .map(|&kind| {
            let est = estimate_rhs(kind, profile, &dual, consts, &inputs);
            let asserted = is_asserted(kind, space, &est);
            let mut constants = est.constants.clone();
            if let Some(ok) = est.local_ok {
                constants.insert("local".into(), if ok { 1.0 } else { 0.0 });
            }
            BoundCheckRecord::new(kind.bound_kind(), lhs, est.value.as_f64(), constants)
                .saturated(est.saturated)
                .clamped(est.clamped)
                .asserted(asserted)
        })
        .collect())
}

fn converged<T: Scalar>(r: ProjectionResult<T>) -> Result<ProjectionResult<T>> {
    if r.converged {
        Ok(r)
    } else {
        Err(Error::NotConverged)
    }
}

/// Projects `x` and `y` onto `set` and checks `||P x - P y|| ≤ RHS` for each
/// requested estimate.
#[allow(clippy::too_many_arguments)]
pub fn projection_bound_check<T: Scalar>(
    space: &SpaceSpec<T>,
    profile: &ModuliProfile<T>,
    consts: &Constants,
    set: &ConvexSetSpec<T>,
    x: &Point<T>,
    y: &Point<T>,
    kinds: &[EstimateKind],
    tol: T,
) -> Result<Vec<BoundCheckRecord>> {
    let px = converged(project(space, set, x, tol)?)?;
    let py = converged(project(space, set, y, tol)?)?;
    projection_records(space, profile, consts, x, y, &px.argmin, &py.argmin, kinds)
}

/// `<J(x - x̄) - J(y - ȳ), x - y> ≥ 0` for given projections. The record has
/// `lhs = 0` and `rhs` equal to the pairing; it passes when the pairing is at
/// least `-1e-9·max(1, (||x - x̄|| + ||y - ȳ||)·||x - y||)` minus the rounding
/// floor `(s_x + s_y)·||x - y||_2`, with `s` from [`rounding_shift`].
pub fn monotone_projection_record<T: Scalar>(
    space: &SpaceSpec<T>,
    x: &Point<T>,
    y: &Point<T>,
    xbar: &Point<T>,
    ybar: &Point<T>,
) -> Result<BoundCheckRecord> {
    let inputs = EstimateInputs::from_points(space, x, y, xbar, ybar)?;
    let p = space.p();
    let rx: Vec<T> = x.coords().iter().zip(xbar.coords()).map(|(&a, &b)| a - b).collect();
    let ry: Vec<T> = y.coords().iter().zip(ybar.coords()).map(|(&a, &b)| a - b).collect();
    let jx = duality_map_raw(&rx, p);
    let jy = duality_map_raw(&ry, p);
    let pairing: T = jx
        .iter()
        .zip(&jy)
        .zip(x.coords().iter().zip(y.coords()))
        .map(|((&a, &b), (&u, &v))| (a - b) * (u - v))
        .sum();
    let scale = ((inputs.x_to_xbar + inputs.y_to_ybar) * inputs.d).as_f64().max(1.0);
    let diff: Vec<T> = x.coords().iter().zip(y.coords()).map(|(&a, &b)| a - b).collect();
    let shift = rounding_shift(p, x.coords(), xbar.coords()) + rounding_shift(p, y.coords(), ybar.coords());
    let floor = (shift * l2_norm(&diff)).as_f64();
    let mut rec = BoundCheckRecord::new(
        BoundKind::MonotoneProjection,
        0.0,
        pairing.as_f64(),
        constants_map([("scale", scale), ("rounding_floor", floor)]),
    );
    rec.pass = passes(rec.margin + floor, scale);
    Ok(rec)
}

/// Projects `x` and `y` onto `set` and checks monotonicity of `x ↦ J(x - P x)`.
pub fn monotone_projection_check<T: Scalar>(
    space: &SpaceSpec<T>,
    set: &ConvexSetSpec<T>,
    x: &Point<T>,
    y: &Point<T>,
    tol: T,
) -> Result<BoundCheckRecord> {
    let px = converged(project(space, set, x, tol)?)?;
    let py = converged(project(space, set, y, tol)?)?;
    monotone_projection_record(space, x, y, &px.argmin, &py.argmin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(c: &[f64]) -> Point<f64> {
        Point::from_f64(c).unwrap()
    }

    fn eval(kind: EstimateKind, p: f64, inputs: &EstimateInputs<f64>) -> Estimate<f64> {
        let prof = ModuliProfile::new(p).unwrap();
        let dual = ModuliProfile::new(p / (p - 1.0)).unwrap();
        estimate_rhs(kind, &prof, &dual, &Constants::default(), inputs)
    }

    #[test]
    fn zero_distance_gives_zero() {
        for p in [1.5, 2.0, 4.0] {
            for kind in EstimateKind::ALL {
                let e = eval(kind, p, &EstimateInputs::unit_geometry(0.0));
                assert_eq!(e.value, 0.0, "{kind} p={p}");
                assert!(!e.saturated);
            }
        }
    }

    #[test]
    fn hilbert_remark_example() {
        let e = eval(EstimateKind::HilbertRemark, 2.0, &EstimateInputs::unit_geometry(0.1));
        assert_eq!(e.constants["C"], 2.0);
        assert_relative_eq!(e.value, 20.352, epsilon = 1e-12);
    }

    #[test]
    fn thm32_closed_form_p4() {
        let p = 4.0;
        let d = 1e-3;
        let e = eval(EstimateKind::Thm32B16, p, &EstimateInputs::unit_geometry(d));
        let tau: f64 = 8.0 * 3.18 * 2.0 * d;
        let expect = 2.0 * 2.0 * (p * (p - 1.0) * tau * tau).powf(1.0 / p);
        assert_relative_eq!(e.value, expect, max_relative = 1e-10);
        assert!(!e.saturated && !e.clamped);
    }

    #[test]
    fn saturated_theorems_give_2c() {
        let e = eval(EstimateKind::Thm31B14, 3.0, &EstimateInputs::unit_geometry(5.0));
        assert!(e.saturated);
        assert_eq!(e.value, 4.0);
    }

    #[test]
    fn b4_composition_matches_closed_form() {
        // p = 4: g*(ε) = (q-1)ε/8 and g(ε) = (ε/2)^4/(4ε).
        let p = 4.0;
        let q = p / (p - 1.0);
        let d = 1e-8;
        let e = eval(EstimateKind::JmapB4, p, &EstimateInputs::unit_geometry(d));
        let (c, n) = (2.0, 2.0 * 3.18 * 2.0);
        let inner: f64 = 8.0 * n * d / (q - 1.0);
        let t = n * c * inner;
        let outer = (64.0 * t).powf(1.0 / 3.0);
        assert_relative_eq!(e.value, c * outer, max_relative = 1e-9);
    }

    #[test]
    fn b2_local_flag() {
        let mut i = EstimateInputs::unit_geometry(0.05);
        assert_eq!(eval(EstimateKind::BjornestalB2, 3.0, &i).local_ok, Some(true));
        i.x_to_xbar = 1.2;
        assert_eq!(eval(EstimateKind::BjornestalB2, 3.0, &i).local_ok, Some(false));
    }

    #[test]
    fn hyperplane_example_has_zero_lhs() {
        let space = SpaceSpec::new(2, 3.0).unwrap();
        let set = ConvexSetSpec::Hyperplane {
            a: vec![1.0, 0.0],
            b: 0.0,
        };
        let recs = projection_bound_check(
            &space,
            &ModuliProfile::for_space(&space),
            &Constants::default(),
            &set,
            &pt(&[2.0, 5.0]),
            &pt(&[2.1, 5.0]),
            &EstimateKind::ALL,
            1e-10,
        )
        .unwrap();
        assert_eq!(recs.len(), 6);
        for r in &recs {
            assert_eq!(r.lhs, 0.0);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn hilbert_halfspace_is_nonexpansive() {
        let space = SpaceSpec::new(2, 2.0).unwrap();
        let set = ConvexSetSpec::Halfspace {
            a: vec![1.0, 1.0],
            b: 0.0,
        };
        let (x, y) = (pt(&[3.0, 1.0]), pt(&[0.5, 2.0]));
        let recs = projection_bound_check(
            &space,
            &ModuliProfile::for_space(&space),
            &Constants::default(),
            &set,
            &x,
            &y,
            &[EstimateKind::HilbertRemark],
            1e-10,
        )
        .unwrap();
        let d = space.norm(&(&x - &y)).unwrap();
        assert!(recs[0].lhs <= d && recs[0].asserted && recs[0].pass);
    }

    #[test]
    fn monotone_examples() {
        let space = SpaceSpec::new(2, 3.0).unwrap();
        let set = ConvexSetSpec::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        };
        let x = pt(&[2.0, 0.5]);
        let r = monotone_projection_check(&space, &set, &x, &x, 1e-10).unwrap();
        assert_eq!(r.rhs, 0.0);
        let r = monotone_projection_check(&space, &set, &x, &pt(&[-0.3, 3.0]), 1e-10).unwrap();
        assert!(r.pass && r.rhs >= 0.0);
    }
}
