//! Moduli of convexity and smoothness of `l^p`.
//!
//! The true moduli are replaced by the classical power-type bounds
//!
//! | range      | upper bound on ρ(τ)  | lower bound on δ(ε) |
//! |------------|----------------------|---------------------|
//! | 1 < p < 2  | τ^p / p              | (p-1) ε² / 8        |
//! | p = 2      | √(1+τ²) - 1          | ε² / 8              |
//! | p > 2      | (p-1) τ²             | (ε/2)^p / p         |
//!
//! and every estimate is evaluated with these surrogates. The smoothness bound
//! is additionally clamped by `ρ(τ) ≤ τ`, which holds in every Banach space.
//! Inverses are computed by bisection on `[0, 2]` and saturate at `2`.

use crate::error::{Error, Result};
use crate::lp::{lp_norm, SpaceSpec};
use crate::numeric::{adaptive_simpson, invert_nondecreasing, Inversion};
use crate::rng::{self, gaussian_vec, unit_vec};
use crate::scalar::Scalar;

/// Absolute error target for quadrature in [`ModuliProfile::psi`].
pub const PSI_QUADRATURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `1 < p < 2`
    Power,
    /// `p = 2`
    Hilbert,
    /// `p > 2`
    Quadratic,
}

/// Bound functions for the moduli of `l^p` with a fixed exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuliProfile<T> {
    p: T,
    branch: Branch,
}

/// Value of the smoothness bound together with whether the `ρ(τ) ≤ τ` clamp was active.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoValue<T> {
    pub value: T,
    pub clamped: bool,
}

impl<T: Scalar> ModuliProfile<T> {
    /// Profile for exponent `p > 1`. Dual exponents outside the range accepted by
    /// [`SpaceSpec::new`] are allowed here.
    pub fn new(p: T) -> Result<Self> {
        if !(p.is_finite() && p > T::one()) {
            return Err(Error::Domain {
                name: "p",
                value: p.as_f64(),
                domain: "1 < p < inf",
            });
        }
        let two = T::lit(2.0);
        let branch = if p == two {
            Branch::Hilbert
        } else if p < two {
            Branch::Power
        } else {
            Branch::Quadratic
        };
        Ok(Self { p, branch })
    }

    pub fn for_space(space: &SpaceSpec<T>) -> Self {
        Self::new(space.p()).expect("space exponent is valid")
    }

    /// Profile of the dual space `l^q`.
    pub fn for_dual(space: &SpaceSpec<T>) -> Self {
        Self::new(space.q()).expect("dual exponent is valid")
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Unclamped formula for the smoothness bound.
    fn rho_formula(&self, tau: T) -> T {
        let p = self.p;
        match self.branch {
            Branch::Power => tau.powf(p) / p,
            // √(1+τ²) - 1 written without cancellation.
            Branch::Hilbert => tau * tau / ((T::one() + tau * tau).sqrt() + T::one()),
            Branch::Quadratic => (p - T::one()) * tau * tau,
        }
    }

    /// Smoothness bound with the clamp flag; `tau` must be nonnegative.
    pub fn rho_upper_detail(&self, tau: T) -> RhoValue<T> {
        let f = self.rho_formula(tau);
        if f > tau {
            RhoValue {
                value: tau,
                clamped: true,
            }
        } else {
            RhoValue {
                value: f,
                clamped: false,
            }
        }
    }

    /// `min(formula(τ), τ)`.
    pub fn rho_upper(&self, tau: T) -> Result<T> {
        check_nonneg("tau", tau)?;
        Ok(self.rho_upper_detail(tau).value)
    }

    /// Largest τ at which the unclamped formula is still in force.
    pub fn rho_clamp_threshold(&self) -> T {
        let p = self.p;
        match self.branch {
            Branch::Power => p.powf((p - T::one()).recip()),
            Branch::Hilbert => T::infinity(),
            Branch::Quadratic => (p - T::one()).recip(),
        }
    }

    pub(crate) fn delta_formula(&self, eps: T) -> T {
        let p = self.p;
        match self.branch {
            Branch::Power => (p - T::one()) * eps * eps / T::lit(8.0),
            Branch::Hilbert => eps * eps / T::lit(8.0),
            Branch::Quadratic => (eps / T::lit(2.0)).powf(p) / p,
        }
    }

    /// Lower bound on the modulus of convexity, `ε ∈ [0, 2]`.
    pub fn delta_lower(&self, eps: T) -> Result<T> {
        check_eps(eps)?;
        Ok(self.delta_formula(eps))
    }

    /// Inverse of [`Self::delta_lower`]; saturates at `ε = 2`.
    pub fn delta_lower_inverse(&self, t: T) -> Result<Inversion<T>> {
        check_nonneg("t", t)?;
        Ok(self.delta_inverse_raw(t))
    }

    pub(crate) fn delta_inverse_raw(&self, t: T) -> Inversion<T> {
        invert_nondecreasing(|e| self.delta_formula(e), t, T::zero(), T::lit(2.0))
    }

    fn g_formula(&self, eps: T) -> T {
        if eps == T::zero() {
            T::zero()
        } else {
            self.delta_formula(eps) / eps
        }
    }

    /// `δ(ε)/ε` for `ε ∈ (0, 2]`.
    pub fn g_lower(&self, eps: T) -> Result<T> {
        check_eps(eps)?;
        if eps == T::zero() {
            return Err(Error::Domain {
                name: "eps",
                value: 0.0,
                domain: "0 < eps <= 2",
            });
        }
        Ok(self.g_formula(eps))
    }

    /// Inverse of [`Self::g_lower`]; saturates at `ε = 2`.
    pub fn g_lower_inverse(&self, t: T) -> Result<Inversion<T>> {
        check_nonneg("t", t)?;
        Ok(self.g_inverse_raw(t))
    }

    pub(crate) fn g_inverse_raw(&self, t: T) -> Inversion<T> {
        invert_nondecreasing(|e| self.g_formula(e), t, T::zero(), T::lit(2.0))
    }

    /// `ρ(τ)/τ` for `τ > 0`; at most 1 because of the clamp.
    pub fn h_upper(&self, tau: T) -> Result<T> {
        if tau <= T::zero() || !tau.is_finite() {
            return Err(Error::Domain {
                name: "tau",
                value: tau.as_f64(),
                domain: "tau > 0",
            });
        }
        Ok(self.rho_upper_detail(tau).value / tau)
    }

    /// `ψ(t) = ∫_0^t ρ(s)/s ds` with the clamped smoothness bound.
    ///
    /// Closed form on the power branches, adaptive quadrature for `p = 2`.
    pub fn psi(&self, t: T) -> Result<T> {
        check_nonneg("t", t)?;
        let p = self.p;
        let two = T::lit(2.0);
        let s = self.rho_clamp_threshold();
        Ok(match self.branch {
            Branch::Power => {
                let head = |u: T| u.powf(p) / (p * p);
                if t <= s {
                    head(t)
                } else {
                    head(s) + (t - s)
                }
            }
            Branch::Quadratic => {
                let head = |u: T| (p - T::one()) * u * u / two;
                if t <= s {
                    head(t)
                } else {
                    head(s) + (t - s)
                }
            }
            Branch::Hilbert => adaptive_simpson(
                |u: T| u / ((T::one() + u * u).sqrt() + T::one()),
                T::zero(),
                t,
                T::lit(PSI_QUADRATURE_TOL),
            ),
        })
    }

    /// Figiel-type margin `L τ2² ρ(τ1) - τ1² ρ(τ2)` for `0 < τ1 ≤ τ2`.
    pub fn figiel_margin(&self, tau1: T, tau2: T, figiel_l: T) -> Result<T> {
        if !(tau1 > T::zero() && tau1 <= tau2 && tau2.is_finite()) {
            return Err(Error::Domain {
                name: "tau1",
                value: tau1.as_f64(),
                domain: "0 < tau1 <= tau2",
            });
        }
        let r1 = self.rho_upper_detail(tau1).value;
        let r2 = self.rho_upper_detail(tau2).value;
        Ok(figiel_l * tau2 * tau2 * r1 - tau1 * tau1 * r2)
    }
}

/// Exact modulus of convexity of a Hilbert space, `1 - √(1 - ε²/4)`.
pub fn hilbert_delta<T: Scalar>(eps: T) -> T {
    let u = eps * eps / T::lit(4.0);
    // 1 - √(1-u) = u / (1 + √(1-u))
    u / (T::one() + (T::one() - u).max(T::zero()).sqrt())
}

/// Exact modulus of smoothness of a Hilbert space, `√(1 + τ²) - 1`.
pub fn hilbert_rho<T: Scalar>(tau: T) -> T {
    tau * tau / ((T::one() + tau * tau).sqrt() + T::one())
}

fn check_nonneg<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v >= T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: v.as_f64(),
            domain: "0 <= value < inf",
        })
    }
}

fn check_eps<T: Scalar>(eps: T) -> Result<()> {
    if eps >= T::zero() && eps <= T::lit(2.0) {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "eps",
            value: eps.as_f64(),
            domain: "0 <= eps <= 2",
        })
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        return Err(Error::Domain {
            name: "samples",
            value: 0.0,
            domain: "samples >= 1",
        });
    }
    Ok(())
}

/// Sampling estimate of the modulus of convexity at `ε`.
///
/// Each sample takes a random unit `x`, walks along a great-circle-like arc
/// `normalize(cos θ x + sin θ u)` from `x` to `-x`, and bisects on θ for the
/// point `y` with `||x - y|| = ε`. Returns the minimum of `1 - ||(x+y)/2||`,
/// which over-estimates the infimum defining the modulus.
pub fn empirical_convexity<T: Scalar>(space: &SpaceSpec<T>, eps: T, samples: usize, seed: u64) -> Result<T> {
    if !(eps > T::zero() && eps <= T::lit(2.0)) {
        return Err(Error::Domain {
            name: "eps",
            value: eps.as_f64(),
            domain: "0 < eps <= 2",
        });
    }
    check_samples(samples)?;
    let (n, p) = (space.dim(), space.p());
    let mut best = T::infinity();
    for i in 0..samples {
        let mut r = rng::stream(seed, i as u64);
        let x: Vec<T> = unit_vec(&mut r, n, p);
        let y = if n == 1 {
            x.iter().map(|&t| -t).collect()
        } else {
            chord_partner(&mut r, &x, p, eps)
        };
        let mid: Vec<T> = x.iter().zip(&y).map(|(&a, &b)| (a + b) / T::lit(2.0)).collect();
        best = best.min(T::one() - lp_norm(&mid, p));
    }
    Ok(best)
}

fn chord_partner<T: Scalar>(r: &mut rng::Rng, x: &[T], p: T, eps: T) -> Vec<T> {
    let xx: T = x.iter().map(|&t| t * t).sum();
    let perp = loop {
        let u: Vec<T> = gaussian_vec(r, x.len());
        let ux: T = u.iter().zip(x).map(|(&a, &b)| a * b).sum();
        let perp: Vec<T> = u.iter().zip(x).map(|(&a, &b)| a - ux / xx * b).collect();
        if lp_norm(&perp, T::lit(2.0)) > T::lit(1e-8) {
            break perp;
        }
    };
    let point_at = |theta: T| -> Vec<T> {
        let (s, c) = theta.sin_cos();
        let v: Vec<T> = x.iter().zip(&perp).map(|(&a, &b)| c * a + s * b).collect();
        let nv = lp_norm(&v, p);
        v.into_iter().map(|t| t / nv).collect()
    };
    let dist = |y: &[T]| -> T {
        let d: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
        lp_norm(&d, p)
    };
    let pi = T::lit(std::f64::consts::PI);
    if eps >= T::lit(2.0) || eps >= dist(&point_at(pi)) {
        return x.iter().map(|&t| -t).collect();
    }
    let (mut a, mut b) = (T::zero(), pi);
    for _ in 0..crate::numeric::BISECTION_MAX_ITER {
        let m = (a + b) / T::lit(2.0);
        if m <= a || m >= b {
            break;
        }
        if dist(&point_at(m)) < eps {
            a = m;
        } else {
            b = m;
        }
    }
    point_at(b)
}

/// Sampling estimate of the modulus of smoothness at `τ`: the maximum of
/// `(||x+y|| + ||x-y||)/2 - 1` over random `||x|| = 1`, `||y|| = τ`.
/// Under-estimates the supremum defining the modulus.
pub fn empirical_smoothness<T: Scalar>(space: &SpaceSpec<T>, tau: T, samples: usize, seed: u64) -> Result<T> {
    if !(tau > T::zero() && tau.is_finite()) {
        return Err(Error::Domain {
            name: "tau",
            value: tau.as_f64(),
            domain: "tau > 0",
        });
    }
    check_samples(samples)?;
    let (n, p) = (space.dim(), space.p());
    let mut best = T::neg_infinity();
    for i in 0..samples {
        let mut r = rng::stream(seed, i as u64);
        let x: Vec<T> = unit_vec(&mut r, n, p);
        let y: Vec<T> = unit_vec::<T>(&mut r, n, p).into_iter().map(|t| t * tau).collect();
        let plus: Vec<T> = x.iter().zip(&y).map(|(&a, &b)| a + b).collect();
        let minus: Vec<T> = x.iter().zip(&y).map(|(&a, &b)| a - b).collect();
        let v = (lp_norm(&plus, p) + lp_norm(&minus, p)) / T::lit(2.0) - T::one();
        best = best.max(v);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn prof(p: f64) -> ModuliProfile<f64> {
        ModuliProfile::new(p).unwrap()
    }

    const P_GRID: [f64; 6] = [1.2, 1.5, 2.0, 3.0, 4.0, 6.0];

    #[test]
    fn branch_selection() {
        assert_eq!(prof(1.5).branch(), Branch::Power);
        assert_eq!(prof(2.0).branch(), Branch::Hilbert);
        assert_eq!(prof(2.5).branch(), Branch::Quadratic);
        assert!(ModuliProfile::<f64>::new(1.0).is_err());
    }

    #[test]
    fn rho_upper_examples() {
        for p in P_GRID {
            assert_eq!(prof(p).rho_upper(0.0).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(
            prof(1.5).rho_upper(0.5).unwrap(),
            0.5f64.powf(1.5) / 1.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(prof(1.5).rho_upper(0.5).unwrap(), 0.235702, epsilon = 1e-6);
        assert_abs_diff_eq!(prof(4.0).rho_upper(0.1).unwrap(), 0.03, epsilon = 1e-15);
        assert!(prof(4.0).rho_upper(-0.1).is_err());
    }

    #[test]
    fn rho_upper_clamps_at_tau() {
        let r = prof(4.0).rho_upper_detail(1.0);
        assert!(r.clamped);
        assert_eq!(r.value, 1.0);
        assert!(!prof(4.0).rho_upper_detail(1.0 / 3.0 - 1e-9).clamped);
        for p in P_GRID {
            let pr = prof(p);
            let mut prev = 0.0;
            for k in 0..400 {
                let tau = k as f64 * 0.05;
                let v = pr.rho_upper(tau).unwrap();
                assert!(v <= tau + 1e-15);
                assert!(v >= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn delta_lower_examples() {
        for p in P_GRID {
            assert_eq!(prof(p).delta_lower(0.0).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(prof(1.5).delta_lower(1.0).unwrap(), 0.0625, epsilon = 1e-15);
        assert_abs_diff_eq!(prof(4.0).delta_lower(1.0).unwrap(), 0.015625, epsilon = 1e-15);
        assert!(prof(4.0).delta_lower(2.1).is_err());
        assert!(prof(4.0).delta_lower(-0.1).is_err());
    }

    #[test]
    fn delta_inverse_examples() {
        let inv = prof(3.0).delta_lower_inverse(0.0).unwrap();
        assert_eq!(inv.value, 0.0);
        let inv = prof(2.0).delta_lower_inverse(0.02).unwrap();
        assert_abs_diff_eq!(inv.value, 0.4, epsilon = 1e-12);
        assert!(!inv.saturated);
        let inv = prof(4.0).delta_lower_inverse(0.015625).unwrap();
        assert_abs_diff_eq!(inv.value, 1.0, epsilon = 1e-12);
        assert!(prof(4.0).delta_lower_inverse(-1.0).is_err());
    }

    #[test]
    fn delta_inverse_saturates_beyond_range() {
        let pr = prof(3.0);
        let top = pr.delta_lower(2.0).unwrap();
        let inv = pr.delta_lower_inverse(top * 10.0).unwrap();
        assert!(inv.saturated);
        assert_eq!(inv.value, 2.0);
    }

    #[test]
    fn delta_inverse_round_trip_and_residual() {
        for p in P_GRID {
            let pr = prof(p);
            for eps in [0.1, 0.5, 1.0, 1.9] {
                let t = pr.delta_lower(eps).unwrap();
                let inv = pr.delta_lower_inverse(t).unwrap();
                assert_abs_diff_eq!(inv.value, eps, epsilon = 1e-9);
                let resid = (pr.delta_lower(inv.value).unwrap() - t).abs();
                assert!(resid <= 1e-12 * t.max(1.0));
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_abs_diff_eq!(prof(2.0).g_lower(1.0).unwrap(), 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(prof(2.0).g_lower_inverse(0.125).unwrap().value, 1.0, epsilon = 1e-12);
        let g = prof(4.0).g_lower(0.5).unwrap();
        assert_abs_diff_eq!(prof(4.0).g_lower_inverse(g).unwrap().value, 0.5, epsilon = 1e-10);
        assert!(prof(4.0).g_lower(0.0).is_err());
        assert!(prof(4.0).g_lower_inverse(-1e-3).is_err());
    }

    #[test]
    fn inverses_are_monotone_on_sorted_grids() {
        for p in P_GRID {
            let pr = prof(p);
            let mut last_d = 0.0;
            let mut last_g = 0.0;
            for k in 0..=300 {
                let t = 1e-6 * 1.06f64.powi(k);
                let d = pr.delta_lower_inverse(t).unwrap().value;
                let g = pr.g_lower_inverse(t).unwrap().value;
                assert!(d >= last_d);
                assert!(g >= last_g);
                last_d = d;
                last_g = g;
            }
        }
    }

    #[test]
    fn h_upper_examples() {
        assert_abs_diff_eq!(prof(4.0).h_upper(0.1).unwrap(), 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(prof(1.5).h_upper(1.0).unwrap(), 1.0 / 1.5, epsilon = 1e-15);
        assert!(prof(1.5).h_upper(0.0).is_err());
        for p in P_GRID {
            for k in 1..200 {
                assert!(prof(p).h_upper(k as f64 * 0.1).unwrap() <= 1.0);
            }
        }
    }

    /// Independent route: quadrature of the clamped ρ(s)/s.
    fn psi_by_quadrature(pr: &ModuliProfile<f64>, t: f64) -> f64 {
        adaptive_simpson(
            |s: f64| if s == 0.0 { 0.0 } else { pr.rho_upper(s).unwrap() / s },
            0.0,
            t,
            1e-13,
        )
    }

    #[test]
    fn psi_examples() {
        for p in P_GRID {
            assert_eq!(prof(p).psi(0.0).unwrap(), 0.0);
        }
        let v = prof(1.5).psi(1.0).unwrap();
        assert_abs_diff_eq!(v, 4.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v, psi_by_quadrature(&prof(1.5), 1.0), epsilon = 1e-10);
        let v = prof(4.0).psi(0.1).unwrap();
        assert_abs_diff_eq!(v, 0.015, epsilon = 1e-15);
        assert_abs_diff_eq!(v, psi_by_quadrature(&prof(4.0), 0.1), epsilon = 1e-10);
        assert!(prof(4.0).psi(-1.0).is_err());
    }

    #[test]
    fn psi_closed_form_matches_quadrature_across_clamp() {
        for p in P_GRID {
            let pr = prof(p);
            for t in [0.01, 0.3, 1.0, 2.5, 7.0] {
                assert_abs_diff_eq!(pr.psi(t).unwrap(), psi_by_quadrature(&pr, t), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn psi_hilbert_matches_antiderivative() {
        // ∫ (√(1+s²)-1)/s ds = √(1+s²) - ln(1 + √(1+s²)) + C
        let anti = |s: f64| (1.0 + s * s).sqrt() - (1.0 + (1.0 + s * s).sqrt()).ln();
        let pr = prof(2.0);
        for t in [0.5, 1.0, 3.0, 10.0] {
            assert_abs_diff_eq!(pr.psi(t).unwrap(), anti(t) - anti(0.0), epsilon = 1e-10);
        }
    }

    #[test]
    fn hilbert_sandwich() {
        for k in 1..=200 {
            let eps = k as f64 * 0.01;
            let d = hilbert_delta(eps);
            assert!(eps * eps / 8.0 <= d + 1e-16);
            assert!(d <= eps * eps / 4.0 + 1e-16);
        }
    }

    #[test]
    fn hilbert_rho_lower_chain() {
        for k in 0..200 {
            let tau = k as f64 * 0.05;
            let r = hilbert_rho(tau);
            assert!(r + 1e-15 >= tau * tau / (tau + 2.0));
            assert_abs_diff_eq!(prof(2.0).rho_upper(tau).unwrap(), r, epsilon = 1e-15);
        }
    }

    #[test]
    fn figiel_examples() {
        for p in P_GRID {
            let m = prof(p).figiel_margin(0.3, 0.3, 3.18).unwrap();
            let r = prof(p).rho_upper(0.3).unwrap();
            assert_abs_diff_eq!(m, 2.18 * 0.09 * r, epsilon = 1e-14);
        }
        let pr = prof(4.0);
        let (t1, t2) = (0.05, 0.2);
        let m = pr.figiel_margin(t1, t2, 3.18).unwrap();
        assert_abs_diff_eq!(m, 2.18 * t2 * t2 * pr.rho_upper(t1).unwrap(), epsilon = 1e-15);
        assert!(prof(1.5).figiel_margin(0.1, 1.0, 3.18).unwrap() >= 0.0);
        assert!(prof(1.5).figiel_margin(1.0, 0.1, 3.18).is_err());
    }

    #[test]
    fn figiel_holds_on_grid() {
        for p in P_GRID {
            let pr = prof(p);
            for i in 1..40 {
                for j in i..40 {
                    let (t1, t2) = (i as f64 * 0.1, j as f64 * 0.1);
                    assert!(pr.figiel_margin(t1, t2, 3.18).unwrap() >= -1e-12);
                }
            }
        }
    }

    #[test]
    fn empirical_convexity_examples() {
        let s2 = SpaceSpec::new(2, 2.0).unwrap();
        assert_abs_diff_eq!(empirical_convexity(&s2, 2.0, 20, 3).unwrap(), 1.0, epsilon = 1e-12);
        let v = empirical_convexity(&s2, 1.0, 500, 9).unwrap();
        assert!(v >= 1.0 - 3f64.sqrt() / 2.0 - 1e-9);
        let s4 = SpaceSpec::new(3, 4.0).unwrap();
        assert!(empirical_convexity(&s4, 1.0, 500, 9).unwrap() >= 0.015625 - 1e-9);
        assert!(empirical_convexity(&s4, 0.0, 10, 1).is_err());
        assert!(empirical_convexity(&s4, 2.5, 10, 1).is_err());
        assert!(empirical_convexity(&s4, 1.0, 0, 1).is_err());
    }

    #[test]
    fn empirical_smoothness_examples() {
        let s2 = SpaceSpec::new(4, 2.0).unwrap();
        assert!(empirical_smoothness(&s2, 1e-300f64, 5, 1).unwrap().abs() < 1e-12);
        assert!(empirical_smoothness(&s2, 1.0, 500, 1).unwrap() <= 2f64.sqrt() - 1.0 + 1e-9);
        let s15 = SpaceSpec::new(4, 1.5).unwrap();
        assert!(empirical_smoothness(&s15, 0.5, 500, 1).unwrap() <= 0.235702 + 1e-9);
        assert!(empirical_smoothness(&s15, 0.0, 10, 1).is_err());
    }

    #[test]
    fn samplers_are_deterministic() {
        let s = SpaceSpec::new(3, 3.0).unwrap();
        assert_eq!(
            empirical_convexity(&s, 0.7, 50, 11).unwrap(),
            empirical_convexity(&s, 0.7, 50, 11).unwrap()
        );
        assert_eq!(
            empirical_smoothness(&s, 0.7, 50, 11).unwrap(),
            empirical_smoothness(&s, 0.7, 50, 11).unwrap()
        );
    }
}
