//! Randomized invariants of the public API.

use lp_projection::bounds::{
    duality_lower_check, duality_upper_check, estimate_rhs, jmap_modulus_check, parallelogram_upper_check, Constants,
    DualityUpper, EstimateInputs, EstimateKind,
};
use lp_projection::harness::{sample_pair, sample_set};
use lp_projection::lp::{lp_norm, Point, SpaceSpec};
use lp_projection::moduli::ModuliProfile;
use lp_projection::projection::{project, projected_descent, ConvexSetSpec, SetKind};
use lp_projection::rng::stream;
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(2.0), 1.1f64..2.0, 2.0f64..8.0]
}

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0f64..10.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn duality_map_identities(p in exponent(), v in coords(4)) {
        let s = SpaceSpec::new(4, p).unwrap();
        let v = Point::new(v).unwrap();
        let n = s.norm(&v).unwrap();
        let jv = s.duality_map(&v).unwrap();
        let pairing = lp_projection::lp::pairing(&jv, &v).unwrap();
        prop_assert!((pairing - n * n).abs() <= 1e-9 * (n * n).max(f64::MIN_POSITIVE));
        prop_assert!((s.dual_norm(&jv).unwrap() - n).abs() <= 1e-9 * n.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn duality_map_is_homogeneous(p in exponent(), v in coords(3), t in -5.0f64..5.0) {
        let s = SpaceSpec::new(3, p).unwrap();
        let v = Point::new(v).unwrap();
        let scaled = s.duality_map(&v.scaled(t)).unwrap();
        let expect = s.duality_map(&v).unwrap().scaled(t);
        for i in 0..3 {
            prop_assert!((scaled[i] - expect[i]).abs() <= 1e-9 * (1.0 + expect[i].abs()));
        }
    }

    #[test]
    fn duality_inequalities_hold(p in exponent(), x in coords(3), y in coords(3)) {
        let s = SpaceSpec::new(3, p).unwrap();
        let prof = ModuliProfile::for_space(&s);
        let dual = ModuliProfile::for_dual(&s);
        let c = Constants::default();
        let (x, y) = (Point::new(x).unwrap(), Point::new(y).unwrap());
        for rec in [
            duality_upper_check(DualityUpper::Thm21, &s, &prof, &c, &x, &y).unwrap(),
            duality_upper_check(DualityUpper::Thm22, &s, &prof, &c, &x, &y).unwrap(),
            parallelogram_upper_check(&s, &prof, &c, &x, &y).unwrap(),
            jmap_modulus_check(&s, &prof, &c, &x, &y).unwrap(),
            duality_lower_check(&s, &dual, &c, &x, &y).unwrap(),
        ] {
            prop_assert!(rec.pass, "{rec:?}");
        }
    }

    #[test]
    fn projection_is_feasible_and_idempotent(p in exponent(), k in 0usize..6, seed in any::<u64>()) {
        let s = SpaceSpec::new(4, p).unwrap();
        let kind = SetKind::ALL[k];
        let mut g = stream(seed, 0);
        let set = sample_set(kind, &s, 10.0, &mut g).unwrap();
        let (x, _) = sample_pair(&s, 10.0, None, &mut g).unwrap();
        let once = project(&s, &set, &x, 1e-10).unwrap();
        prop_assert!(once.converged, "{set:?} {once:?}");
        prop_assert!(set.contains(once.argmin.coords(), 1e-9));
        let twice = project(&s, &set, &once.argmin, 1e-10).unwrap();
        prop_assert!(s.norm(&(&twice.argmin - &once.argmin)).unwrap() <= 1e-8);
    }

    #[test]
    fn projection_beats_feasible_points(p in exponent(), k in 0usize..6, seed in any::<u64>()) {
        let s = SpaceSpec::new(3, p).unwrap();
        let mut g = stream(seed, 1);
        let set = sample_set(SetKind::ALL[k], &s, 10.0, &mut g).unwrap();
        let (x, _) = sample_pair(&s, 10.0, None, &mut g).unwrap();
        let r = project(&s, &set, &x, 1e-10).unwrap();
        let e = lp_projection::projection::euclidean_project(&set, &x).unwrap();
        let de = s.norm(&(&x - &e)).unwrap();
        prop_assert!(r.distance <= de * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn descent_agrees_with_specialized_solvers(p in 1.3f64..5.0, k in 0usize..6, seed in any::<u64>()) {
        let s = SpaceSpec::new(3, p).unwrap();
        let mut g = stream(seed, 2);
        let set = sample_set(SetKind::ALL[k], &s, 5.0, &mut g).unwrap();
        let (x, _) = sample_pair(&s, 5.0, None, &mut g).unwrap();
        let fast = project(&s, &set, &x, 1e-10).unwrap();
        let slow = projected_descent(&s, &set, &x, 1e-8).unwrap();
        // Both are near-optimal, so their distances agree closely even if points differ slightly.
        prop_assert!((fast.distance - slow.distance).abs() <= 1e-5 * (1.0 + fast.distance), "{fast:?} {slow:?}");
    }

    #[test]
    fn set_json_round_trip(k in 0usize..6, seed in any::<u64>()) {
        let s = SpaceSpec::new(4, 3.0).unwrap();
        let set = sample_set(SetKind::ALL[k], &s, 10.0, &mut stream(seed, 3)).unwrap();
        let back: ConvexSetSpec<f64> = serde_json::from_str(&serde_json::to_string(&set).unwrap()).unwrap();
        prop_assert_eq!(back, set);
    }

    #[test]
    fn estimates_are_nonnegative_and_bounded_when_saturated(
        p in exponent(),
        d in 1e-8f64..20.0,
        a in 0.0f64..20.0,
        b in 0.0f64..20.0,
    ) {
        let prof = ModuliProfile::new(p).unwrap();
        let dual = ModuliProfile::new(p / (p - 1.0)).unwrap();
        let inputs = EstimateInputs { d, x_to_ybar: a, y_to_xbar: b, x_to_xbar: 1.0, y_to_ybar: 1.0 };
        let c = 2.0 * 1f64.max(a).max(b);
        for kind in EstimateKind::ALL {
            let e = estimate_rhs(kind, &prof, &dual, &Constants::default(), &inputs);
            prop_assert!(e.value >= 0.0 && e.value.is_finite(), "{kind:?} {e:?}");
            if e.saturated && matches!(kind, EstimateKind::Thm31B14 | EstimateKind::Thm32B16) {
                prop_assert!((e.value - 2.0 * c).abs() <= 1e-12 * c);
            }
        }
    }

    #[test]
    fn sampled_pairs_hit_target(p in exponent(), d in 1e-9f64..19.0, seed in any::<u64>()) {
        let s = SpaceSpec::new(5, p).unwrap();
        let (x, y) = sample_pair(&s, 10.0, Some(d), &mut stream(seed, 4)).unwrap();
        let dx: Vec<f64> = x.coords().iter().zip(y.coords()).map(|(a, b)| a - b).collect();
        prop_assert!((lp_norm(&dx, p) - d).abs() <= 1e-12 * d.max(1.0));
    }
}
