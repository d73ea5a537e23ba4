//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
//! with a failure status if any criterion fails.

use std::time::{Duration, Instant};

use rand::Rng as _;
use rayon::prelude::*;

use lp_projection::bounds::{
    duality_lower_check, duality_upper_check, estimator_slope, expected_slope, jmap_modulus_check,
    parallelogram_upper_check, projection_records, BoundCheckRecord, Constants, DualityUpper, EstimateKind,
};
use lp_projection::harness::run::{
    certificate_floor, curated_alternating_case, duality_identity_errors, monotonicity_pairing,
};
use lp_projection::harness::{
    run_experiment, sample_pair, sample_set, write_report, Command, ExperimentConfig, Format,
};
use lp_projection::lp::{Point, SpaceSpec};
use lp_projection::moduli::{empirical_convexity, empirical_smoothness, hilbert_delta, ModuliProfile};
use lp_projection::projection::{
    alternating_projections, brute_force_project, certificate_residual, project, ProjectionResult, SetKind,
};
use lp_projection::rng::{stream, Rng};

const SEED: u64 = 12345;
const RADIUS: f64 = 10.0;
const SOLVER_TOL: f64 = 1e-10;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let within = limit.is_none_or(|l| elapsed <= l);
    let limit_text = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
    Outcome::new(
        out.pass && within,
        format!("{}; {:.1}s{}", out.detail, elapsed.as_secs_f64(), limit_text),
    )
}

/// Independent pair on even indices, pair at a log-uniform distance in `[1e-6, 1]` on odd ones.
fn mixed_pair(space: &SpaceSpec<f64>, i: u64, g: &mut Rng) -> (Point<f64>, Point<f64>) {
    if i.is_multiple_of(2) {
        sample_pair(space, RADIUS, None, g).unwrap()
    } else {
        let d = 10f64.powf(g.random_range(-6.0..0.0));
        sample_pair(space, RADIUS, Some(d), g).unwrap()
    }
}

const DUALITY_P: [f64; 5] = [1.2, 1.5, 2.0, 3.0, 6.0];
const DUALITY_DIMS: [usize; 3] = [2, 5, 20];
const DUALITY_PAIRS: u64 = 100_000;

/// Runs `f` on `DUALITY_PAIRS` pairs for every (p, dim) and returns the violation count.
fn over_duality_regime<F>(salt: u64, f: F) -> usize
where
    F: Fn(&SpaceSpec<f64>, &Point<f64>, &Point<f64>) -> usize + Sync,
{
    let mut bad = 0;
    for (a, &p) in DUALITY_P.iter().enumerate() {
        for (b, &n) in DUALITY_DIMS.iter().enumerate() {
            let space = SpaceSpec::new(n, p).unwrap();
            let key = (salt << 48) | ((a as u64) << 44) | ((b as u64) << 40);
            bad += (0..DUALITY_PAIRS)
                .into_par_iter()
                .map(|i| {
                    let mut g = stream(SEED, key | i);
                    let (x, y) = mixed_pair(&space, i, &mut g);
                    f(&space, &x, &y)
                })
                .sum::<usize>();
        }
    }
    bad
}

fn criterion_1() -> Outcome {
    let bad = over_duality_regime(1, |space, x, y| {
        let mut bad = 0;
        for v in [x, y] {
            let (e1, s1, e2, s2) = duality_identity_errors(space, v).unwrap();
            bad += usize::from(e1 > 1e-9 * s1.max(f64::MIN_POSITIVE));
            bad += usize::from(e2 > 1e-9 * s2.max(f64::MIN_POSITIVE));
        }
        bad + usize::from(monotonicity_pairing(space, x, y).unwrap() < -1e-12)
    });
    Outcome::new(
        bad == 0,
        format!(
            "{} pairs per (p, dim) over p {:?} x dim {:?}; {bad} violations",
            DUALITY_PAIRS, DUALITY_P, DUALITY_DIMS
        ),
    )
}

fn criterion_2() -> Outcome {
    let c = Constants::default();
    let bad = over_duality_regime(2, |space, x, y| {
        let prof = ModuliProfile::for_space(space);
        let dual = ModuliProfile::for_dual(space);
        let recs: [BoundCheckRecord; 5] = [
            duality_upper_check(DualityUpper::Thm21, space, &prof, &c, x, y).unwrap(),
            duality_upper_check(DualityUpper::Thm22, space, &prof, &c, x, y).unwrap(),
            parallelogram_upper_check(space, &prof, &c, x, y).unwrap(),
            jmap_modulus_check(space, &prof, &c, x, y).unwrap(),
            duality_lower_check(space, &dual, &c, x, y).unwrap(),
        ];
        recs.iter().filter(|r| !r.pass).count()
    });
    Outcome::new(
        bad == 0,
        format!(
            "thm21, thm22, parallelogram, p1, a7 with L = {}; {bad} violations",
            c.figiel_l
        ),
    )
}

const ORACLE_P: [f64; 4] = [1.5, 2.0, 3.0, 4.0];
const ORACLE_INSTANCES: u64 = 200;
const ORACLE_RESOLUTION: usize = 41;

fn criterion_3() -> Outcome {
    let results: Vec<(bool, bool, bool)> = (0..ORACLE_INSTANCES)
        .into_par_iter()
        .map(|i| {
            let kind = SetKind::ALL[i as usize % 6];
            let p = ORACLE_P[(i as usize / 6) % ORACLE_P.len()];
            let n = 2 + (i as usize / 24) % 2;
            let space = SpaceSpec::new(n, p).unwrap();
            let mut g = stream(SEED, (3 << 48) | i);
            let set = sample_set(kind, &space, RADIUS, &mut g).unwrap();
            let (x, _) = sample_pair(&space, RADIUS, None, &mut g).unwrap();
            let r = project(&space, &set, &x, SOLVER_TOL).unwrap();
            let o = brute_force_project(&space, &set, &x, ORACLE_RESOLUTION).unwrap();
            let gap = space.norm(&(&r.argmin - &o.point)).unwrap();
            let point_ok = gap <= 2.0 * o.grid_step;
            let dist_ok = r.distance <= o.distance + 1e-6;
            let cert_ok = r.converged && r.certificate_residual >= certificate_floor(r.distance, 0.0);
            (point_ok, dist_ok, cert_ok)
        })
        .collect();
    let point_bad = results.iter().filter(|r| !r.0).count();
    let dist_bad = results.iter().filter(|r| !r.1).count();
    let cert_bad = results.iter().filter(|r| !r.2).count();
    Outcome::new(
        point_bad + dist_bad + cert_bad == 0,
        format!(
            "{ORACLE_INSTANCES} instances, dim 2-3, six kinds, p {ORACLE_P:?}; point gap > 2 steps: {point_bad}, \
             distance excess: {dist_bad}, certificate < -1e-6 scale: {cert_bad}"
        ),
    )
}

const PROJECTION_P: [f64; 4] = [1.5, 2.0, 3.0, 4.0];
const PROJECTION_SAMPLES: u64 = 10_000;
const PROJECTION_DIM: usize = 5;

/// Projections of a sampled (set, x, y) instance.
fn projection_instance(
    space: &SpaceSpec<f64>,
    salt: u64,
    i: u64,
) -> (Point<f64>, Point<f64>, ProjectionResult<f64>, ProjectionResult<f64>) {
    let mut g = stream(SEED, salt | i);
    let set = sample_set(SetKind::ALL[i as usize % 6], space, RADIUS, &mut g).unwrap();
    let (x, y) = mixed_pair(space, i, &mut g);
    let px = project(space, &set, &x, SOLVER_TOL).unwrap();
    let py = project(space, &set, &y, SOLVER_TOL).unwrap();
    (x, y, px, py)
}

fn criterion_4() -> Outcome {
    let c = Constants::default();
    let kinds = [EstimateKind::Thm31B14, EstimateKind::Thm32B16];
    let mut bad = 0;
    let mut unconverged = 0;
    let mut rates = Vec::new();
    for (k, &p) in PROJECTION_P.iter().enumerate() {
        let space = SpaceSpec::new(PROJECTION_DIM, p).unwrap();
        let prof = ModuliProfile::for_space(&space);
        let per: Vec<(usize, usize, [bool; 2])> = (0..PROJECTION_SAMPLES)
            .into_par_iter()
            .map(|i| {
                let (x, y, px, py) = projection_instance(&space, (4 << 48) | ((k as u64) << 40), i);
                if !(px.converged && py.converged) {
                    return (0, 1, [false; 2]);
                }
                let recs = projection_records(&space, &prof, &c, &x, &y, &px.argmin, &py.argmin, &kinds).unwrap();
                (
                    recs.iter().filter(|r| !r.pass).count(),
                    0,
                    [recs[0].saturated, recs[1].saturated],
                )
            })
            .collect();
        bad += per.iter().map(|t| t.0).sum::<usize>();
        unconverged += per.iter().map(|t| t.1).sum::<usize>();
        let s31 = per.iter().filter(|t| t.2[0]).count() as f64 / PROJECTION_SAMPLES as f64;
        let s32 = per.iter().filter(|t| t.2[1]).count() as f64 / PROJECTION_SAMPLES as f64;
        rates.push(format!("p={p}: {:.1}%/{:.1}%", 100.0 * s31, 100.0 * s32));
    }
    Outcome::new(
        bad == 0 && unconverged == 0,
        format!(
            "{PROJECTION_SAMPLES} instances per p, dim {PROJECTION_DIM}; {bad} violations, {unconverged} unconverged; \
             saturation thm31/thm32 {}",
            rates.join(", ")
        ),
    )
}

fn criterion_5() -> Outcome {
    let c = Constants::default();
    let space = SpaceSpec::new(PROJECTION_DIM, 2.0).unwrap();
    let prof = ModuliProfile::for_space(&space);
    let per: Vec<(bool, bool)> = (0..PROJECTION_SAMPLES)
        .into_par_iter()
        .map(|i| {
            let (x, y, px, py) = projection_instance(&space, 5 << 48, i);
            let d = space.norm(&(&x - &y)).unwrap();
            let moved = space.norm(&(&px.argmin - &py.argmin)).unwrap();
            let nonexp = moved <= d * (1.0 + 1e-10);
            let rec = projection_records(
                &space,
                &prof,
                &c,
                &x,
                &y,
                &px.argmin,
                &py.argmin,
                &[EstimateKind::HilbertRemark],
            )
            .unwrap();
            (nonexp, rec[0].pass)
        })
        .collect();
    let nonexp_bad = per.iter().filter(|t| !t.0).count();
    let hilbert_bad = per.iter().filter(|t| !t.1).count();
    Outcome::new(
        nonexp_bad + hilbert_bad == 0,
        format!("{PROJECTION_SAMPLES} pairs at p = 2; non-expansiveness violations {nonexp_bad}, 16LC^2 d violations {hilbert_bad}"),
    )
}

fn criterion_6() -> Outcome {
    let c = Constants::default();
    let mut ok = true;
    let mut table = Vec::new();
    for p in [1.25, 1.5, 2.0, 3.0, 4.0, 6.0] {
        let fit = |kind| {
            estimator_slope(kind, p, &c, lp_projection::bounds::order::DEFAULT_POINTS)
                .unwrap()
                .slope
        };
        let (s32, s4) = (fit(EstimateKind::Thm32B16), fit(EstimateKind::JmapB4));
        let within = |s: f64, e: f64| (s / e - 1.0).abs() <= 0.05;
        ok &= within(s32, expected_slope(EstimateKind::Thm32B16, p));
        ok &= within(s4, expected_slope(EstimateKind::JmapB4, p));
        if p == 2.0 {
            for kind in EstimateKind::ALL {
                if kind != EstimateKind::ZrB3 {
                    ok &= within(fit(kind), 1.0);
                }
            }
        } else {
            ok &= s32 > s4;
        }
        table.push(format!("p={p}: thm32 {s32:.4} b4 {s4:.4}"));
    }
    Outcome::new(ok, table.join(", "))
}

const MODULI_GRID: [f64; 4] = [0.1, 0.5, 1.0, 1.5];
const MODULI_SAMPLES: usize = 10_000;

fn criterion_7() -> Outcome {
    let mut bad = 0;
    let mut worst_gap = f64::INFINITY;
    for (a, p) in [1.5, 2.0, 3.0, 4.0].into_iter().enumerate() {
        for n in [2, 5] {
            let space = SpaceSpec::new(n, p).unwrap();
            let prof = ModuliProfile::for_space(&space);
            for (j, &t) in MODULI_GRID.iter().enumerate() {
                let seed = SEED ^ (((a * 16 + n) as u64) << 8 | j as u64);
                let emp_d = empirical_convexity(&space, t, MODULI_SAMPLES, seed).unwrap();
                let emp_r = empirical_smoothness(&space, t, MODULI_SAMPLES, seed).unwrap();
                let gd = emp_d - (prof.delta_lower(t).unwrap() - 1e-9);
                let gr = prof.rho_upper(t).unwrap() + 1e-9 - emp_r;
                bad += usize::from(gd < 0.0) + usize::from(gr < 0.0);
                worst_gap = worst_gap.min(gd).min(gr);
            }
        }
    }
    for t in MODULI_GRID {
        let h = hilbert_delta(t);
        bad += usize::from(!(t * t / 8.0 <= h && h <= t * t / 4.0));
    }
    Outcome::new(
        bad == 0,
        format!("p {{1.5, 2, 3, 4}}, dim {{2, 5}}, {MODULI_SAMPLES} samples per point; {bad} violations, smallest gap {worst_gap:.3e}"),
    )
}

const CERTIFICATE_INSTANCES: u64 = 500;
const CERTIFICATE_SAMPLES: usize = 1000;

fn criterion_8() -> Outcome {
    let per: Vec<(bool, f64)> = (0..CERTIFICATE_INSTANCES)
        .into_par_iter()
        .map(|i| {
            let p = PROJECTION_P[(i as usize / 6) % PROJECTION_P.len()];
            let space = SpaceSpec::new(PROJECTION_DIM, p).unwrap();
            let mut g = stream(SEED, (8 << 48) | i);
            let set = sample_set(SetKind::ALL[i as usize % 6], &space, RADIUS, &mut g).unwrap();
            let (x, _) = sample_pair(&space, RADIUS, None, &mut g).unwrap();
            let r = project(&space, &set, &x, SOLVER_TOL).unwrap();
            let res = certificate_residual(&space, &set, &x, &r.argmin, CERTIFICATE_SAMPLES, g.random()).unwrap();
            (r.converged && res >= certificate_floor(r.distance, 0.0), res)
        })
        .collect();
    let bad = per.iter().filter(|t| !t.0).count();
    let worst = per.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    Outcome::new(
        bad == 0,
        format!(
            "{CERTIFICATE_INSTANCES} instances x {CERTIFICATE_SAMPLES} feasible points, dim {PROJECTION_DIM}, p {PROJECTION_P:?}; \
             {bad} below -1e-6 max(1, dist^2), smallest residual {worst:.3e}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let (space, a, b, x0) = curated_alternating_case();
    let r = alternating_projections(&space, &a, &b, &x0, 200, 1e-6).unwrap();
    let (ia, ib) = *r.infeasibility.last().unwrap();
    let worst = ia.max(ib);
    Outcome::new(
        worst < 1e-6 && r.iterations() <= 200,
        format!(
            "p = 3, two halfspaces in the plane; infeasibility {worst:.3e} after {} iterations",
            r.iterations()
        ),
    )
}

fn report_without_timestamps() -> (Vec<u8>, usize) {
    let cfg = ExperimentConfig {
        command: Command::All,
        seed: SEED,
        ..ExperimentConfig::default()
    };
    let out = run_experiment(&cfg).unwrap();
    let mut rows = out.rows;
    for r in &mut rows {
        r.timestamp.clear();
    }
    let mut buf = Vec::new();
    write_report(&rows, &mut buf, Format::Csv).unwrap();
    (buf, rows.len())
}

fn criterion_10() -> Outcome {
    let (a, n) = report_without_timestamps();
    let (b, _) = report_without_timestamps();
    Outcome::new(
        a == b,
        format!(
            "full default suite twice with seed {SEED}: {n} rows, {} bytes, identical: {}",
            a.len(),
            a == b
        ),
    )
}

/// Name, runtime limit in seconds, and check of one criterion.
type Criterion = (&'static str, Option<u64>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("duality identities and monotonicity", Some(30), criterion_1),
        ("duality-mapping inequalities", Some(60), criterion_2),
        ("projection oracle equivalence", Some(300), criterion_3),
        ("projection continuity estimates", Some(600), criterion_4),
        ("Hilbert recovery", None, criterion_5),
        ("order table", None, criterion_6),
        ("moduli consistency", None, criterion_7),
        ("variational principle", None, criterion_8),
        ("alternating projections", None, criterion_9),
        ("determinism", None, criterion_10),
    ];
    let mut failures = 0;
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let out = timed(limit.map(Duration::from_secs), f);
        failures += usize::from(!out.pass);
        println!(
            "criterion {:>2} {}: {} ({})",
            k + 1,
            if out.pass { "PASS" } else { "FAIL" },
            name,
            out.detail
        );
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
