use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bounds::Constants;
use crate::error::{Error, Result};
use crate::lp::{MAX_EXPONENT, MIN_EXPONENT};
use crate::projection::ConvexSetSpec;

/// Every tolerance used by a PASS/FAIL decision. Each report row records the
/// tolerance its verdict used.
pub mod tolerances {
    /// Relative slack of the inequality records.
    pub const REL_SLACK: f64 = crate::bounds::REL_SLACK;
    /// Relative error of the duality identities `<Jv, v> = ||v||²`, `||Jv||_* = ||v||`.
    pub const DUALITY_IDENTITY: f64 = 1e-9;
    /// Lower bound accepted for `<Jx - Jy, x - y>`.
    pub const MONOTONICITY: f64 = 1e-12;
    /// Certificate acceptance: residual `≥ -CERTIFICATE·max(1, dist²)`.
    pub const CERTIFICATE: f64 = 1e-6;
    /// Relative error of fitted slopes.
    pub const SLOPE: f64 = 0.05;
    /// Relative slack of Hilbert non-expansiveness.
    pub const NONEXPANSIVE: f64 = 1e-10;
    /// Absolute slack of the empirical moduli against their bounds.
    pub const MODULI: f64 = 1e-9;
    /// Solver and oracle must agree within this many final oracle grid steps.
    pub const ORACLE_STEPS: f64 = 2.0;
    /// Solver distance may exceed the oracle distance by at most this much.
    pub const ORACLE_DISTANCE: f64 = 1e-6;
    /// Infeasibility target of the alternating-projections demo.
    pub const ALTERNATING: f64 = 1e-6;
}

/// Default sampling radius.
pub const DEFAULT_RADIUS: f64 = 10.0;
/// Default solver tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default exponent grid.
pub const DEFAULT_P_GRID: [f64; 5] = [1.2, 1.5, 2.0, 3.0, 6.0];
/// Default oracle resolution (points per axis).
pub const DEFAULT_ORACLE_RESOLUTION: usize = 41;
/// Default number of oracle comparisons per exponent.
pub const DEFAULT_ORACLE_SAMPLES: usize = 50;
/// Default number of instances per exponent that get a sampled certificate.
pub const DEFAULT_CERTIFICATE_INSTANCES: usize = 100;
/// Default number of feasible points of each sampled certificate.
pub const DEFAULT_CERTIFICATE_SAMPLES: usize = 1000;
/// Iteration cap of the alternating-projections demo.
pub const ALTERNATING_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyDuality,
    VerifyProjection,
    ModuliScan,
    ExponentStudy,
    AlternatingDemo,
    /// All of the above in order.
    All,
}

impl Command {
    pub const EACH: [Command; 5] = [
        Command::VerifyDuality,
        Command::VerifyProjection,
        Command::ModuliScan,
        Command::ExponentStudy,
        Command::AlternatingDemo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyDuality => "verify-duality",
            Command::VerifyProjection => "verify-projection",
            Command::ModuliScan => "moduli-scan",
            Command::ExponentStudy => "exponent-study",
            Command::AlternatingDemo => "alternating-demo",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub p_grid: Vec<f64>,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub constants: Constants,
    /// Solver tolerance.
    pub tol: f64,
    /// Radius of the `l^p` ball points are drawn from.
    pub radius: f64,
    /// Fixed sets; when empty, sets are sampled with every kind in turn.
    pub sets: Vec<ConvexSetSpec<f64>>,
    pub oracle_resolution: usize,
    pub oracle_samples: usize,
    pub certificate_instances: usize,
    pub certificate_samples: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            command: Command::All,
            p_grid: DEFAULT_P_GRID.to_vec(),
            dim: 5,
            samples: 10_000,
            seed: 12345,
            constants: Constants::default(),
            tol: DEFAULT_TOL,
            radius: DEFAULT_RADIUS,
            sets: Vec::new(),
            oracle_resolution: DEFAULT_ORACLE_RESOLUTION,
            oracle_samples: DEFAULT_ORACLE_SAMPLES,
            certificate_instances: DEFAULT_CERTIFICATE_INSTANCES,
            certificate_samples: DEFAULT_CERTIFICATE_SAMPLES,
            out: None,
            format: Format::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.samples < 1 {
            return bad("samples must be at least 1".into());
        }
        if self.dim < 1 {
            return bad("dim must be at least 1".into());
        }
        if self.p_grid.is_empty() {
            return bad("p grid is empty".into());
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(MIN_EXPONENT..=MAX_EXPONENT).contains(*p)) {
            return bad(format!("p = {p} outside [{MIN_EXPONENT}, {MAX_EXPONENT}]"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad(format!("radius must be positive, got {}", self.radius));
        }
        let (lo, hi) = crate::projection::solver::TOL_RANGE;
        if !(lo..=hi).contains(&self.tol) {
            return bad(format!("tol must lie in [{lo:e}, {hi:e}]"));
        }
        Constants::new(self.constants.figiel_l, self.constants.n_zr).map_err(|e| Error::Config(e.to_string()))?;
        for s in &self.sets {
            s.validate(self.dim).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.oracle_resolution < crate::projection::oracle::MIN_RESOLUTION {
            return bad("oracle resolution too small".into());
        }
        Ok(())
    }

    /// Reads a JSON array of sets (or a single set) from `path`.
    pub fn load_sets(path: &std::path::Path) -> Result<Vec<ConvexSetSpec<f64>>> {
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        Ok(match value {
            serde_json::Value::Array(_) => serde_json::from_value(value)?,
            _ => vec![serde_json::from_value(value)?],
        })
    }
}
