use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default Figiel constant.
pub const DEFAULT_FIGIEL_L: f64 = 3.18;
/// Default value of the unspecified constant of the integral estimate.
pub const DEFAULT_N_ZR: f64 = 1.0;
/// Relative slack of the PASS rule: `margin ≥ -REL_SLACK·max(1, |rhs|)`.
pub const REL_SLACK: f64 = 1e-9;

/// Universal constants used by the estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Figiel constant, `1 < L ≤ 3.18`.
    #[serde(rename = "L")]
    pub figiel_l: f64,
    /// Constant `N` of the integral estimate, `N > 0`.
    #[serde(rename = "N_zr")]
    pub n_zr: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            figiel_l: DEFAULT_FIGIEL_L,
            n_zr: DEFAULT_N_ZR,
        }
    }
}

impl Constants {
    pub fn new(figiel_l: f64, n_zr: f64) -> Result<Self> {
        if !(figiel_l > 1.0 && figiel_l <= DEFAULT_FIGIEL_L) {
            return Err(Error::Domain {
                name: "L",
                value: figiel_l,
                domain: "1 < L <= 3.18",
            });
        }
        if !(n_zr > 0.0 && n_zr.is_finite()) {
            return Err(Error::Domain {
                name: "N",
                value: n_zr,
                domain: "N > 0",
            });
        }
        Ok(Self { figiel_l, n_zr })
    }
}

/// Every checkable inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `<Jx - Jy, x - y> ≤ 8d² + C ρ(d)`, `C = 4 max{2L, ||x|| + ||y||}`.
    Thm21,
    /// `<Jx - Jy, x - y> ≤ (2L)^{-1} ρ(8CLd)`, `C = 2 max{1, √((||x||² + ||y||²)/2)}`.
    Thm22,
    /// `2||x||² + 2||y||² - ||x + y||² ≤ 4d² + 2 max{2L, ||x|| + ||y||} ρ(d)`.
    Parallelogram,
    /// `||Jx - Jy||_* ≤ 4C h(8CLd)`.
    P1,
    /// `<Jx - Jy, x - y> ≥ (2L)^{-1} δ_*(||Jx - Jy||_* / C)`.
    A7,
    BjornestalB2,
    ZrB3,
    JmapB4,
    Thm31B14,
    Thm32B16,
    HilbertRemark,
    /// `<J(x - x̄) - J(y - ȳ), x - y> ≥ 0`.
    MonotoneProjection,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Thm21 => "thm21",
            BoundKind::Thm22 => "thm22",
            BoundKind::Parallelogram => "parallelogram",
            BoundKind::P1 => "p1",
            BoundKind::A7 => "a7",
            BoundKind::BjornestalB2 => "bjornestal_b2",
            BoundKind::ZrB3 => "zr_b3",
            BoundKind::JmapB4 => "jmap_b4",
            BoundKind::Thm31B14 => "thm31_b14",
            BoundKind::Thm32B16 => "thm32_b16",
            BoundKind::HilbertRemark => "hilbert_remark",
            BoundKind::MonotoneProjection => "monotone_projection",
        }
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a record came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SampleMeta {
    pub p: f64,
    pub n: usize,
    pub seed: u64,
    pub index: u64,
    /// JSON description of the convex set, when one is involved.
    pub set: Option<String>,
}

/// One evaluated instance of an inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheckRecord {
    pub kind: BoundKind,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub margin: f64,
    pub constants: BTreeMap<String, f64>,
    /// An inverse modulus was clamped at the end of its range.
    pub saturated: bool,
    /// The `ρ(τ) ≤ τ` clamp was active.
    pub clamped: bool,
    /// Whether a failure of this record counts as a violation.
    pub asserted: bool,
    pub pass: bool,
    #[serde(flatten)]
    pub sample: SampleMeta,
}

impl BoundCheckRecord {
    pub fn new(kind: BoundKind, lhs: f64, rhs: f64, constants: BTreeMap<String, f64>) -> Self {
        let margin = rhs - lhs;
        Self {
            kind,
            lhs,
            rhs,
            margin,
            constants,
            saturated: false,
            clamped: false,
            asserted: true,
            pass: passes(margin, rhs.abs()),
            sample: SampleMeta::default(),
        }
    }

    pub fn saturated(mut self, saturated: bool) -> Self {
        self.saturated = saturated;
        self
    }

    pub fn clamped(mut self, clamped: bool) -> Self {
        self.clamped = clamped;
        self
    }

    pub fn asserted(mut self, asserted: bool) -> Self {
        self.asserted = asserted;
        self
    }

    pub fn with_sample(mut self, sample: SampleMeta) -> Self {
        self.sample = sample;
        self
    }

    /// Asserted and failed.
    pub fn is_violation(&self) -> bool {
        self.asserted && !self.pass
    }
}

/// The PASS rule `margin ≥ -REL_SLACK·max(1, scale)`.
pub fn passes(margin: f64, scale: f64) -> bool {
    margin >= -REL_SLACK * scale.max(1.0)
}

pub(crate) fn constants_map<const N: usize>(entries: [(&str, f64); N]) -> BTreeMap<String, f64> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
