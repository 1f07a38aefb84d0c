//! Deterministic discontinuous functions whose measured moduli meet the
//! known lower bounds. Every constructor verifies its output before
//! returning it.

mod digit;
mod equatorial;
mod k5;
mod random;
mod step;
pub mod tverberg;

pub use digit::digit_interleave;
pub use equatorial::equatorial_odd;
pub use k5::{k5_jump_drawing, K5Drawing};
pub use random::random_piecewise_constant;
pub use step::step_witnesses;
pub use tverberg::tverberg_one_point;

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::moduli::SampledFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    DigitInterleave,
    K5Jump,
    TverbergOnePoint,
    EquatorialOdd,
    MonotoneStep,
    NonmonotoneStep,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::DigitInterleave => "digit-interleave",
            WitnessKind::K5Jump => "k5-jump",
            WitnessKind::TverbergOnePoint => "tverberg-one-point",
            WitnessKind::EquatorialOdd => "equatorial-odd",
            WitnessKind::MonotoneStep => "monotone-step",
            WitnessKind::NonmonotoneStep => "nonmonotone-step",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub kind: WitnessKind,
    pub parameters: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    /// Lower bound the measured modulus should meet, if a theorem supplies one.
    pub expected_bound: Option<f64>,
    pub citation: Option<String>,
}

impl WitnessSpec {
    fn new(kind: WitnessKind, parameters: &[(&str, f64)], expected_bound: Option<f64>, citation: Option<&str>) -> Self {
        Self {
            kind,
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            seed: None,
            expected_bound,
            citation: citation.map(str::to_string),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub detail: String,
    /// Smallest image distance over the pairs the verification scanned.
    pub min_separation: Option<f64>,
}

/// A verified witness function.
#[derive(Clone, Debug)]
pub struct Witness {
    pub spec: WitnessSpec,
    pub function: SampledFunction,
    pub verification: Verification,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    spec: &'a WitnessSpec,
    verification: &'a Verification,
    points: usize,
    value_dim: usize,
    resolution: f64,
    hot_spots: &'a [usize],
}

impl Witness {
    /// CSV evaluation table (`index`, domain coordinates, values).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        self.function.write_csv(out)
    }

    /// JSON sidecar with the spec, verification status and hot spots.
    pub fn sidecar_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&Sidecar {
            spec: &self.spec,
            verification: &self.verification,
            points: self.function.len(),
            value_dim: self.function.value_dim(),
            resolution: self.function.resolution(),
            hot_spots: self.function.hot_spots(),
        })?)
    }
}

/// Parameters `c ± spacing·2^{−m}` for `m = 0, 1, …` while the offset is at
/// least `floor`, clipped to `[lo, hi]`.
pub(crate) fn cluster(center: f64, spacing: f64, floor: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut out = vec![center];
    let mut s = spacing;
    while s >= floor {
        for t in [center - s, center + s] {
            if t >= lo && t <= hi {
                out.push(t);
            }
        }
        s /= 2.0;
    }
    out
}

/// Smallest spacing used in hot-spot clusters.
pub(crate) const CLUSTER_FLOOR: f64 = 1e-6;

/// Sample parameters closer than this are merged, keeping the first.
pub(crate) const MERGE_TOL: f64 = 1e-12;
