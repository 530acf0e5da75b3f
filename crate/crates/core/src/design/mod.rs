//! Operating-point searches, parameter sweeps and robustness analyses.

pub mod dynamic;
pub mod fluctuation;
pub mod lengths;
pub mod phase;
pub mod search;
pub mod sweep;

use serde::{Deserialize, Serialize};

pub use dynamic::{dynamic_range, DynamicRangeRecord, DynamicRangeTable, EARTH_RATE};
pub use fluctuation::{fluctuation_band, FluctuationBand, FluctuationCorner};
pub use lengths::{optimal_lengths, optimal_lengths_with, optimal_xi, optimal_xi_with};
pub use phase::{operating_phase, optimal_phase};
pub use sweep::{sweep, Scale, SweepRecord, SweepSpec, SweepTable, SweepVariable};

/// How the Sagnac phase is chosen when the loop length, attenuation ratio or
/// gain is varied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhasePolicy {
    /// Hold `beta Omega` at the ideal optimum `Lambda(N_in, G)` of the design.
    #[default]
    Operating,
    /// Re-optimize the phase of the lossy model at every point.
    PerPoint,
}

/// A located optimum and the operating point it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumRecord {
    /// Which parameter was optimized: `phase`, `loop_length` or `attenuation_ratio`.
    pub parameter: &'static str,
    pub value: f64,
    /// Sagnac phase `beta Omega` at the optimum, radians.
    pub phase: f64,
    /// Rotation rate at the optimum, rad/s.
    pub omega: f64,
    pub loop_length: f64,
    pub attenuation_ratio: f64,
    pub delta_omega_shot: f64,
    pub delta_omega_hz: f64,
    pub bracket: [f64; 2],
    pub iterations: usize,
}
