//! Brute-force quantum-state simulators used to check the closed-form model.

pub mod fock;
pub mod gaussian;
pub mod pipeline;
pub mod suite;

use serde::{Deserialize, Serialize};

pub use fock::{FockOptions, FockTwoModeState, ReadoutSums};
pub use gaussian::GaussianTwoModeState;
pub use pipeline::{oracle_sensitivity, simulate_channel, simulate_gyro, Backend, FD_STEP_FRACTION};
pub use suite::{run_suite, CaseOutcome, SuiteReport};

/// The two bosonic modes of the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Stokes light travelling through the fiber loop.
    Optical,
    /// Collective atomic excitation stored in the cell.
    Spin,
}

impl Mode {
    /// Index of the mode's `x` quadrature in the `(x_a, p_a, x_S, p_S)` ordering.
    pub(crate) fn offset(self) -> usize {
        match self {
            Mode::Optical => 0,
            Mode::Spin => 2,
        }
    }
}
