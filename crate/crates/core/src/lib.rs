//! Analysis toolkit for the atom-light hybrid quantum gyroscope: a Sagnac
//! loop closed by two Raman amplification stages, with an optical arm in
//! fiber and a matter arm stored as an atomic spin wave.
//!
//! - [`model`]: closed-form channel, output coefficients, photon statistics
//!   and rotation sensitivity.
//! - [`oracle`]: Gaussian-moment and truncated-Fock simulators that check the
//!   closed forms by brute force.
//! - [`design`]: phase, loop-length and attenuation-ratio searches, sweeps,
//!   dynamic range and pump-fluctuation bands.
//! - [`fog`]: fiber-optic gyroscope baseline at equal particle number and loss.

pub mod config;
pub mod design;
pub mod error;
pub mod fog;
pub mod model;
pub mod oracle;

pub use config::GyroConfig;
pub use error::{Error, Result};
pub use model::{GyroModel, PhotonMoments, Sensitivity, SensitivityReport};
