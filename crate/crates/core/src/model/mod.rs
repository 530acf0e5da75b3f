//! Closed-form sensitivity model.

pub mod channel;
pub mod fringe;
pub mod ideal;
pub mod sensitivity;

pub use channel::{db_per_km_to_natural, derive_channel, sagnac_scale, ChannelState, SPEED_OF_LIGHT};
pub use fringe::{
    fringe_argument, fringe_coefficients, mean_photon_number, photon_number_variance, signal_slope,
    FringeCoefficients,
};
pub use ideal::{enhancement_factor, ideal_sensitivity, m_factor, min_sensitivity_ideal, IdealSensitivity};
pub use sensitivity::{
    is_multiple_of_pi, rotation_sensitivity, standard_quantum_limit, total_particle_number, GyroModel,
    PhotonMoments, Sensitivity, SensitivityReport,
};
