//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "alhqg",
    version,
    about = "Sensitivity analysis and design search for the atom-light hybrid quantum gyroscope"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub config: ConfigArgs,

    /// Write the result to this file (and a `<PATH>.manifest.json` sidecar) instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

/// Configuration source and per-field overrides; flags win over the file.
#[derive(Debug, Args, Default)]
pub struct ConfigArgs {
    /// Flat JSON configuration; the bundled reference design is used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Mean input photon number per shot.
    #[arg(long, global = true)]
    pub n_in: Option<f64>,
    /// First-stage amplitude gain G1.
    #[arg(long, global = true)]
    pub gain: Option<f64>,
    /// Stokes wavelength, m.
    #[arg(long, global = true)]
    pub wavelength: Option<f64>,
    /// Coil diameter, m.
    #[arg(long, global = true)]
    pub diameter: Option<f64>,
    /// Fiber length, m.
    #[arg(long, global = true)]
    pub length: Option<f64>,
    /// Fiber loss, dB/km.
    #[arg(long, global = true)]
    pub attenuation: Option<f64>,
    /// Spin-wave over fiber decay-rate ratio.
    #[arg(long, global = true)]
    pub xi: Option<f64>,
    /// First pump phase, rad.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta_1: Option<f64>,
    /// Second pump phase, rad.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta_2: Option<f64>,
    /// Shots per second, Hz.
    #[arg(long, global = true)]
    pub repetition_rate: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sensitivity report at one rotation rate (JSON).
    Sensitivity {
        /// Rotation rate, rad/s; defaults to the operating point.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<f64>,
    },
    /// Sensitivity along one variable (CSV).
    Sweep {
        #[arg(long, value_enum)]
        var: Var,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Space the samples evenly in log(x).
        #[arg(long)]
        log: bool,
        #[arg(long, value_enum, default_value_t = Policy::Operating)]
        phase_policy: Policy,
    },
    /// Optimal phase, loop length and attenuation ratio (JSON).
    Optimize {
        #[arg(long, value_enum, default_value_t = Target::All)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Policy::Operating)]
        phase_policy: Policy,
    },
    /// Gyroscope, SQL and FOG sensitivity over a range of rotation rates (CSV).
    DynamicRange {
        /// Lowest rotation rate, rad/s [default: 0].
        #[arg(long, allow_hyphen_values = true)]
        from: Option<f64>,
        /// Highest rotation rate, rad/s [default: pi / beta].
        #[arg(long, allow_hyphen_values = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Sensitivity band under pump intensity and detuning drifts (JSON).
    Fluctuation {
        /// Relative pump-intensity drift.
        #[arg(long, default_value_t = 1e-3)]
        intensity: f64,
        /// Relative detuning drift.
        #[arg(long, default_value_t = 1e-3)]
        detuning: f64,
    },
    /// Matched fiber-optic gyroscope baseline (JSON).
    Fog {
        /// Rotation rate, rad/s; defaults to the gyroscope's operating point.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<f64>,
    },
    /// Oracle-versus-analytic verification suite (JSON); exit 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = BackendName::Gaussian)]
        backend: BackendName,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Var {
    Phase,
    Length,
    Xi,
    Omega,
    Gain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Phase,
    Length,
    Xi,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    Operating,
    PerPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendName {
    Gaussian,
    Fock,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sensitivity { .. } => "sensitivity",
            Command::Sweep { .. } => "sweep",
            Command::Optimize { .. } => "optimize",
            Command::DynamicRange { .. } => "dynamic-range",
            Command::Fluctuation { .. } => "fluctuation",
            Command::Fog { .. } => "fog",
            Command::Verify { .. } => "verify",
        }
    }
}
