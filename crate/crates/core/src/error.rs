use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: `{field}` {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// The truncated Fock basis cannot hold the state to the required tail mass.
    #[error(
        "Fock truncation insufficient: tail mass {tail_mass:.3e} exceeds {tolerance:.1e} at cap d = {cap}"
    )]
    TruncationInsufficient {
        tail_mass: f64,
        tolerance: f64,
        cap: usize,
    },

    #[error("invalid state operation: {0}")]
    InvalidOperation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
