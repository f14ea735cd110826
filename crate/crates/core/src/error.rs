use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on an input was violated (bad step size, angle outside
    /// its domain, non-positive structure constant, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A point fell outside the chart where the angle coordinates of a unit
    /// field are defined (the field is parallel to the third frame axis).
    #[error("point outside the angle chart: field is parallel to the E3 axis")]
    OutsideChart,

    /// An evaluation produced NaN or infinity.
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),

    /// The su(2) basis convention failed its startup validation.
    #[error("basis self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
