use thiserror::Error;

/// Errors raised by the kchain computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the range an operation accepts.
    #[error("{what} = {value} is out of range {range}")]
    Range {
        what: &'static str,
        value: i128,
        range: String,
    },

    /// An argument lies outside the mathematical domain of an operation.
    #[error("{0}")]
    Domain(String),

    /// The request exceeds a documented size cap of a method.
    #[error("{method} is capped at {cap}, got {requested}; {hint}")]
    Capacity {
        method: &'static str,
        cap: String,
        requested: String,
        hint: &'static str,
    },

    /// The method does not support this parameter combination.
    #[error("{method} does not support {reason}")]
    Unsupported {
        method: &'static str,
        reason: String,
    },

    /// Inputs are individually valid but inconsistent with each other.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative numeric procedure failed.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
