use thiserror::Error;

/// Errors reported by the toolkit.
///
/// The CLI maps `Parameter` and `Domain` to exit code 2 and `Budget` to
/// exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent arguments (mismatched rings, bad gcd
    /// preconditions, unparsable input).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Arguments are well formed but the requested construction does not
    /// apply to them.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact enumeration would exceed the configured budget.
    #[error("budget exceeded: {needed} enumeration steps needed, budget is {budget}; use the randomized estimator instead")]
    Budget { needed: u128, budget: u128 },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
