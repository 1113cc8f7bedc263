use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("integration did not converge (value {value:e}, estimated error {est_error:e})")]
    NonConvergence { value: f64, est_error: f64 },

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("grid exhausted: {0}")]
    GridExhausted(String),
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn require_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        domain(format!("{name} must be positive and finite, got {x}"))
    }
}
