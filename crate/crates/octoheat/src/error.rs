use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("accuracy not reached in {context} (residual {residual:e})")]
    Accuracy { context: String, residual: f64 },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("no root bracketed: {0}")]
    NoRoot(String),
    #[error("pole at the base point")]
    Pole,
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn accuracy(context: impl Into<String>, residual: f64) -> Self {
        Error::Accuracy { context: context.into(), residual }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} is not finite")))
    }
}
