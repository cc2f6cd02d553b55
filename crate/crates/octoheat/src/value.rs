use serde::{Deserialize, Serialize};
use std::fmt;

/// Representation that produced a kernel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Spectral,
    Integral,
    Relation,
    Asymptotic,
    /// Exact five-fold derivative of the wrapped Gaussian (S¹¹ only).
    Theta,
    /// Two-term small-time expansion (S¹¹ only).
    SmallTime,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Integral => "integral",
            Method::Relation => "relation",
            Method::Asymptotic => "asymptotic",
            Method::Theta => "theta",
            Method::SmallTime => "small_time",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A kernel evaluation with its provenance and error estimate.
///
/// `log_value` stays meaningful when `value` underflows at small times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: f64,
    pub log_value: f64,
    pub method: Method,
    pub error_estimate: f64,
    pub calibrated: bool,
}

impl KernelValue {
    pub(crate) fn new(value: f64, method: Method, error_estimate: f64, calibrated: bool) -> Self {
        KernelValue { value, log_value: value.ln(), method, error_estimate, calibrated }
    }

    pub(crate) fn from_log(log_value: f64, method: Method, rel_error: f64, calibrated: bool) -> Self {
        let value = log_value.exp();
        KernelValue { value, log_value, method, error_estimate: rel_error * value, calibrated }
    }
}
