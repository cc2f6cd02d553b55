//! Orthogonal polynomials, zonal functions and the wrapped Gaussian.
//!
//! Jacobi and Gegenbauer polynomials are evaluated by forward three-term
//! recurrence. The theta function comes with truncated Taylor arithmetic so
//! that the five-fold `1/sin ∂` operator on S¹¹ can be applied exactly.

mod jet;
mod poly;
mod theta;

pub use jet::Jet5;
pub use poly::{
    binomial, gegenbauer_c, gegenbauer_sequence, h_m, h_m_laplace, jacobi_p, zonal_pole_value, JacobiRecurrence,
};
pub use theta::{theta_v, ThetaForm};

pub(crate) use jet::Taylor;
pub(crate) use theta::v_taylor;

use crate::error::{Error, Result};

/// Fiber harmonic degree `m` and Jacobi degree `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct PolyIndex {
    pub m: usize,
    pub k: usize,
}

/// Tolerances and caps for series truncation and panel quadrature.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TruncationControl {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub max_panels: usize,
}

impl TruncationControl {
    pub fn new(abs_tol: f64, rel_tol: f64, max_terms: usize, max_panels: usize) -> Result<Self> {
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(abs_tol) || !in_unit(rel_tol) {
            return Err(Error::domain("tolerances must lie in (0, 1)"));
        }
        if max_terms < 8 {
            return Err(Error::domain("max_terms must be at least 8"));
        }
        if max_panels == 0 {
            return Err(Error::domain("max_panels must be positive"));
        }
        Ok(TruncationControl { abs_tol, rel_tol, max_terms, max_panels })
    }

    /// Stopping threshold for a term bound given the current partial sum.
    pub(crate) fn threshold(&self, sum: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * sum.abs())
    }
}

impl Default for TruncationControl {
    fn default() -> Self {
        TruncationControl { abs_tol: 1e-12, rel_tol: 1e-10, max_terms: 2000, max_panels: 400_000 }
    }
}
