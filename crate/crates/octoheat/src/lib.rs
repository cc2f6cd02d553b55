//! Subelliptic heat kernel of the octonionic Hopf fibration S⁷ → S¹⁵ → OP¹.
//!
//! The kernel is radial in cylindrical coordinates (r, η) and is evaluated by
//! a double spectral series, by an integral against the S¹¹ heat kernel, and
//! by a second-order η-derivative of the quaternionic kernel. Around these sit
//! the spectrum, the Green function of -L + 40, the sub-Riemannian distance,
//! small-time asymptotics and a calibration/validation harness.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod sphere_heat;
pub mod validation;
mod value;

pub use error::{Error, Result};
pub use specfun::{Jet5, PolyIndex, TruncationControl};
pub use value::{KernelValue, Method};
