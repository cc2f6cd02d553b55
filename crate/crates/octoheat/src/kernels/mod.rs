//! Quaternionic and octonionic subelliptic heat kernels.
//!
//! Every representation carries one scalar prefactor held in
//! [`Calibration`]; the functional shapes are fixed. A [`Kernels`] value binds
//! a calibration to truncation controls and exposes all evaluators.

pub mod fiber;
pub(crate) mod integral;
mod relation;
mod spectral;
mod spectrum;

pub use relation::{bridge_operator_on_chebyshev, chebyshev_u_derivatives};
pub use spectrum::{multiplicity, spectrum, SpectrumEntry, SpectrumKind};

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};
use crate::specfun::TruncationControl;
use crate::value::{KernelValue, Method};
use integral::{fiber_integral, Fiber};

/// Radial coordinates (r, η) on S¹⁵ away from the singular set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylindricalPoint {
    pub r: f64,
    pub eta: f64,
}

impl CylindricalPoint {
    pub fn new(r: f64, eta: f64) -> Result<Self> {
        ensure_finite("r", r)?;
        ensure_finite("eta", eta)?;
        if !(0.0..PI / 2.0).contains(&r) {
            return Err(Error::domain(format!("r = {r} outside [0, pi/2)")));
        }
        if !(0.0..PI).contains(&eta) {
            return Err(Error::domain(format!("eta = {eta} outside [0, pi)")));
        }
        Ok(CylindricalPoint { r, eta })
    }
}

/// Scalar prefactors of each representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Measure constant in c_μ sin⁷r cos⁷r sin⁶η.
    pub c_mu: f64,
    /// Scale of α_{k,m} (printed 96/π⁸).
    pub c_spec: f64,
    /// Scale of β_{k,m} (printed Γ(4)/(2π⁶)).
    pub c_quat: f64,
    /// Prefactor of the octonionic integral representation (printed 48/π²).
    pub c_int: f64,
    /// Prefactor of the derivative relation (printed 192/π²).
    pub c_rel: f64,
    /// Green function constant (printed 2304/π⁸).
    pub c_green: f64,
    /// True once the constants come from a fit rather than the printed values.
    pub fitted: bool,
}

impl Calibration {
    pub fn printed() -> Self {
        let pi2 = PI * PI;
        let pi6 = pi2 * pi2 * pi2;
        let pi8 = pi6 * pi2;
        Calibration {
            c_mu: 56.0 * pi6 * PI / 5040.0,
            c_spec: 96.0 / pi8,
            c_quat: 3.0 / pi6,
            c_int: 48.0 / pi2,
            c_rel: 192.0 / pi2,
            c_green: 2304.0 / pi8,
            fitted: false,
        }
    }

    /// (name, value) pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("c_mu", self.c_mu),
            ("c_spec", self.c_spec),
            ("c_quat", self.c_quat),
            ("c_int", self.c_int),
            ("c_rel", self.c_rel),
            ("c_green", self.c_green),
        ]
    }
}

impl Default for Calibration {
    fn default() -> Self {
        Calibration::printed()
    }
}

/// Kernel evaluators bound to a calibration and truncation controls.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Kernels {
    pub control: TruncationControl,
    pub calibration: Calibration,
}

/// Below this time the octonionic dispatcher uses the integral form.
pub const DISPATCH_T: f64 = 0.2;

fn check_t(t: f64) -> Result<()> {
    ensure_finite("t", t)?;
    if t <= 0.0 {
        return Err(Error::domain("t must be positive"));
    }
    Ok(())
}

impl Kernels {
    pub fn new(control: TruncationControl, calibration: Calibration) -> Self {
        Kernels { control, calibration }
    }

    /// Octonionic kernel by its double spectral series.
    pub fn p_oct_spectral(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        let s = spectral::oct_series(t, p, &self.control)?;
        Ok(KernelValue::new(
            self.calibration.c_spec * s.value,
            Method::Spectral,
            self.calibration.c_spec * s.error,
            self.calibration.fitted,
        ))
    }

    /// Quaternionic kernel on S¹¹ by its spectral series.
    pub fn p_quat_spectral(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        let s = spectral::quat_series(t, p, &self.control)?;
        Ok(KernelValue::new(
            self.calibration.c_quat * s.value,
            Method::Spectral,
            self.calibration.c_quat * s.error,
            self.calibration.fitted,
        ))
    }

    /// Quaternionic kernel from its integral against q_t.
    pub fn p_quat_integral(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        let li = fiber_integral(t, p.r, p.eta, Fiber::Quat, &self.control)?;
        let log_value = -t - 0.5 * (PI * t).ln() + li.log_value;
        Ok(KernelValue::from_log(log_value, Method::Integral, li.rel_error, true))
    }

    /// Octonionic kernel from its integral against q_t; the log value stays
    /// accurate when the value underflows.
    pub fn p_oct_integral(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        let li = fiber_integral(t, p.r, p.eta, Fiber::Oct, &self.control)?;
        let log_value = self.calibration.c_int.ln() + 15.0 * t - 0.5 * (PI * t).ln() - 2.0 * p.r.cos().ln()
            - 2.0 * t.ln()
            + li.log_value;
        Ok(KernelValue::from_log(log_value, Method::Integral, li.rel_error, self.calibration.fitted))
    }

    /// Octonionic kernel from η-derivatives of the quaternionic series.
    pub fn p_oct_from_quat(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        if t < 0.05 {
            return Err(Error::domain("relation representation needs t >= 0.05"));
        }
        if !(0.05..=PI - 0.05).contains(&p.eta) {
            return Err(Error::domain("relation representation needs eta in [0.05, pi - 0.05]"));
        }
        let s = relation::bridged_quat_series(t, p, &self.control)?;
        let pre = self.calibration.c_rel * self.calibration.c_quat * (16.0 * t).exp() / p.r.cos().powi(2);
        Ok(KernelValue::new(pre * s.value, Method::Relation, pre * s.error, self.calibration.fitted))
    }

    /// ∫_{t0}^∞ e^{-s t} p_oct(t) dt, integrated term-wise from the spectral
    /// series.
    pub fn p_oct_laplace_tail(&self, t0: f64, s: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t0)?;
        ensure_finite("s", s)?;
        if s <= 0.0 {
            return Err(Error::domain("Laplace variable must be positive"));
        }
        let sum = spectral::oct_resolvent_series(t0, s, p, &self.control)?;
        let pre = self.calibration.c_spec * (-s * t0).exp();
        Ok(KernelValue::new(pre * sum.value, Method::Spectral, pre * sum.error, self.calibration.fitted))
    }

    /// Spectral series for t ≥ 0.2 unless cancellation spoils its relative
    /// accuracy; integral representation otherwise.
    pub fn p_oct(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        if t >= DISPATCH_T {
            let s = self.p_oct_spectral(t, p)?;
            if s.error_estimate <= self.control.rel_tol * s.value.abs() {
                return Ok(s);
            }
        }
        self.p_oct_integral(t, p)
    }

    /// Quaternionic dispatcher with the same switching time.
    pub fn p_quat(&self, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
        check_t(t)?;
        if t >= DISPATCH_T {
            let s = self.p_quat_spectral(t, p)?;
            if s.error_estimate <= self.control.rel_tol * s.value.abs() {
                return Ok(s);
            }
        }
        self.p_quat_integral(t, p)
    }
}
