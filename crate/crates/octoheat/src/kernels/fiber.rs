//! Fiber weights of the integral representations.
//!
//! The octonionic weight is g_t(η, y); the quaternionic one is
//! sin(ηy/2t)/sin η. On a shifted contour both are used through the analytic
//! factor e^{iηy/2t}, whose imaginary part restores the real weight.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::specfun::Taylor;

/// Below this η (and for moderate ηy/2t) g_t is summed as a series in η.
pub const ETA_SWITCH: f64 = 0.1;
const SERIES_LEN: usize = 64;
const MAX_PHASE: f64 = 8.0;

/// Closed form csc³η (cos(ηy/2t)·2y(η − 3t cot η) + sin(ηy/2t)·Q(y)).
pub fn g_closed(t: f64, eta: f64, y: f64) -> f64 {
    let (s, c) = eta.sin_cos();
    let cot = c / s;
    let csc = 1.0 / s;
    let ph = eta * y / (2.0 * t);
    let q = 8.0 * t * t * cot * cot + 4.0 * t * t * csc * csc - 6.0 * t * eta * cot + 2.0 * t + eta * eta - y * y;
    csc.powi(3) * (ph.cos() * 2.0 * y * (eta - 3.0 * t * cot) + ph.sin() * q)
}

/// g_t(0, y) = y(64t⁴ + 120t³ − 20t²(y² − 3) − 20ty² + y⁴)/(120t³).
pub fn g_at_zero(t: f64, y: f64) -> f64 {
    let y2 = y * y;
    y * (64.0 * t.powi(4) + 120.0 * t.powi(3) - 20.0 * t * t * (y2 - 3.0) - 20.0 * t * y2 + y2 * y2) / (120.0 * t.powi(3))
}

/// g_t = 4t² e^{-η²/4t} (csc η ∂_η)² [sin(ηy/2t) e^{η²/4t} / sin η], expanded
/// as a Taylor series in η about 0.
pub fn g_series(t: f64, eta: f64, y: f64) -> f64 {
    let n = SERIES_LEN;
    let a = y / (2.0 * t);
    let zero = Complex64::new(0.0, 0.0);
    let mut sin_a = Taylor::zeros(n);
    let mut term = a;
    for j in (0..n).step_by(2) {
        sin_a.0[j] = Complex64::new(term, 0.0);
        term *= -a * a / (((j + 2) * (j + 3)) as f64);
    }
    let mut gauss = Taylor::zeros(n);
    let mut term = 1.0;
    for j in (0..n).step_by(2) {
        gauss.0[j] = Complex64::new(term, 0.0);
        term *= 1.0 / (4.0 * t) / ((j / 2 + 1) as f64);
    }
    let mut sinc = Taylor::sin_about(zero, n + 1).shift_down();
    sinc.zero_odd();
    let inv_sinc = sinc.recip();
    let u = sin_a.mul(&gauss).mul(&inv_sinc);
    let mut v = u.deriv().shift_down().mul(&inv_sinc);
    v.zero_odd();
    let mut w = v.deriv().shift_down().mul(&inv_sinc);
    w.zero_odd();
    let e = Complex64::new(eta, 0.0);
    4.0 * t * t * (-eta * eta / (4.0 * t)).exp() * w.eval(e).re
}

fn use_series(t: f64, eta: f64, y: f64) -> bool {
    eta < ETA_SWITCH && eta * y.abs() / (2.0 * t) <= MAX_PHASE && eta * eta / (4.0 * t) <= MAX_PHASE
}

/// The octonionic fiber weight g_t(η, y) for real y.
pub fn eval_g(t: f64, eta: f64, y: f64) -> Result<f64> {
    ensure_finite("t", t)?;
    ensure_finite("eta", eta)?;
    ensure_finite("y", y)?;
    if t <= 0.0 {
        return Err(Error::domain("t must be positive"));
    }
    if !(0.0..std::f64::consts::PI).contains(&eta) {
        return Err(Error::domain("eta must lie in [0, pi)"));
    }
    if eta == 0.0 {
        return Ok(g_at_zero(t, y));
    }
    Ok(if use_series(t, eta, y) { g_series(t, eta, y) } else { g_closed(t, eta, y) })
}

pub(crate) fn g_real(t: f64, eta: f64, y: f64) -> f64 {
    if eta == 0.0 {
        g_at_zero(t, y)
    } else if use_series(t, eta, y) {
        g_series(t, eta, y)
    } else {
        g_closed(t, eta, y)
    }
}

/// sin(ηy/2t)/sin η with its η → 0 limit y/2t.
pub(crate) fn quat_weight_real(t: f64, eta: f64, y: f64) -> f64 {
    if eta < 1e-8 {
        y / (2.0 * t)
    } else {
        (eta * y / (2.0 * t)).sin() / eta.sin()
    }
}

/// log of csc³η e^{iηy/2t} W(y), whose imaginary part on the real line is g_t.
pub(crate) fn log_oct_analytic(t: f64, eta: f64, y: Complex64) -> Complex64 {
    let (s, c) = eta.sin_cos();
    let cot = c / s;
    let csc = 1.0 / s;
    let q = 8.0 * t * t * cot * cot + 4.0 * t * t * csc * csc - 6.0 * t * eta * cot + 2.0 * t + eta * eta - y * y;
    let w = q + Complex64::i() * 2.0 * y * (eta - 3.0 * t * cot);
    -3.0 * s.ln() + Complex64::i() * eta * y / (2.0 * t) + w.ln()
}

/// log of e^{iηy/2t}/sin η.
pub(crate) fn log_quat_analytic(t: f64, eta: f64, y: Complex64) -> Complex64 {
    -eta.sin().ln() + Complex64::i() * eta * y / (2.0 * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_branch_matches_polynomial() {
        for &(t, y) in &[(0.3, 0.7), (0.01, 0.2), (1.0, 3.0)] {
            let a = g_series(t, 0.0, y);
            let b = g_at_zero(t, y);
            assert!(((a - b) / b).abs() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn vanishes_at_y_zero() {
        assert_eq!(eval_g(0.3, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn analytic_form_restores_weight() {
        for &(t, eta, y) in &[(0.3, 1.0, 0.8), (0.05, 2.0, 1.3)] {
            let z = log_oct_analytic(t, eta, Complex64::new(y, 0.0)).exp();
            let g = g_closed(t, eta, y);
            assert!((z.im - g).abs() < 1e-10 * g.abs().max(1.0));
        }
    }
}
