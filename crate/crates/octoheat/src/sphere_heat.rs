//! Riemannian heat kernel q_t on S¹¹.
//!
//! Three forms: the Gegenbauer series in C_m^5, the five-fold derivative
//! e^{25t}(-1/(2π sin δ) ∂_δ)^5 V of the wrapped Gaussian, and the two-term
//! small-time expansions inside and outside [-1, 1].

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};
use crate::specfun::{binomial, v_taylor, Taylor, ThetaForm, TruncationControl};
use crate::value::{KernelValue, Method};

/// Γ(5)/(2π⁶).
pub const Q11_PREFACTOR: f64 = 12.0 / (PI * PI * PI * PI * PI * PI);
/// Reciprocal volume of S¹¹.
pub const INV_VOL_S11: f64 = 60.0 / (PI * PI * PI * PI * PI * PI);

const DUAL_FORM_T: f64 = 0.25;
const SPECTRAL_FLOOR_T: f64 = 0.05;

/// Where q_t is evaluated: cos δ inside [-1, 1] or cosh y beyond 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereArgument {
    Cos(f64),
    Cosh(f64),
}

impl SphereArgument {
    pub fn x(&self) -> f64 {
        match *self {
            SphereArgument::Cos(d) => d.cos(),
            SphereArgument::Cosh(y) => y.cosh(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereKernelRequest {
    pub t: f64,
    pub argument: SphereArgument,
    pub control: TruncationControl,
}

impl SphereKernelRequest {
    pub fn evaluate(&self) -> Result<KernelValue> {
        q11(self.t, self.argument, &self.control)
    }
}

fn check_t(t: f64) -> Result<()> {
    ensure_finite("t", t)?;
    if t <= 0.0 {
        return Err(Error::domain("t must be positive"));
    }
    Ok(())
}

fn spectral_terms(t: f64, x: f64, control: &TruncationControl, from_m: usize) -> Result<KernelValue> {
    check_t(t)?;
    ensure_finite("x", x)?;
    if x < -1.0 {
        return Err(Error::domain("q11 argument must be >= -1"));
    }
    if x > 1.0 {
        let y = x.acosh();
        let m_star = y / (2.0 * t) + 10.0 / t.sqrt();
        if m_star > control.max_terms as f64 {
            return Err(Error::accuracy("q11 spectral series (hyperbolic argument)", m_star));
        }
    }
    let (mut c_prev, mut c_cur) = (0.0, 1.0);
    let mut sum = 0.0;
    let mut small = 0;
    let mut last_bound = f64::INFINITY;
    for m in 0..=control.max_terms {
        if m == 1 {
            c_prev = 1.0;
            c_cur = 10.0 * x;
        } else if m >= 2 {
            let mf = m as f64;
            let next = (2.0 * x * (mf + 4.0) * c_cur - (mf + 8.0) * c_prev) / mf;
            c_prev = c_cur;
            c_cur = next;
        }
        let mf = m as f64;
        let weight = Q11_PREFACTOR * (mf + 5.0) * (-mf * (mf + 10.0) * t).exp();
        let term = weight * c_cur;
        if !term.is_finite() {
            return Err(Error::accuracy("q11 spectral series overflow", f64::INFINITY));
        }
        if m >= from_m {
            sum += term;
        }
        let bound = if x.abs() <= 1.0 { weight * binomial(m + 9, 9) } else { term.abs() };
        last_bound = bound;
        if bound < control.threshold(sum) {
            small += 1;
            if small >= 3 && m > from_m {
                return Ok(KernelValue::new(sum, Method::Spectral, bound, true));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::accuracy("q11 spectral series", last_bound))
}

/// Gegenbauer expansion Σ Γ(5)/(2π⁶)(m+5)e^{-m(m+10)t} C_m^5(x).
pub fn q11_spectral(t: f64, x: f64, control: &TruncationControl) -> Result<KernelValue> {
    spectral_terms(t, x, control, 0)
}

/// The same series without the stationary m = 0 term.
pub fn q11_spectral_excess(t: f64, x: f64, control: &TruncationControl) -> Result<KernelValue> {
    spectral_terms(t, x, control, 1)
}

/// Five-fold derivative formula for δ in (0, π).
pub fn q11_theta(t: f64, delta: f64, control: &TruncationControl) -> Result<KernelValue> {
    check_t(t)?;
    ensure_finite("delta", delta)?;
    if !(1e-6..=PI - 1e-6).contains(&delta) {
        return Err(Error::domain("q11_theta needs delta in (1e-6, pi - 1e-6)"));
    }
    Ok(theta_value(t, Complex64::new(delta, 0.0), control))
}

fn theta_value(t: f64, delta: Complex64, control: &TruncationControl) -> KernelValue {
    let lq = log_q(t, delta, control.abs_tol);
    KernelValue::from_log(lq.re, Method::Theta, 1e-13, true)
}

/// log q_t(cos δ) for complex δ with Re δ in [0, π]; the imaginary part
/// carries the phase.
pub(crate) fn log_q(t: f64, delta: Complex64, abs_tol: f64) -> Complex64 {
    let abs_tol = abs_tol.min(1e-16);
    let (form, skip, rho0, rho_pi) = if t >= DUAL_FORM_T {
        (ThetaForm::Fourier, 5, 0.5, 0.5)
    } else {
        (ThetaForm::Images, 0, 2.0 * t.sqrt(), 6.0 * t)
    };
    let to_pi = delta - PI;
    let (log_scale, value) = if delta.norm() < rho0 {
        let (l, s) = v_taylor(t, Complex64::new(0.0, 0.0), 60, form, skip, abs_tol);
        (l, apply_singular(s, 1.0, delta))
    } else if to_pi.norm() < rho_pi {
        let (l, s) = v_taylor(t, Complex64::new(PI, 0.0), 76, form, skip, abs_tol);
        (l, apply_singular(s, -1.0, to_pi))
    } else {
        let (l, s) = v_taylor(t, delta, 6, form, skip, abs_tol);
        (l, apply_direct(s, delta))
    };
    25.0 * t + log_scale + value.ln()
}

fn apply_direct(mut f: Taylor, center: Complex64) -> Complex64 {
    let csc = Taylor::sin_about(center, f.len()).recip();
    let k = Complex64::new(-1.0 / (2.0 * PI), 0.0);
    for _ in 0..5 {
        f = f.deriv().mul(&csc);
        f.scale(k);
    }
    f.0[0]
}

/// Center at 0 (cos = 1) or π (cos = -1), where sin(center + ε) = cos·sin ε.
fn apply_singular(mut f: Taylor, cos_center: f64, eps: Complex64) -> Complex64 {
    let n = f.len();
    let mut sinc = Taylor::sin_about(Complex64::new(0.0, 0.0), n).shift_down();
    sinc.zero_odd();
    let inv_sinc = sinc.recip();
    let k = Complex64::new(-cos_center / (2.0 * PI), 0.0);
    f.zero_odd();
    for _ in 0..5 {
        f = f.deriv().shift_down().mul(&inv_sinc);
        f.scale(k);
        f.zero_odd();
    }
    f.eval(eps)
}

fn interior_coefficient(delta: f64) -> f64 {
    if delta < 1e-3 {
        25.0 - 20.0 / 3.0 - 4.0 * delta * delta / 9.0
    } else {
        25.0 - 20.0 * (delta.sin() - delta * delta.cos()) / (delta * delta * delta.sin())
    }
}

fn exterior_coefficient(y: f64) -> f64 {
    if y < 1e-3 {
        25.0 - 20.0 / 3.0 + 4.0 * y * y / 9.0
    } else {
        25.0 + 20.0 * (y.sinh() - y * y.cosh()) / (y * y * y.sinh())
    }
}

fn ratio_power(x: f64, s: f64) -> f64 {
    if x < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x / s
    }
}

fn interior_expansion(t: f64, delta: f64) -> f64 {
    let pre = ratio_power(delta, delta.sin()).powi(5);
    (4.0 * PI * t).powf(-5.5) * pre * (-delta * delta / (4.0 * t)).exp() * (1.0 + interior_coefficient(delta) * t)
}

fn exterior_expansion(t: f64, y: f64) -> f64 {
    let pre = if y < 1e-4 { 1.0 - y * y / 6.0 } else { y / y.sinh() }.powi(5);
    (4.0 * PI * t).powf(-5.5) * pre * (y * y / (4.0 * t)).exp() * (1.0 + exterior_coefficient(y) * t)
}

/// Two-term expansion inside the cut locus. The error band is 2·C·t² with C
/// read off against the exact value at 1.5t.
pub fn q11_small_time_interior(t: f64, delta: f64) -> Result<KernelValue> {
    check_t(t)?;
    ensure_finite("delta", delta)?;
    if !(0.0..=PI - 0.1).contains(&delta) {
        return Err(Error::domain("interior expansion needs delta in [0, pi - 0.1]"));
    }
    let value = interior_expansion(t, delta);
    let t2 = 1.5 * t;
    let exact = log_q(t2, Complex64::new(delta, 0.0), 1e-17).re.exp();
    let c = ((interior_expansion(t2, delta) - exact) / exact).abs() / (t2 * t2);
    Ok(KernelValue::new(value, Method::SmallTime, 2.0 * c * t * t * value, true))
}

/// Two-term expansion at the hyperbolic argument cosh y.
pub fn q11_small_time_exterior(t: f64, y: f64) -> Result<KernelValue> {
    check_t(t)?;
    ensure_finite("y", y)?;
    if y < 0.0 {
        return Err(Error::domain("exterior expansion needs y >= 0"));
    }
    let value = exterior_expansion(t, y);
    let t2 = 1.5 * t;
    let exact = log_q(t2, Complex64::new(0.0, y), 1e-17).re.exp();
    let c = ((exterior_expansion(t2, y) - exact) / exact).abs() / (t2 * t2);
    Ok(KernelValue::new(value, Method::SmallTime, 2.0 * c * t * t * value, true))
}

/// Exact q_t, choosing the spectral series where it converges cleanly and
/// the five-fold derivative formula otherwise.
pub fn q11(t: f64, argument: SphereArgument, control: &TruncationControl) -> Result<KernelValue> {
    check_t(t)?;
    match argument {
        SphereArgument::Cos(delta) => {
            ensure_finite("delta", delta)?;
            if !(0.0..=PI).contains(&delta) {
                return Err(Error::domain("delta must lie in [0, pi]"));
            }
            if t >= SPECTRAL_FLOOR_T {
                q11_spectral(t, delta.cos(), control)
            } else {
                Ok(theta_value(t, Complex64::new(delta, 0.0), control))
            }
        }
        SphereArgument::Cosh(y) => {
            ensure_finite("y", y)?;
            if y < 0.0 {
                return Err(Error::domain("y must be nonnegative"));
            }
            let m_star = y / (2.0 * t) + 10.0 / t.sqrt();
            if m_star <= control.max_terms as f64 && t >= SPECTRAL_FLOOR_T.min(1.0 / (y + 1.0)) {
                if let Ok(v) = q11_spectral(t, y.cosh(), control) {
                    return Ok(v);
                }
            }
            Ok(theta_value(t, Complex64::new(0.0, y), control))
        }
    }
}
