//! Integral representations against the S¹¹ heat kernel.
//!
//! Both kernels have the form ∫₀^∞ Im H(y) dy with H entire and
//! H(-ȳ) = -conj H(y). At small t the integrand on the real line is
//! exponentially larger than the result, so the path is moved to
//! Im y = c, with c minimizing the exponent of |H(ic)|, and the sum is kept
//! in log-scaled form.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::fiber::{g_real, log_oct_analytic, log_quat_analytic, quat_weight_real};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::specfun::TruncationControl;
use crate::sphere_heat::log_q;

const REAL_LINE_ETA: f64 = 0.5;
const PANEL_ORDER: usize = 20;
const CHUNK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fiber {
    Oct,
    Quat,
}

/// log of the integral and a relative error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LineIntegral {
    pub log_value: f64,
    pub rel_error: f64,
}

/// Principal δ with cos δ = z, Re δ ∈ [0, π], polished by Newton steps.
pub(crate) fn acos_principal(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let root = Complex64::i() * (one - z).sqrt() * (one + z).sqrt();
    let (w1, w2) = (z + root, z - root);
    let mut d = if w1.norm() >= w2.norm() { -Complex64::i() * w1.ln() } else { Complex64::i() * w2.ln() };
    for _ in 0..3 {
        let s = d.sin();
        if s.norm() < 1e-3 {
            break;
        }
        let step = (d.cos() - z) / s;
        d += step;
        if step.norm() < 1e-17 * d.norm().max(1.0) {
            break;
        }
    }
    if d.re < 0.0 {
        d = -d;
    }
    if d.re > PI {
        d = 2.0 * PI - d;
    }
    d
}

/// Complex log of the part shared by both kernels:
/// e^{(η² − y²)/4t} sinh y q_t(cos r cosh y).
fn log_common(t: f64, cos_r: f64, eta: f64, y: Complex64, abs_tol: f64) -> Complex64 {
    let z = cos_r * y.cosh();
    let delta = acos_principal(z);
    (eta * eta - y * y) / (4.0 * t) + y.sinh().ln() + log_q(t, delta, abs_tol)
}

fn log_integrand(t: f64, cos_r: f64, eta: f64, y: Complex64, fiber: Fiber, real_line: bool, abs_tol: f64) -> Complex64 {
    if y.norm() == 0.0 {
        return Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    let common = log_common(t, cos_r, eta, y, abs_tol);
    let weight = if real_line {
        let w = match fiber {
            Fiber::Oct => g_real(t, eta, y.re),
            Fiber::Quat => quat_weight_real(t, eta, y.re),
        };
        Complex64::new(w, 0.0).ln() + Complex64::new(0.0, PI / 2.0)
    } else {
        match fiber {
            Fiber::Oct => log_oct_analytic(t, eta, y),
            Fiber::Quat => log_quat_analytic(t, eta, y),
        }
    };
    common + weight
}

/// Exponent of |H(ic)| without algebraic factors.
fn height_exponent(t: f64, cos_r: f64, eta: f64, c: f64) -> f64 {
    let delta = (cos_r * c.cos()).clamp(-1.0, 1.0).acos();
    (eta - c) * (eta - c) / (4.0 * t) + log_q(t, Complex64::new(delta, 0.0), 1e-17).re
}

fn best_height(t: f64, cos_r: f64, eta: f64) -> f64 {
    let n = 96;
    let f = |c: f64| height_exponent(t, cos_r, eta, c);
    let grid: Vec<f64> = (0..=n).map(|i| PI * i as f64 / n as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&c| f(c)).collect();
    let (mut i_best, mut v_best) = (0, f64::INFINITY);
    for (i, &v) in vals.iter().enumerate() {
        if v < v_best {
            v_best = v;
            i_best = i;
        }
    }
    let h = PI / n as f64;
    let mut lo = (grid[i_best] - h).max(0.0);
    let mut hi = (grid[i_best] + h).min(PI);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..40 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if f(a) < f(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    0.5 * (lo + hi)
}

/// ∫₀^∞ w(y) e^{(η² − y²)/4t} sinh y q_t(cos r cosh y) dy with w the fiber
/// weight of `fiber`.
pub(crate) fn fiber_integral(t: f64, r: f64, eta: f64, fiber: Fiber, control: &TruncationControl) -> Result<LineIntegral> {
    fiber_integral_scaled(t, r, eta, fiber, control, 1.0)
}

pub(crate) fn fiber_integral_scaled(
    t: f64,
    r: f64,
    eta: f64,
    fiber: Fiber,
    control: &TruncationControl,
    width_scale: f64,
) -> Result<LineIntegral> {
    let cos_r = r.cos();
    let real_line = eta <= (2.0 * t).min(REAL_LINE_ETA);
    let c = if real_line { 0.0 } else { best_height(t, cos_r, eta) };
    let delta0 = (cos_r * c.cos()).clamp(-1.0, 1.0).acos();
    let omega = (eta + 2.0 * c + 0.5) / (2.0 * t);
    let mut width = (0.5 * t.sqrt()).min(6.0 / omega).min(0.5 * (PI - delta0).max(2.0 * t));
    if !real_line {
        width = width.min(0.5 * delta0.max(t.sqrt()));
    }
    width *= width_scale;
    let rule = GaussLegendre::cached(PANEL_ORDER);
    let abs_tol = control.abs_tol;
    let tail_tol = control.rel_tol.min(1e-12) * 1e-2;
    let min_s = 4.0 * t.sqrt();

    let mut scale = f64::NEG_INFINITY;
    let mut acc = 0.0f64;
    let mut mass = 0.0f64;
    let mut quiet = 0usize;
    let mut panel = 0usize;
    loop {
        let start = panel;
        let logs: Vec<Vec<(Complex64, f64)>> = (start..start + CHUNK)
            .into_par_iter()
            .map(|j| {
                let a = j as f64 * width;
                rule.on(a, a + width)
                    .map(|(s, w)| (log_integrand(t, cos_r, eta, Complex64::new(s, c), fiber, real_line, abs_tol), w))
                    .collect()
            })
            .collect();
        for nodes in logs {
            let local_max = nodes.iter().map(|(l, _)| l.re).fold(f64::NEG_INFINITY, f64::max);
            if local_max > scale && local_max.is_finite() {
                let shift = (scale - local_max).exp();
                acc *= shift;
                mass *= shift;
                scale = local_max;
            }
            let mut panel_sum = 0.0;
            let mut panel_mass = 0.0;
            for (l, w) in &nodes {
                let v = (*l - scale).exp();
                if v.re.is_finite() {
                    panel_sum += w * v.im;
                    panel_mass += w * v.norm();
                }
            }
            acc += panel_sum;
            mass += panel_mass;
            panel += 1;
            let s_end = panel as f64 * width;
            if s_end > min_s && panel_mass <= tail_tol * acc.abs() {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= 4 {
                if !(acc > 0.0) {
                    return Err(Error::accuracy("integral representation lost positivity", mass / acc.abs()));
                }
                let rel_error = (1e-15 * mass / acc).max(panel_mass / acc);
                return Ok(LineIntegral { log_value: scale + acc.ln(), rel_error });
            }
        }
        if panel >= control.max_panels {
            return Err(Error::accuracy("integral representation panel budget", mass / acc.abs().max(1e-300)));
        }
    }
}
