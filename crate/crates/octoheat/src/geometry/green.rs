use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::{CylindricalPoint, Kernels};
use crate::quadrature::GaussLegendre;

/// Printed constant 2304/π⁸.
pub const PRINTED_GREEN_CONSTANT: f64 = 2304.0 / (PI * PI * PI * PI * PI * PI * PI * PI);

/// Mass term in -L + 40.
pub const GREEN_MASS: f64 = 40.0;

/// c_int/c_spec at which the integral and spectral forms coincide.
const INT_OVER_SPEC: f64 = PI * PI * PI * PI * PI * PI / 96.0;

const SPLIT_T: f64 = 0.2;
const PANELS: usize = 40;
const PANEL_ORDER: usize = 10;

/// (1 − 2cos r cos η + cos²r)^{-5}.
pub fn green_shape(p: CylindricalPoint) -> Result<f64> {
    let c = p.r.cos();
    let q = 1.0 - 2.0 * c * p.eta.cos() + c * c;
    if q <= 0.0 {
        return Err(Error::Pole);
    }
    Ok(q.powi(-5))
}

/// constant · (1 − 2cos r cos η + cos²r)^{-5}.
pub fn green(p: CylindricalPoint, constant: f64) -> Result<f64> {
    Ok(constant * green_shape(p)?)
}

/// ∫₀^∞ e^{-40t} p_oct(t) dt split at t = 0.2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceTransform {
    pub value: f64,
    pub short_time: f64,
    pub long_time: f64,
    pub error_estimate: f64,
}

/// Laplace transform of the kernel at s = 40, in the normalization of the
/// spectral series. The short-time part uses the integral representation on
/// log-spaced panels, rescaled by c_spec·(π⁶/96)/c_int; the tail is
/// integrated term-wise from the spectral series.
pub fn laplace_transform(kernels: &Kernels, p: CylindricalPoint) -> Result<LaplaceTransform> {
    green_shape(p)?;
    let delta = (p.r.cos() * p.eta.cos()).clamp(-1.0, 1.0).acos();
    // Below t_lo the kernel is under e^{-80} of its Gaussian envelope.
    let t_lo = (delta * delta / 320.0).clamp(1e-6, SPLIT_T / 10.0);
    let ratio = (SPLIT_T / t_lo).ln() / PANELS as f64;
    let rule = GaussLegendre::cached(PANEL_ORDER);
    let panels: Vec<Result<(f64, f64)>> = (0..PANELS)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (t_lo * (ratio * i as f64).exp(), t_lo * (ratio * (i + 1) as f64).exp());
            let mut sum = 0.0;
            let mut err = 0.0;
            for (t, w) in rule.on(a, b) {
                let v = kernels.p_oct_integral(t, p)?;
                sum += w * (-GREEN_MASS * t).exp() * v.value;
                err += w * (-GREEN_MASS * t).exp() * v.error_estimate;
            }
            Ok((sum, err))
        })
        .collect();
    let mut short_time = 0.0;
    let mut err = 0.0;
    for r in panels {
        let (s, e) = r?;
        short_time += s;
        err += e;
    }
    // Coarse-rule comparison on the same panels bounds the quadrature error.
    let coarse = {
        let rule = GaussLegendre::cached(PANEL_ORDER / 2);
        let vals: Vec<Result<f64>> = (0..PANELS)
            .into_par_iter()
            .map(|i| {
                let (a, b) = (t_lo * (ratio * i as f64).exp(), t_lo * (ratio * (i + 1) as f64).exp());
                let mut sum = 0.0;
                for (t, w) in rule.on(a, b) {
                    sum += w * (-GREEN_MASS * t).exp() * kernels.p_oct_integral(t, p)?.value;
                }
                Ok(sum)
            })
            .collect();
        let mut total = 0.0;
        for v in vals {
            total += v?;
        }
        total
    };
    let cal = kernels.calibration;
    let scale = cal.c_spec * INT_OVER_SPEC / cal.c_int;
    let (short_time, err, coarse) = (scale * short_time, scale * err, scale * coarse);
    let tail = kernels.p_oct_laplace_tail(SPLIT_T, GREEN_MASS, p)?;
    Ok(LaplaceTransform {
        value: short_time + tail.value,
        short_time,
        long_time: tail.value,
        error_estimate: err + tail.error_estimate + (short_time - coarse).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{apply_radial_sublaplacian, default_step};

    fn pt(r: f64, eta: f64) -> CylindricalPoint {
        CylindricalPoint::new(r, eta).unwrap()
    }

    #[test]
    fn printed_value_at_equator() {
        let v = green(pt(PI / 3.0, PI / 2.0), PRINTED_GREEN_CONSTANT).unwrap();
        let expect = 2304.0 * 1024.0 / (3125.0 * PI.powi(8));
        assert!((v / expect - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pole() {
        assert!(matches!(green_shape(pt(0.0, 0.0)), Err(Error::Pole)));
        assert!(green_shape(pt(1e-3, 1e-3)).unwrap() > 1e20);
    }

    #[test]
    fn solves_massive_equation() {
        let g = |r: f64, e: f64| {
            let c = r.cos();
            (1.0 - 2.0 * c * e.cos() + c * c).powi(-5)
        };
        for &(r, e) in &[(0.6, 1.0), (0.3, 2.0), (1.1, 0.5), (0.8, 2.8)] {
            let p = pt(r, e);
            let lg = apply_radial_sublaplacian(g, p, default_step(p)).unwrap();
            let res = (-lg + GREEN_MASS * g(r, e)).abs() / (GREEN_MASS * g(r, e));
            assert!(res < 1e-4, "{r} {e} {res}");
        }
    }
}
