use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::CylindricalPoint;

/// Printed measure constant 56π⁷/Γ(8).
pub const PRINTED_MEASURE_CONSTANT: f64 = 56.0 * PI * PI * PI * PI * PI * PI * PI / 5040.0;

/// c_μ with total mass Vol(S¹⁵) = 2π⁸/7!, from ∫sin⁷cos⁷ = 1/280 and ∫sin⁶ = 5π/16.
pub fn measure_constant() -> f64 {
    let vol = 2.0 * PI.powi(8) / 5040.0;
    vol / (1.0 / 280.0 * 5.0 * PI / 16.0)
}

/// c_μ sin⁷r cos⁷r sin⁶η.
pub fn measure_density(p: CylindricalPoint, c_mu: f64) -> f64 {
    let (sr, cr) = p.r.sin_cos();
    c_mu * (sr * cr).powi(7) * p.eta.sin().powi(6)
}

/// Cosine of the Riemannian distance to the pole.
pub fn riemannian_cos_delta(p: CylindricalPoint) -> f64 {
    p.r.cos() * p.eta.cos()
}

/// Step for the five-point stencils, shrunk near the coordinate axes.
pub fn default_step(p: CylindricalPoint) -> f64 {
    let gap = p.r.min(PI / 2.0 - p.r).min(p.eta).min(PI - p.eta);
    (1e-2 * gap).max(1e-3)
}

struct Partials {
    fr: f64,
    frr: f64,
    fe: f64,
    fee: f64,
}

fn partials(f: &impl Fn(f64, f64) -> f64, p: CylindricalPoint, h: f64) -> Result<Partials> {
    if !(h > 0.0) {
        return Err(Error::domain("finite-difference step must be positive"));
    }
    let (r, e) = (p.r, p.eta);
    if r - 2.0 * h <= 0.0 || r + 2.0 * h >= PI / 2.0 || e - 2.0 * h <= 0.0 || e + 2.0 * h >= PI {
        return Err(Error::domain(format!("point ({r}, {e}) within 2h of the coordinate boundary, h = {h}")));
    }
    let f0 = f(r, e);
    let d1 = |a: f64, b: f64, c: f64, d: f64| (-a + 8.0 * b - 8.0 * c + d) / (12.0 * h);
    let d2 = |a: f64, b: f64, c: f64, d: f64| (-a + 16.0 * b - 30.0 * f0 + 16.0 * c - d) / (12.0 * h * h);
    let (rp2, rp1, rm1, rm2) = (f(r + 2.0 * h, e), f(r + h, e), f(r - h, e), f(r - 2.0 * h, e));
    let (ep2, ep1, em1, em2) = (f(r, e + 2.0 * h), f(r, e + h), f(r, e - h), f(r, e - 2.0 * h));
    Ok(Partials {
        fr: d1(rp2, rp1, rm1, rm2),
        frr: d2(rp2, rp1, rm1, rm2),
        fe: d1(ep2, ep1, em1, em2),
        fee: d2(ep2, ep1, em1, em2),
    })
}

/// ∂²_r + (7cot r − 7tan r)∂_r + tan²r(∂²_η + 6cot η ∂_η) by fourth-order
/// central differences with step h.
pub fn apply_radial_sublaplacian(f: impl Fn(f64, f64) -> f64, p: CylindricalPoint, h: f64) -> Result<f64> {
    let d = partials(&f, p, h)?;
    let (tr, ce) = (p.r.tan(), 1.0 / p.eta.tan());
    Ok(d.frr + 7.0 * (1.0 / tr - tr) * d.fr + tr * tr * (d.fee + 6.0 * ce * d.fe))
}

/// S¹¹ analogue ∂²_r + (7cot r − 3tan r)∂_r + tan²r(∂²_η + 2cot η ∂_η).
pub fn apply_quaternionic_sublaplacian(f: impl Fn(f64, f64) -> f64, p: CylindricalPoint, h: f64) -> Result<f64> {
    let d = partials(&f, p, h)?;
    let (tr, ce) = (p.r.tan(), 1.0 / p.eta.tan());
    Ok(d.frr + (7.0 / tr - 3.0 * tr) * d.fr + tr * tr * (d.fee + 2.0 * ce * d.fe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::GaussLegendre;

    fn pt(r: f64, eta: f64) -> CylindricalPoint {
        CylindricalPoint::new(r, eta).unwrap()
    }

    #[test]
    fn constants_kill_operator() {
        let v = apply_radial_sublaplacian(|_, _| 1.0, pt(0.6, 1.0), 1e-2).unwrap();
        assert!(v.abs() < 1e-10);
    }

    #[test]
    fn first_eigenfunction() {
        let f = |r: f64, e: f64| r.cos() * e.cos();
        for &(r, e) in &[(0.6, 1.0), (0.3, 2.5), (1.2, 0.4)] {
            let p = pt(r, e);
            let v = apply_radial_sublaplacian(f, p, 1e-3).unwrap();
            assert!((v + 8.0 * f(r, e)).abs() < 1e-8, "{v}");
        }
    }

    #[test]
    fn quaternionic_first_eigenfunction() {
        // cos r · U_1(cos η)/2 = cos r cos η is a λ = 8 mode on S¹¹ as well.
        let f = |r: f64, e: f64| r.cos() * e.cos();
        let p = pt(0.5, 1.3);
        let v = apply_quaternionic_sublaplacian(f, p, 1e-3).unwrap();
        assert!((v + 8.0 * f(p.r, p.eta)).abs() < 1e-8);
    }

    #[test]
    fn boundary_rejected() {
        assert!(apply_radial_sublaplacian(|_, _| 1.0, pt(0.001, 1.0), 1e-3).is_err());
        assert!(apply_radial_sublaplacian(|_, _| 1.0, pt(0.5, std::f64::consts::PI - 1e-3), 1e-3).is_err());
    }

    #[test]
    fn measure_total_mass() {
        let c = measure_constant();
        assert!((c / (16.0 * PI.powi(7) / 45.0) - 1.0).abs() < 1e-14);
        assert!((c / PRINTED_MEASURE_CONSTANT - 32.0).abs() < 1e-12);
        let gl = GaussLegendre::new(40);
        let mut total = 0.0;
        for (r, wr) in gl.on(0.0, PI / 2.0) {
            for (e, we) in gl.on(0.0, PI) {
                total += wr * we * measure_density(CylindricalPoint { r, eta: e }, c);
            }
        }
        assert!((total / (2.0 * PI.powi(8) / 5040.0) - 1.0).abs() < 1e-13);
        assert_eq!(measure_density(pt(0.0, 1.0), c), 0.0);
        assert_eq!(measure_density(pt(0.7, 0.0), c), 0.0);
    }

    #[test]
    fn cos_delta_values() {
        assert_eq!(riemannian_cos_delta(pt(0.0, 0.0)), 1.0);
        assert!(riemannian_cos_delta(pt(PI / 3.0, PI / 2.0)).abs() < 1e-16);
        assert_eq!(riemannian_cos_delta(pt(0.5, 1.0)), 0.5f64.cos() * 1.0f64.cos());
    }
}
