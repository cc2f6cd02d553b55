use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::distance::{critical_value, phi_solver, ArccosBranch, Branch};
use crate::error::{Error, Result};
use crate::kernels::CylindricalPoint;
use crate::value::{KernelValue, Method};
use crate::quadrature::GaussLegendre;

const UPPER: f64 = 60.0;

/// Two-term constants of the on-diagonal expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticConstants {
    pub a: f64,
    pub b: f64,
    /// Quadrature error estimates for a and b.
    pub a_error: f64,
    pub b_error: f64,
}

fn y_over_sinh(y: f64) -> f64 {
    if y < 1e-4 {
        1.0 - y * y / 6.0
    } else {
        y / y.sinh()
    }
}

/// (sinh y − y cosh y)/(y² sinh y), which tends to −1/3.
fn bracket(y: f64) -> f64 {
    if y < 1e-2 {
        let y2 = y * y;
        -1.0 / 3.0 + y2 / 45.0 - 2.0 * y2 * y2 / 945.0
    } else {
        (y.sinh() - y * y.cosh()) / (y * y * y.sinh())
    }
}

fn composite(f: impl Fn(f64) -> f64, order: usize) -> f64 {
    let rule = GaussLegendre::cached(order);
    (0..UPPER as usize).map(|i| rule.integrate(i as f64, i as f64 + 1.0, &f)).sum()
}

fn constants_with(weight: impl Fn(f64) -> f64 + Copy) -> AsymptoticConstants {
    let fa = move |y: f64| weight(y) * y.powi(5) * y_over_sinh(y).powi(5);
    let fb = move |y: f64| weight(y) * 20.0 * (y.powi(5) * (2.0 + bracket(y)) - y.powi(3)) * y_over_sinh(y).powi(5);
    let (a, b) = (composite(fa, 30), composite(fb, 30));
    AsymptoticConstants { a, b, a_error: (a - composite(fa, 20)).abs(), b_error: (b - composite(fb, 20)).abs() }
}

/// A = ∫ y⁵ (y/sinh y)⁵ dy and the companion B, both on [0, 60].
pub fn asympt_constants() -> AsymptoticConstants {
    static CACHE: OnceLock<AsymptoticConstants> = OnceLock::new();
    *CACHE.get_or_init(|| constants_with(|_| 1.0))
}

/// The same integrals with the extra sinh y factor that the Laplace method on
/// the integral representation produces.
pub fn asympt_constants_weighted() -> AsymptoticConstants {
    static CACHE: OnceLock<AsymptoticConstants> = OnceLock::new();
    *CACHE.get_or_init(|| constants_with(|y| if y < 1e-8 { y } else { y.sinh() }))
}

/// Asymptotic values carry no error estimate.
fn term(log_value: f64) -> KernelValue {
    KernelValue::from_log(log_value, Method::Asymptotic, f64::NAN, false)
}

fn check_small_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain("t must be positive"));
    }
    Ok(())
}

/// (A + B t)/(5·2¹⁰ π⁸ t¹¹).
pub fn asympt_diagonal(t: f64) -> Result<KernelValue> {
    check_small_t(t)?;
    if t > 0.1 {
        return Err(Error::domain("diagonal expansion needs t <= 0.1"));
    }
    let c = asympt_constants();
    Ok(term((c.a + c.b * t).ln() - (5.0 * 1024.0 * PI.powi(8)).ln() - 11.0 * t.ln()))
}

/// On-diagonal expansion derived from the integral representation with
/// prefactor `c_int`; its t-power is −11 + O(t) with the weighted constants.
pub fn asympt_diagonal_weighted(t: f64, c_int: f64) -> Result<KernelValue> {
    check_small_t(t)?;
    if t > 0.1 {
        return Err(Error::domain("diagonal expansion needs t <= 0.1"));
    }
    let c = asympt_constants_weighted();
    let pre = c_int * 16.0 * PI * PI / (15.0 * 2f64.powi(18) * PI.powi(8));
    Ok(term(pre.ln() + (c.a + c.b * t).ln() - 11.0 * t.ln()))
}

/// Leading vertical-axis term, exponent η(2π − η).
pub fn asympt_vertical(t: f64, eta: f64) -> Result<KernelValue> {
    check_small_t(t)?;
    if !(eta > 0.1 && eta < PI - 0.1) {
        return Err(Error::domain("vertical expansion needs eta in (0.1, pi - 0.1)"));
    }
    let poly = eta.powi(3) * (PI - eta).powi(3) * (1.0 - (2.0 * eta).cos());
    let log = -eta * (2.0 * PI - eta) / (4.0 * t) - 5.0 * eta.sin().ln() + poly.ln()
        - 3.0 * PI.ln()
        - 12.0 * 2f64.ln()
        - 11.0 * t.ln();
    Ok(term(log))
}

fn check_r(r: f64) -> Result<()> {
    if !(r > 0.1 && r < PI / 2.0 - 0.1) {
        return Err(Error::domain("horizontal expansion needs r in (0.1, pi/2 - 0.1)"));
    }
    Ok(())
}

/// 1 − r cot r with its series below r = 1e-3.
fn one_minus_r_cot(r: f64) -> f64 {
    if r < 1e-3 {
        r * r / 3.0 + r.powi(4) / 45.0
    } else {
        1.0 - r / r.tan()
    }
}

/// Horizontal-axis term with the printed prefactor 3/2⁷.
pub fn asympt_horizontal_printed(t: f64, r: f64) -> Result<KernelValue> {
    check_small_t(t)?;
    check_r(r)?;
    let x = one_minus_r_cot(r);
    let log = (3.0f64 / 128.0).ln() - 7.5 * (PI * t).ln() - 2.0 * r.cos().ln() - r * r / (4.0 * t)
        + 5.0 * (r / r.sin()).ln()
        - 3.5 * x.ln();
    Ok(term(log))
}

/// Horizontal-axis term from the Laplace method on the integral
/// representation with prefactor `c_int`.
pub fn asympt_horizontal(t: f64, r: f64, c_int: f64) -> Result<KernelValue> {
    check_small_t(t)?;
    check_r(r)?;
    let x = one_minus_r_cot(r);
    let k = c_int * PI * PI / 2048.0;
    let rc = r / r.tan();
    let log = k.ln() + 2.0 * rc.ln() + 5.0 * (r / r.sin()).ln() - 3.5 * x.ln() - r * r / (4.0 * t)
        - 7.5 * (PI * t).ln()
        - 2.0 * r.cos().ln();
    Ok(term(log))
}

struct Saddle {
    phi: f64,
    u: f64,
    a: f64,
    one_minus_u2: f64,
    d2: f64,
}

fn saddle(p: CylindricalPoint) -> Result<Saddle> {
    check_r(p.r)?;
    if !(0.0..PI - 0.1).contains(&p.eta) {
        return Err(Error::domain("off-diagonal expansion needs eta in [0, pi - 0.1)"));
    }
    let phi = phi_solver(p.r, p.eta, Branch::Principal)?;
    let u = p.r.cos() * phi.cos();
    let half = ((0.5 * (p.r + phi)).sin().powi(2) + (0.5 * (p.r - phi)).sin().powi(2)).sqrt();
    let a = 2.0 * (half / 2f64.sqrt()).min(1.0).asin();
    let one_minus_u2 = (1.0 - u) * (1.0 + u);
    let d2 = critical_value(p.r, p.eta, phi, ArccosBranch::Principal);
    Ok(Saddle { phi, u, a, one_minus_u2, d2 })
}

/// 1 − u·arccos(u)/√(1 − u²); must be positive for the square root.
fn root_argument(s: &Saddle) -> f64 {
    1.0 - s.u * s.a / s.one_minus_u2.sqrt()
}

/// Off-diagonal term with the printed prefactor and exponent at the principal
/// critical angle. `value` has the sign of sin φ, which is negative there;
/// `log_value` is ln|value|.
pub fn asympt_offdiagonal_printed(t: f64, p: CylindricalPoint) -> Result<KernelValue> {
    check_small_t(t)?;
    if p.eta == 0.0 {
        return asympt_horizontal_printed(t, p.r);
    }
    let s = saddle(p)?;
    let root = root_argument(&s);
    if !(root > 0.0) {
        return Err(Error::domain("square-root argument of the off-diagonal prefactor is not positive"));
    }
    let (r, eta, phi) = (p.r, p.eta, s.phi);
    let exponent = (phi + eta).powi(2) * r.tan().powi(2) / (4.0 * t * phi.sin().powi(2));
    let log = (3.0f64 / 128.0).ln() + phi.sin().abs().ln() + (eta * eta + phi * phi).ln() + 5.0 * s.a.ln()
        - exponent
        - 7.5 * (PI * t).ln()
        - 3.0 * eta.sin().ln()
        - 2.0 * r.cos().ln()
        - r.sin().ln()
        - 2.0 * s.one_minus_u2.ln()
        - 0.5 * root.ln();
    let mut v = term(log);
    v.value = v.value.copysign(phi.sin());
    Ok(v)
}

/// Off-diagonal term from the saddle point of the integral representation
/// with prefactor `c_int`; tends to `asympt_horizontal` as η → 0.
pub fn asympt_offdiagonal(t: f64, p: CylindricalPoint, c_int: f64) -> Result<KernelValue> {
    check_small_t(t)?;
    if p.eta == 0.0 {
        return asympt_horizontal(t, p.r, c_int);
    }
    let s = saddle(p)?;
    let root = root_argument(&s);
    if !(root > 0.0) {
        return Err(Error::domain("square-root argument of the off-diagonal prefactor is not positive"));
    }
    let (r, eta) = (p.r, p.eta);
    let psi = -s.phi;
    let k = c_int * PI * PI / 2048.0;
    let log = k.ln() + 2.0 * (eta - psi).abs().ln() + psi.sin().ln() + 5.0 * s.a.ln()
        - s.d2 / (4.0 * t)
        - 7.5 * (PI * t).ln()
        - 2.0 * r.cos().ln()
        - 3.0 * eta.sin().ln()
        - r.sin().ln()
        - 2.0 * s.one_minus_u2.ln()
        - 0.5 * root.ln();
    Ok(term(log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_values() {
        let c = asympt_constants();
        assert!((c.a - 2.749201181943448).abs() < 1e-10);
        assert!((c.b - 77.26252855264599).abs() < 1e-9);
        let w = asympt_constants_weighted();
        assert!((w.a - 14.56614055634655).abs() < 1e-9);
        assert!((w.b - 457.2847025713917).abs() < 1e-8);
        assert!(c.a_error < 1e-10 && c.b_error < 1e-10);
    }

    #[test]
    fn bracket_series_is_continuous() {
        let y: f64 = 1e-2;
        let direct = (y.sinh() - y * y.cosh()) / (y * y * y.sinh());
        assert!((bracket(y) - direct).abs() < 1e-9);
    }

    #[test]
    fn vertical_rate() {
        let eta: f64 = 1.0;
        let (t1, t2) = (1e-2, 5e-3);
        let l = |t: f64| asympt_vertical(t, eta).unwrap().log_value + 11.0 * t.ln();
        let rate = 4.0 * t1 * t2 * (l(t1) - l(t2)) / (t1 - t2);
        assert!((rate / (eta * (2.0 * PI - eta)) - 1.0).abs() < 1e-12, "{rate}");
    }

    #[test]
    fn offdiagonal_reduces_to_horizontal() {
        let c_int = 1.0 / (16.0 * PI * PI);
        for &r in &[0.3, 0.8, 1.2] {
            let t = 0.01;
            let h = asympt_horizontal(t, r, c_int).unwrap().value;
            let o = asympt_offdiagonal(t, CylindricalPoint::new(r, 1e-5).unwrap(), c_int).unwrap().value;
            assert!((o / h - 1.0).abs() < 1e-3, "{r} {}", o / h);
        }
    }

    #[test]
    fn printed_offdiagonal_is_negative_at_the_principal_root() {
        let v = asympt_offdiagonal_printed(0.01, CylindricalPoint::new(0.8, 1e-3).unwrap()).unwrap();
        let h = asympt_horizontal_printed(0.01, 0.8).unwrap();
        assert!(v.value < 0.0);
        assert!((v.value / h.value + 1.0497).abs() < 1e-3);
    }

    #[test]
    fn true_scale_constant() {
        let c_int = 1.0 / (16.0 * PI * PI);
        let k = c_int * PI * PI / 2048.0;
        assert!((k - 2f64.powi(-15)).abs() < 1e-20);
    }
}
