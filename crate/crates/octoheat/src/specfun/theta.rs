use num_complex::Complex64;
use std::f64::consts::PI;

use super::jet::{Jet5, Taylor};
use crate::error::{Error, Result};

/// Representation used to sum V(t, δ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaForm {
    /// Wrapped Gaussian images e^{-(δ-2πk)²/4t}; best for small t.
    Images,
    /// Dual Fourier series (1/2π) Σ e^{-n²t} e^{inδ}; best for large t.
    Fourier,
}

/// V(t, δ) and its δ-derivatives up to `order` (≤ 5), for real or purely
/// imaginary δ.
pub fn theta_v(t: f64, delta: Complex64, order: usize) -> Result<Jet5> {
    if order > 5 {
        return Err(Error::Contract(format!("theta_v order {order} exceeds 5")));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain("theta_v needs t > 0"));
    }
    if !(delta.re.is_finite() && delta.im.is_finite()) {
        return Err(Error::domain("theta_v needs a finite delta"));
    }
    if delta.re != 0.0 && delta.im != 0.0 {
        return Err(Error::domain("theta_v accepts only real or purely imaginary delta"));
    }
    let (log_scale, series) = v_taylor(t, delta, order + 1, ThetaForm::Images, 0, 1e-17);
    let scale = log_scale.exp();
    let d: Vec<Complex64> = series.derivatives().into_iter().map(|z| z * scale).collect();
    let jet = Jet5::from_derivatives(&d);
    if !jet.is_finite() {
        return Err(Error::domain("theta_v overflow"));
    }
    Ok(jet)
}

/// Taylor series of V about `center`, as (log scale, coefficients) with
/// V(center + ε) = exp(log scale) · Σ c_j ε^j. `skip_below` drops the
/// Fourier modes |n| < skip_below (ignored for images).
pub(crate) fn v_taylor(
    t: f64,
    center: Complex64,
    n: usize,
    form: ThetaForm,
    skip_below: usize,
    abs_tol: f64,
) -> (Complex64, Taylor) {
    match form {
        ThetaForm::Images => images(t, center, n, abs_tol),
        ThetaForm::Fourier => fourier(t, center, n, skip_below),
    }
}

fn images(t: f64, center: Complex64, n: usize, abs_tol: f64) -> (Complex64, Taylor) {
    let tail = 2.0 * (t * (1.0 / abs_tol).ln()).sqrt();
    let kmax = ((center.re.abs() + center.im.abs() + tail) / (2.0 * PI)).ceil() as i64 + 2;
    let log_scale = -center * center / (4.0 * t) - 0.5 * (4.0 * PI * t).ln();
    let mut sum = Taylor::zeros(n);
    let mut quad = Taylor::zeros(n);
    for k in -kmax..=kmax {
        let b = center - 2.0 * PI * k as f64;
        let rel = PI * k as f64 * (center - PI * k as f64) / t;
        if rel.re < -745.0 {
            continue;
        }
        if n > 1 {
            quad.0[1] = -b / (2.0 * t);
        }
        if n > 2 {
            quad.0[2] = Complex64::new(-1.0 / (4.0 * t), 0.0);
        }
        let g = quad.exp();
        sum.add_scaled(&g, rel.exp());
    }
    (log_scale, sum)
}

fn fourier(t: f64, center: Complex64, n: usize, skip_below: usize) -> (Complex64, Taylor) {
    let y = center.im.abs();
    if !center.re.is_finite() || !y.is_finite() {
        let mut nan = Taylor::zeros(n);
        nan.0[0] = Complex64::new(f64::NAN, f64::NAN);
        return (Complex64::new(f64::NAN, 0.0), nan);
    }
    let expo = |m: f64| -m * m * t + m * y;
    let first = skip_below as f64;
    let peak = (y / (2.0 * t)).max(first);
    let log_scale = expo(peak) - (2.0 * PI).ln();
    let mut sum = Taylor::zeros(n);
    let mut m = skip_below;
    loop {
        let mf = m as f64;
        if mf > peak && expo(mf) < log_scale + (2.0 * PI).ln() - 45.0 {
            break;
        }
        let signs: &[f64] = if m == 0 { &[1.0] } else { &[1.0, -1.0] };
        for &s in signs {
            let freq = Complex64::new(0.0, s * mf);
            let lead = (-mf * mf * t + freq * center) - (log_scale + (2.0 * PI).ln());
            let mut coef = lead.exp();
            for j in 0..n {
                sum.0[j] += coef;
                coef = coef * freq / (j + 1) as f64;
            }
        }
        m += 1;
    }
    (Complex64::new(log_scale, 0.0), sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn even_in_delta() {
        let a = theta_v(0.3, re(0.8), 0).unwrap();
        let b = theta_v(0.3, re(-0.8), 0).unwrap();
        assert!((a.d0 - b.d0).norm() < 1e-15);
    }

    #[test]
    fn odd_derivative_vanishes_at_origin() {
        let j = theta_v(0.1, re(0.0), 5).unwrap();
        assert!(j.d1.norm() < 1e-15);
        assert!(j.d3.norm() < 1e-12);
    }

    #[test]
    fn heat_equation_in_t() {
        let (t, d, h) = (0.5, 1.0, 1e-5);
        let dt = (theta_v(t + h, re(d), 0).unwrap().d0 - theta_v(t - h, re(d), 0).unwrap().d0).re / (2.0 * h);
        let d2 = theta_v(t, re(d), 2).unwrap().d2.re;
        assert!((dt - d2).abs() < 1e-10);
    }

    #[test]
    fn images_and_fourier_agree() {
        for &(t, d) in &[(0.3, 0.4), (1.0, 2.5), (0.2, 3.0)] {
            let (la, sa) = v_taylor(t, re(d), 6, ThetaForm::Images, 0, 1e-17);
            let (lb, sb) = v_taylor(t, re(d), 6, ThetaForm::Fourier, 0, 1e-17);
            for j in 0..6 {
                let a = sa.0[j] * la.exp();
                let b = sb.0[j] * lb.exp();
                assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()), "t={t} d={d} j={j}: {a} {b}");
            }
        }
    }

    #[test]
    fn order_above_five_rejected() {
        assert!(matches!(theta_v(0.1, re(0.2), 6), Err(Error::Contract(_))));
    }

    #[test]
    fn imaginary_argument() {
        let j = theta_v(0.2, Complex64::new(0.0, 0.5), 1).unwrap();
        assert!(j.d0.im.abs() < 1e-15 && j.d0.re > 0.0);
    }
}
