use crate::error::{Error, Result};
use crate::kernels::CylindricalPoint;
use crate::specfun::{binomial, JacobiRecurrence, TruncationControl};

/// Unscaled partial sum with a bound on truncation and roundoff error.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    pub error: f64,
}

/// Fiber factor of row m and a bound on its modulus.
pub(crate) trait FiberRow {
    fn value(&mut self, m: usize) -> f64;
    fn bound(&self, m: usize) -> f64;
}

/// Generic double sum Σ_m fiber_m cos^m r Σ_k w(k,m) e^{-λ(k,m)t} P_k^{(3, m+shift)}(cos 2r).
pub(crate) fn double_series<R: FiberRow>(
    t: f64,
    p: CylindricalPoint,
    control: &TruncationControl,
    scale: f64,
    beta_shift: f64,
    weight: impl Fn(usize, usize) -> f64,
    eigenvalue: impl Fn(usize, usize) -> f64,
    mut fiber: R,
    context: &str,
) -> Result<SeriesSum> {
    let x = (2.0 * p.r).cos();
    let cr = p.r.cos();
    let mut cos_pow = 1.0;
    let mut sum = 0.0;
    let mut mass = 0.0;
    let mut quiet_rows = 0;
    let mut last_row_bound = f64::INFINITY;
    let mut prev_row_bound = f64::INFINITY;
    for m in 0..control.max_terms {
        if m > 0 {
            cos_pow *= cr;
        }
        let f_m = fiber.value(m);
        let f_bound = fiber.bound(m);
        let beta = m as f64 + beta_shift;
        let mut rec = JacobiRecurrence::new(3.0, beta, x);
        let mut row_sum = 0.0;
        let mut row_bound: f64 = 0.0;
        let mut quiet = 0;
        let mut prev_bound = f64::INFINITY;
        let mut converged = false;
        for k in 0..control.max_terms {
            let base = weight(k, m) * (-eigenvalue(k, m) * t).exp() * cos_pow;
            let pk = rec.current();
            let term = base * f_m * pk;
            row_sum += term;
            mass += term.abs();
            let p_max = binomial(k + (beta as usize).max(3), k);
            let bound = scale * base * f_bound * p_max;
            row_bound = row_bound.max(bound);
            if bound < control.threshold(scale * (sum + row_sum)) && bound <= prev_bound {
                quiet += 1;
                if quiet >= 3 {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
            prev_bound = bound;
            rec.advance();
        }
        if !converged {
            return Err(Error::accuracy(format!("{context}: inner series at m = {m}"), prev_bound));
        }
        sum += row_sum;
        if !sum.is_finite() {
            return Err(Error::accuracy(format!("{context}: overflow"), f64::INFINITY));
        }
        last_row_bound = row_bound;
        if row_bound < control.threshold(scale * sum) && row_bound <= prev_row_bound {
            quiet_rows += 1;
            if quiet_rows >= 3 {
                let roundoff = 16.0 * f64::EPSILON * mass;
                return Ok(SeriesSum { value: sum, error: 3.0 * row_bound / scale + roundoff });
            }
        } else {
            quiet_rows = 0;
        }
        prev_row_bound = row_bound;
    }
    Err(Error::accuracy(format!("{context}: outer series"), last_row_bound))
}

/// C_m^3(cos η) by recurrence; multiplied by the C(m+5,5)-free weight it
/// equals α_{k,m} h_m / scale.
struct ZonalRow {
    x: f64,
    prev: f64,
    cur: f64,
}

impl FiberRow for ZonalRow {
    fn value(&mut self, m: usize) -> f64 {
        match m {
            0 => {
                self.prev = 0.0;
                self.cur = 1.0;
            }
            1 => {
                self.prev = 1.0;
                self.cur = 6.0 * self.x;
            }
            _ => {
                let mf = m as f64;
                let next = (2.0 * self.x * (mf + 2.0) * self.cur - (mf + 4.0) * self.prev) / mf;
                self.prev = self.cur;
                self.cur = next;
            }
        }
        self.cur
    }

    fn bound(&self, m: usize) -> f64 {
        binomial(m + 5, 5)
    }
}

/// Chebyshev U_m(cos η) = sin((m+1)η)/sin η.
struct ChebyshevRow {
    x: f64,
    prev: f64,
    cur: f64,
}

impl FiberRow for ChebyshevRow {
    fn value(&mut self, m: usize) -> f64 {
        match m {
            0 => {
                self.prev = 0.0;
                self.cur = 1.0;
            }
            _ => {
                let next = 2.0 * self.x * self.cur - self.prev;
                self.prev = self.cur;
                self.cur = next;
            }
        }
        self.cur
    }

    fn bound(&self, m: usize) -> f64 {
        (m + 1) as f64
    }
}

pub(crate) fn oct_weight(k: usize, m: usize) -> f64 {
    let (kf, mf) = (k as f64, m as f64);
    (mf + 3.0) * (2.0 * kf + mf + 7.0) * binomial(k + m + 6, 3)
}

pub(crate) fn oct_eigenvalue(k: usize, m: usize) -> f64 {
    let (kf, mf) = (k as f64, m as f64);
    4.0 * (2.0 * mf + kf * (kf + mf + 7.0))
}

pub(crate) fn quat_weight(k: usize, m: usize) -> f64 {
    let (kf, mf) = (k as f64, m as f64);
    (2.0 * kf + mf + 5.0) * (mf + 1.0) * binomial(k + m + 4, 3)
}

pub(crate) fn quat_eigenvalue(k: usize, m: usize) -> f64 {
    let (kf, mf) = (k as f64, m as f64);
    4.0 * (kf * (kf + mf + 5.0) + 2.0 * mf)
}

/// Σ α_{k,m}/c_spec h_m(η) e^{-λt} cos^m r P_k^{(3,m+3)}(cos 2r).
pub(crate) fn oct_series(t: f64, p: CylindricalPoint, control: &TruncationControl) -> Result<SeriesSum> {
    let fiber = ZonalRow { x: p.eta.cos(), prev: 0.0, cur: 1.0 };
    double_series(t, p, control, 1.0, 3.0, oct_weight, oct_eigenvalue, fiber, "octonionic spectral series")
}

/// Σ β_{k,m}/c_quat e^{-λt} U_m(cos η) cos^m r P_k^{(3,m+1)}(cos 2r).
pub(crate) fn quat_series(t: f64, p: CylindricalPoint, control: &TruncationControl) -> Result<SeriesSum> {
    let fiber = ChebyshevRow { x: p.eta.cos(), prev: 0.0, cur: 1.0 };
    double_series(t, p, control, 1.0, 1.0, quat_weight, quat_eigenvalue, fiber, "quaternionic spectral series")
}

/// Σ α_{k,m}/c_spec h_m(η) cos^m r P_k e^{-λ t0}/(s + λ), the term-wise
/// integral of e^{-(s+λ)t} over [t0, ∞) without the e^{-s t0} factor.
pub(crate) fn oct_resolvent_series(
    t0: f64,
    s: f64,
    p: CylindricalPoint,
    control: &TruncationControl,
) -> Result<SeriesSum> {
    let fiber = ZonalRow { x: p.eta.cos(), prev: 0.0, cur: 1.0 };
    let weight = |k: usize, m: usize| oct_weight(k, m) / (s + oct_eigenvalue(k, m));
    double_series(t0, p, control, 1.0, 3.0, weight, oct_eigenvalue, fiber, "octonionic resolvent series")
}
