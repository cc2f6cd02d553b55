use crate::error::{ensure_finite, Error, Result};
use crate::quadrature::GaussLegendre;

/// Binomial coefficient as a float; exact for the magnitudes used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round_if_small()
}

trait RoundIfSmall {
    fn round_if_small(self) -> Self;
}

impl RoundIfSmall for f64 {
    fn round_if_small(self) -> f64 {
        if self < 9.0e15 {
            self.round()
        } else {
            self
        }
    }
}

/// Stateful forward recurrence producing P_0, P_1, ... of one Jacobi family.
#[derive(Debug, Clone)]
pub struct JacobiRecurrence {
    alpha: f64,
    beta: f64,
    x: f64,
    n: usize,
    prev: f64,
    cur: f64,
}

impl JacobiRecurrence {
    pub fn new(alpha: f64, beta: f64, x: f64) -> Self {
        JacobiRecurrence { alpha, beta, x, n: 0, prev: 0.0, cur: 1.0 }
    }

    /// Degree of the value returned by `current`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn current(&self) -> f64 {
        self.cur
    }

    pub fn advance(&mut self) -> f64 {
        let (a, b, x) = (self.alpha, self.beta, self.x);
        let n = (self.n + 1) as f64;
        let next = if self.n == 0 {
            (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
        } else {
            let s = 2.0 * n + a + b;
            let c0 = 2.0 * n * (n + a + b) * (s - 2.0);
            let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
            let c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
            (c1 * self.cur - c2 * self.prev) / c0
        };
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        next
    }
}

/// Jacobi polynomial P_k^{(alpha, beta)}(x). Arguments outside [-1, 1] are
/// evaluated as the polynomial continuation.
pub fn jacobi_p(k: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    ensure_finite("alpha", alpha)?;
    ensure_finite("beta", beta)?;
    if alpha <= -1.0 || beta <= -1.0 {
        return Err(Error::domain("jacobi_p needs alpha, beta > -1"));
    }
    let mut rec = JacobiRecurrence::new(alpha, beta, x);
    for _ in 0..k {
        rec.advance();
    }
    Ok(rec.current())
}

/// Gegenbauer polynomial C_m^lambda(x) for any real x.
pub fn gegenbauer_c(m: usize, lambda: f64, x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    ensure_finite("lambda", lambda)?;
    if lambda <= 0.0 {
        return Err(Error::domain("gegenbauer_c needs lambda > 0"));
    }
    Ok(*gegenbauer_sequence(m, lambda, x).last().expect("non-empty"))
}

/// C_0^lambda(x), ..., C_m^lambda(x).
pub fn gegenbauer_sequence(m: usize, lambda: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    out.push(1.0);
    if m == 0 {
        return out;
    }
    out.push(2.0 * lambda * x);
    for n in 2..=m {
        let nf = n as f64;
        let v = (2.0 * x * (nf + lambda - 1.0) * out[n - 1] - (nf + 2.0 * lambda - 2.0) * out[n - 2]) / nf;
        out.push(v);
    }
    out
}

/// C_m^3(1) = C(m+5, 5), the pole value normalizing h_m.
pub fn zonal_pole_value(m: usize) -> f64 {
    binomial(m + 5, 5)
}

/// Normalized zonal eigenfunction of the S⁷ Laplacian, h_m(0) = 1.
pub fn h_m(m: usize, eta: f64) -> Result<f64> {
    ensure_finite("eta", eta)?;
    if !(0.0..=std::f64::consts::PI).contains(&eta) {
        return Err(Error::domain("h_m needs eta in [0, pi]"));
    }
    Ok(gegenbauer_c(m, 3.0, eta.cos())? / zonal_pole_value(m))
}

/// h_m from its Laplace-type integral, by Gauss–Legendre of order max(32, 2m).
pub fn h_m_laplace(m: usize, eta: f64, rel_tol: f64) -> Result<f64> {
    ensure_finite("eta", eta)?;
    if !(0.0..=std::f64::consts::PI).contains(&eta) {
        return Err(Error::domain("h_m needs eta in [0, pi]"));
    }
    let (c, s) = (eta.cos(), eta.sin());
    let eval = |order: usize| {
        let rule = GaussLegendre::cached(order);
        15.0 / 16.0
            * rule.integrate(0.0, std::f64::consts::PI, |phi| {
                let z = num_complex::Complex64::new(c, s * phi.cos());
                z.powu(m as u32).re * phi.sin().powi(5)
            })
    };
    let order = 32.max(2 * m);
    let v = eval(order);
    let check = eval(order + 16);
    let residual = (v - check).abs();
    if residual > rel_tol * check.abs().max(1e-300) && residual > 1e-15 {
        return Err(Error::accuracy("h_m Laplace quadrature", residual));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn jacobi_low_degree() {
        assert_eq!(jacobi_p(0, 3.0, 7.0, 0.42).unwrap(), 1.0);
        for m in 0..6 {
            let v = jacobi_p(2, 3.0, m as f64 + 3.0, 1.0).unwrap();
            assert!((v - 10.0).abs() < 1e-12);
        }
        assert!((jacobi_p(1, 3.0, 4.0, 0.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn jacobi_rejects_nonfinite() {
        assert!(matches!(jacobi_p(3, 3.0, 3.0, f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer_c(0, 5.0, 7.3).unwrap(), 1.0);
        assert!((gegenbauer_c(1, 5.0, 0.3).unwrap() - 3.0).abs() < 1e-15);
        assert!((gegenbauer_c(4, 5.0, 1.0).unwrap() - binomial(13, 4)).abs() < 1e-9);
    }

    #[test]
    fn h_m_values() {
        assert!((h_m(17, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(h_m(1, PI / 2.0).unwrap().abs() < 1e-15);
        assert!((h_m_laplace(17, 0.0, 1e-12).unwrap() - 1.0).abs() < 1e-13);
        assert!(h_m_laplace(1, PI / 2.0, 1e-12).unwrap().abs() < 1e-14);
    }

    #[test]
    fn h_2_eigenvalue() {
        let eta = 1.0;
        let h = 1e-4;
        let f = |x: f64| h_m(2, x).unwrap();
        let d2 = (f(eta + h) - 2.0 * f(eta) + f(eta - h)) / (h * h);
        let d1 = (f(eta + h) - f(eta - h)) / (2.0 * h);
        let lhs = d2 + 6.0 / eta.tan() * d1;
        assert!((lhs + 16.0 * f(eta)).abs() < 1e-5);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(13, 4), 715.0);
        assert_eq!(binomial(3, 5), 0.0);
        assert_eq!(binomial(10, 0), 1.0);
    }
}
