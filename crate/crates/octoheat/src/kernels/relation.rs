use super::spectral::{double_series, quat_eigenvalue, quat_weight, FiberRow, SeriesSum};
use super::CylindricalPoint;
use crate::error::Result;
use crate::specfun::{binomial, TruncationControl};

/// U_m(cos η) = sin((m+1)η)/sin η and its first two η-derivatives.
pub fn chebyshev_u_derivatives(m: usize, eta: f64) -> (f64, f64, f64) {
    let n = (m + 1) as f64;
    let (s, c) = eta.sin_cos();
    let (sn, cn) = (n * eta).sin_cos();
    let u = sn / s;
    let du = (n * cn - u * c) / s;
    let d2u = (-n * n * sn - 2.0 * du * c + u * s) / s;
    (u, du, d2u)
}

/// (csc²η ∂² − cos η csc³η ∂) applied to U_m(cos η).
pub fn bridge_operator_on_chebyshev(m: usize, eta: f64) -> f64 {
    let (_, du, d2u) = chebyshev_u_derivatives(m, eta);
    let (s, c) = eta.sin_cos();
    d2u / (s * s) - c * du / (s * s * s)
}

struct BridgedRow {
    eta: f64,
}

impl FiberRow for BridgedRow {
    fn value(&mut self, m: usize) -> f64 {
        if m < 2 {
            0.0
        } else {
            bridge_operator_on_chebyshev(m, self.eta)
        }
    }

    fn bound(&self, m: usize) -> f64 {
        8.0 * binomial(m + 3, 5)
    }
}

/// Quaternionic series with the bridging operator applied term-wise.
pub(crate) fn bridged_quat_series(t: f64, p: CylindricalPoint, control: &TruncationControl) -> Result<SeriesSum> {
    double_series(t, p, control, 1.0, 1.0, quat_weight, quat_eigenvalue, BridgedRow { eta: p.eta }, "bridged quaternionic series")
}
