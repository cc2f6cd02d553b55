use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::spectral::{oct_eigenvalue, oct_weight, quat_eigenvalue, quat_weight};
use super::Calibration;
use crate::specfun::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumKind {
    Octonionic,
    Quaternionic,
}

/// One (m, k) mode of −L with its eigenvalue and multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub m: usize,
    pub k: usize,
    pub eigenvalue: f64,
    pub multiplicity: u64,
    /// Distance of the heat-trace multiplicity from the nearest integer.
    pub rounding_residual: f64,
}

/// Heat-trace multiplicity Vol · (calibrated weight) · (pole value of the
/// mode), as a float.
pub fn multiplicity(kind: SpectrumKind, m: usize, k: usize, calibration: &Calibration) -> f64 {
    let pi2 = PI * PI;
    let p_at_one = binomial(k + 3, 3);
    match kind {
        SpectrumKind::Octonionic => {
            let vol = 2.0 * pi2 * pi2 * pi2 * pi2 / 5040.0;
            vol * calibration.c_spec * oct_weight(k, m) * binomial(m + 5, 5) * p_at_one
        }
        SpectrumKind::Quaternionic => {
            let vol = pi2 * pi2 * pi2 / 60.0;
            vol * calibration.c_quat * quat_weight(k, m) * (m + 1) as f64 * p_at_one
        }
    }
}

/// All modes with eigenvalue ≤ cap, ordered by eigenvalue then (m, k).
pub fn spectrum(kind: SpectrumKind, cap: f64, calibration: &Calibration) -> Vec<SpectrumEntry> {
    let eig = |k: usize, m: usize| match kind {
        SpectrumKind::Octonionic => oct_eigenvalue(k, m),
        SpectrumKind::Quaternionic => quat_eigenvalue(k, m),
    };
    let mut out = Vec::new();
    if !(cap >= 0.0) {
        return out;
    }
    let mut m = 0;
    while 8.0 * m as f64 <= cap {
        let mut k = 0;
        while eig(k, m) <= cap {
            let mult = multiplicity(kind, m, k, calibration);
            let rounded = mult.round();
            out.push(SpectrumEntry {
                m,
                k,
                eigenvalue: eig(k, m),
                multiplicity: rounded.max(0.0) as u64,
                rounding_residual: (mult - rounded).abs(),
            });
            k += 1;
        }
        m += 1;
    }
    out.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue).then((a.m, a.k).cmp(&(b.m, b.k))));
    out
}
