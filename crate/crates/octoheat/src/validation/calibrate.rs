use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{green_shape, laplace_transform, measure_constant, PRINTED_GREEN_CONSTANT};
use crate::kernels::{Calibration, CylindricalPoint, Kernels};
use crate::quadrature::GaussLegendre;
use crate::specfun::TruncationControl;

/// Grid-ratio spread above which a fit is a shape failure.
pub const SHAPE_TOLERANCE: f64 = 1e-4;

/// Nodes per axis for the measure integrals.
const MEASURE_NODES: usize = 48;

/// One fitted constant next to its printed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantFit {
    pub fitted: f64,
    pub printed: f64,
    /// fitted / printed.
    pub ratio: f64,
    /// (max − min)/mean of the pointwise ratios behind the fit; 0 for exact fits.
    pub spread: f64,
}

impl ConstantFit {
    fn new(fitted: f64, printed: f64, spread: f64) -> Self {
        ConstantFit { fitted, printed, ratio: fitted / printed, spread }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub c_mu: ConstantFit,
    pub c_spec: ConstantFit,
    pub c_quat: ConstantFit,
    pub c_int: ConstantFit,
    pub c_rel: ConstantFit,
    pub c_green: ConstantFit,
    /// Constraint name → achieved residual.
    pub residuals: BTreeMap<String, f64>,
    pub passed: bool,
}

impl CalibrationReport {
    pub fn calibration(&self) -> Calibration {
        Calibration {
            c_mu: self.c_mu.fitted,
            c_spec: self.c_spec.fitted,
            c_quat: self.c_quat.fitted,
            c_int: self.c_int.fitted,
            c_rel: self.c_rel.fitted,
            c_green: self.c_green.fitted,
            fitted: true,
        }
    }

    /// (name, fit) pairs in a fixed order.
    pub fn fits(&self) -> [(&'static str, ConstantFit); 6] {
        [
            ("c_mu", self.c_mu),
            ("c_spec", self.c_spec),
            ("c_quat", self.c_quat),
            ("c_int", self.c_int),
            ("c_rel", self.c_rel),
            ("c_green", self.c_green),
        ]
    }
}

/// Inputs of a calibration run.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationOptions {
    /// Constants the fits start from; the result does not depend on them
    /// beyond rounding.
    pub start: Calibration,
    pub control: TruncationControl,
    /// Points for the integral and relation ratio fits at t = 0.5.
    pub ratio_grid: Vec<CylindricalPoint>,
    /// Points for the Green constant fit.
    pub green_grid: Vec<CylindricalPoint>,
}

pub(crate) fn grid(rs: &[f64], etas: &[f64]) -> Vec<CylindricalPoint> {
    rs.iter().flat_map(|&r| etas.iter().map(move |&e| CylindricalPoint { r, eta: e })).collect()
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        let g = grid(&[0.2, 0.6, 1.0], &[0.3, 1.0, 2.0]);
        CalibrationOptions {
            start: Calibration::printed(),
            control: TruncationControl::default(),
            ratio_grid: g.clone(),
            green_grid: g,
        }
    }
}

/// sin⁷r cos⁷r sin⁶η for S¹⁵ and sin⁷r cos³r sin²η for S¹¹.
fn radial_density(quaternionic: bool, r: f64, eta: f64) -> f64 {
    let (s, c) = r.sin_cos();
    if quaternionic {
        s.powi(7) * c.powi(3) * eta.sin().powi(2)
    } else {
        s.powi(7) * c.powi(7) * eta.sin().powi(6)
    }
}

/// Constant making the S¹¹ radial density integrate to Vol(S¹¹) = π⁶/60.
pub fn quaternionic_measure_constant() -> f64 {
    4.0 * PI.powi(5) / 3.0
}

/// ∫∫ f(r, η) · density(r, η) dr dη over [0, π/2] × [0, π] by tensor
/// Gauss–Legendre.
fn integrate_rect(
    quaternionic: bool,
    nodes: usize,
    f: impl Fn(f64, f64) -> Result<f64> + Sync,
) -> Result<f64> {
    use rayon::prelude::*;
    let rule = GaussLegendre::cached(nodes);
    let rows: Vec<(f64, f64)> = rule.on(0.0, PI / 2.0).collect();
    let cols: Vec<(f64, f64)> = rule.on(0.0, PI).collect();
    let parts: Vec<Result<f64>> = rows
        .par_iter()
        .map(|&(r, wr)| {
            let mut s = 0.0;
            for &(e, we) in &cols {
                s += we * f(r, e)? * radial_density(quaternionic, r, e);
            }
            Ok(wr * s)
        })
        .collect();
    parts.into_iter().sum()
}

/// ∫ p_oct(t) dμ with the exact measure constant.
pub fn octonionic_mass(kernels: &Kernels, t: f64) -> Result<f64> {
    let c = measure_constant();
    Ok(c * integrate_rect(false, MEASURE_NODES, |r, e| {
        Ok(kernels.p_oct_spectral(t, CylindricalPoint { r, eta: e })?.value)
    })?)
}

/// ∫ p_quat(t) dμ on S¹¹.
pub fn quaternionic_mass(kernels: &Kernels, t: f64) -> Result<f64> {
    let c = quaternionic_measure_constant();
    Ok(c * integrate_rect(true, MEASURE_NODES, |r, e| {
        Ok(kernels.p_quat_spectral(t, CylindricalPoint { r, eta: e })?.value)
    })?)
}

/// Mean of a/b over the grid and the relative spread of the ratios.
fn ratio_fit(pairs: &[(f64, f64)]) -> (f64, f64) {
    let ratios: Vec<f64> = pairs.iter().map(|(a, b)| a / b).collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    (mean, (max - min) / mean.abs())
}

/// Fits every constant with the default grids.
pub fn calibrate() -> Result<CalibrationReport> {
    calibrate_with(&CalibrationOptions::default())
}

/// Fits c_mu, c_spec, c_quat, c_int, c_rel and c_green in that order. A fit
/// whose pointwise ratios spread by more than [`SHAPE_TOLERANCE`] is a shape
/// failure and returns [`Error::Calibration`].
pub fn calibrate_with(options: &CalibrationOptions) -> Result<CalibrationReport> {
    let printed = Calibration::printed();
    let mut residuals = BTreeMap::new();
    let mut cal = options.start;

    // Measure: Beta integrals 1/280 and 5π/16.
    let c_mu = measure_constant();
    let mass = c_mu * integrate_rect(false, MEASURE_NODES, |_, _| Ok(1.0))?;
    let vol15 = 2.0 * PI.powi(8) / 5040.0;
    residuals.insert("measure total mass".into(), (mass / vol15 - 1.0).abs());
    cal.c_mu = c_mu;

    // Spectral scales from unit mass at t = 1.
    let kernels = Kernels::new(options.control, cal);
    let c_spec = cal.c_spec / octonionic_mass(&kernels, 1.0)?;
    let c_quat = cal.c_quat / quaternionic_mass(&kernels, 1.0)?;
    cal.c_spec = c_spec;
    cal.c_quat = c_quat;
    residuals.insert("stationary value 2520/pi^8".into(), (c_spec * 420.0 / (2520.0 / PI.powi(8)) - 1.0).abs());
    residuals.insert("stationary value 60/pi^6".into(), (c_quat * 20.0 / (60.0 / PI.powi(6)) - 1.0).abs());

    // Integral and relation scales against the calibrated series at t = 0.5.
    let kernels = Kernels::new(options.control, cal);
    let mut int_pairs = Vec::new();
    let mut rel_pairs = Vec::new();
    for &p in &options.ratio_grid {
        let s = kernels.p_oct_spectral(0.5, p)?.value;
        int_pairs.push((s, kernels.p_oct_integral(0.5, p)?.value));
        rel_pairs.push((s, kernels.p_oct_from_quat(0.5, p)?.value));
    }
    let (int_ratio, int_spread) = ratio_fit(&int_pairs);
    let (rel_ratio, rel_spread) = ratio_fit(&rel_pairs);
    cal.c_int *= int_ratio;
    cal.c_rel *= rel_ratio;
    residuals.insert("integral/spectral ratio spread".into(), int_spread);
    residuals.insert("relation/spectral ratio spread".into(), rel_spread);

    // Green constant from the Laplace transform of the calibrated kernel.
    let kernels = Kernels::new(options.control, cal);
    let mut green_pairs = Vec::new();
    for &p in &options.green_grid {
        green_pairs.push((laplace_transform(&kernels, p)?.value, green_shape(p)?));
    }
    let (c_green, green_spread) = ratio_fit(&green_pairs);
    residuals.insert("laplace/green ratio spread".into(), green_spread);
    cal.c_green = c_green;

    let report = CalibrationReport {
        c_mu: ConstantFit::new(c_mu, printed.c_mu, 0.0),
        c_spec: ConstantFit::new(c_spec, printed.c_spec, 0.0),
        c_quat: ConstantFit::new(c_quat, printed.c_quat, 0.0),
        c_int: ConstantFit::new(cal.c_int, printed.c_int, int_spread),
        c_rel: ConstantFit::new(cal.c_rel, printed.c_rel, rel_spread),
        c_green: ConstantFit::new(c_green, PRINTED_GREEN_CONSTANT, green_spread),
        residuals,
        passed: true,
    };
    for (name, spread) in [("c_int", int_spread), ("c_rel", rel_spread), ("c_green", green_spread)] {
        if !(spread <= SHAPE_TOLERANCE) {
            return Err(Error::Calibration(format!("{name}: grid ratio spread {spread:e} exceeds {SHAPE_TOLERANCE:e}")));
        }
    }
    if report.fits().iter().any(|(_, f)| !(f.fitted.is_finite() && f.fitted > 0.0)) {
        return Err(Error::Calibration("fitted constant not positive and finite".into()));
    }
    Ok(report)
}
