use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::{CylindricalPoint, Kernels};

/// Small times for the heat-kernel distance oracle.
pub const DEFAULT_ORACLE_TIMES: [f64; 6] = [8e-3, 4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4];

const SCAN: usize = 512;

/// Sign range of the critical angle φ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// φ ∈ (−π, 0].
    Principal,
    /// φ ∈ [0, π).
    Reflected,
    /// On an axis, where the distance is explicit.
    ClosedForm,
}

/// Which determination of arccos enters the critical-point equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArccosBranch {
    Principal,
    /// 2π − arccos.
    Shifted,
}

/// Formula used to turn a critical angle into d².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalForm {
    /// Phase value arccos²(u) − (φ + η)².
    Phase,
    /// (η − φ)² + arccos²(u).
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceCandidate {
    pub phi: f64,
    pub branch: Branch,
    pub arccos: ArccosBranch,
    pub form: CriticalForm,
    pub d2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub d: f64,
    pub phi: f64,
    pub branch: Branch,
    pub arccos: ArccosBranch,
    pub form: CriticalForm,
    /// |d² − oracle| / oracle, when the oracle was run.
    pub oracle_gap: Option<f64>,
    /// (φ + η)² tan²r / sin²φ at the selected root.
    pub d2_simplified: f64,
}

/// arccos(cos r cos φ) without cancellation near 0, and its sine.
fn arc(r: f64, phi: f64) -> (f64, f64) {
    let half = ((0.5 * (r + phi)).sin().powi(2) + (0.5 * (r - phi)).sin().powi(2)).sqrt();
    let w = 2.0 * (half / 2f64.sqrt()).min(1.0).asin();
    (w, w.sin())
}

fn arc_value(r: f64, phi: f64, branch: ArccosBranch) -> f64 {
    let (w, _) = arc(r, phi);
    match branch {
        ArccosBranch::Principal => w,
        ArccosBranch::Shifted => 2.0 * PI - w,
    }
}

/// φ + η − cos r sin φ · A(u)/√(1 − u²), u = cos r cos φ.
fn residual(r: f64, eta: f64, phi: f64, branch: ArccosBranch) -> f64 {
    let (w, s) = arc(r, phi);
    let a = arc_value(r, phi, branch);
    let ratio = if s < 1e-300 {
        if w < 1.0 { 1.0 } else { f64::INFINITY }
    } else if w < 1e-8 {
        1.0
    } else {
        a / s
    };
    let sp = phi.sin();
    let term = if sp == 0.0 { 0.0 } else { r.cos() * sp * ratio };
    phi + eta - term
}

/// Root of the critical-point equation on one branch.
fn solve_branch(r: f64, eta: f64, branch: Branch, arccos: ArccosBranch) -> Result<Vec<f64>> {
    let (lo, hi) = match branch {
        Branch::Principal => (-PI, 0.0),
        Branch::Reflected => (0.0, PI),
        Branch::ClosedForm => return Err(Error::domain("closed-form branch has no equation")),
    };
    let f = |x: f64| residual(r, eta, x, arccos);
    // Open end at ±π.
    let eps = 1e-12;
    let (a0, b0) = match branch {
        Branch::Principal => (lo + eps, hi),
        _ => (lo, hi - eps),
    };
    let mut roots = Vec::new();
    let mut xa = a0;
    let mut fa = f(xa);
    if fa == 0.0 {
        roots.push(xa);
    }
    for i in 1..=SCAN {
        let xb = a0 + (b0 - a0) * i as f64 / SCAN as f64;
        let fb = f(xb);
        if fb == 0.0 {
            roots.push(xb);
        } else if fa.is_finite() && fb.is_finite() && fa * fb < 0.0 {
            roots.push(refine(&f, xa, xb, fa)?);
        }
        xa = xb;
        fa = fb;
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if roots.is_empty() {
        return Err(Error::NoRoot(format!("no sign change of the critical-point residual on {branch:?}/{arccos:?} at r = {r}, eta = {eta}")));
    }
    Ok(roots)
}

/// Bisection to a tight bracket, then a Newton polish that must stay inside it.
fn refine(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 * (1.0 + a.abs()) {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..4 {
        let h = 1e-7 * (1.0 + x.abs());
        let d = (f(x + h) - f(x - h)) / (2.0 * h);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - f(x) / d;
        if next < a.min(b) - 1e-12 || next > a.max(b) + 1e-12 {
            break;
        }
        x = next;
    }
    Ok(x)
}

/// Critical angle on `branch` with the principal arccos.
pub fn phi_solver(r: f64, eta: f64, branch: Branch) -> Result<f64> {
    if !(r > 0.0 && r < PI / 2.0) {
        return Err(Error::domain(format!("phi_solver needs r in (0, pi/2), got {r}")));
    }
    if !(0.0..PI).contains(&eta) {
        return Err(Error::domain(format!("phi_solver needs eta in [0, pi), got {eta}")));
    }
    if eta == 0.0 && branch == Branch::Principal {
        return Ok(0.0);
    }
    let roots = solve_branch(r, eta, branch, ArccosBranch::Principal)?;
    Ok(match branch {
        Branch::Principal => roots[roots.len() - 1],
        _ => roots[0],
    })
}

/// arccos²(cos r cos φ) − (φ + η)², the phase at the critical point.
pub fn critical_value(r: f64, eta: f64, phi: f64, arccos: ArccosBranch) -> f64 {
    let a = arc_value(r, phi, arccos);
    a * a - (phi + eta) * (phi + eta)
}

/// (η − φ)² + arccos²(cos r cos φ).
pub fn printed_critical_value(r: f64, eta: f64, phi: f64) -> f64 {
    let a = arc_value(r, phi, ArccosBranch::Principal);
    (eta - phi) * (eta - phi) + a * a
}

/// (φ + η)² tan²r / sin²φ.
pub fn simplified_critical_value(r: f64, eta: f64, phi: f64) -> f64 {
    let s = phi.sin();
    (phi + eta).powi(2) * r.tan().powi(2) / (s * s)
}

/// Every (branch, arccos, form) candidate with d² in [0, π² + 1e-9].
pub fn distance_candidates(p: CylindricalPoint) -> Vec<DistanceCandidate> {
    let mut out = Vec::new();
    if p.r == 0.0 || p.eta == 0.0 {
        return out;
    }
    for branch in [Branch::Principal, Branch::Reflected] {
        for arccos in [ArccosBranch::Principal, ArccosBranch::Shifted] {
            let Ok(roots) = solve_branch(p.r, p.eta, branch, arccos) else { continue };
            for phi in roots {
                for form in [CriticalForm::Phase, CriticalForm::Printed] {
                    let d2 = match form {
                        CriticalForm::Phase => critical_value(p.r, p.eta, phi, arccos),
                        CriticalForm::Printed => {
                            let a = arc_value(p.r, phi, arccos);
                            (p.eta - phi).powi(2) + a * a
                        }
                    };
                    if d2.is_finite() && (0.0..=PI * PI + 1e-9).contains(&d2) {
                        out.push(DistanceCandidate { phi, branch, arccos, form, d2 });
                    }
                }
            }
        }
    }
    out
}

fn closed_form(p: CylindricalPoint) -> Option<DistanceResult> {
    let (d, phi) = if p.eta == 0.0 {
        (p.r, 0.0)
    } else if p.r == 0.0 {
        ((2.0 * PI * p.eta - p.eta * p.eta).sqrt(), -PI)
    } else {
        return None;
    };
    Some(DistanceResult {
        d,
        phi,
        branch: Branch::ClosedForm,
        arccos: ArccosBranch::Principal,
        form: CriticalForm::Phase,
        oracle_gap: None,
        d2_simplified: d * d,
    })
}

fn from_candidate(p: CylindricalPoint, c: &DistanceCandidate, gap: Option<f64>) -> DistanceResult {
    DistanceResult {
        d: c.d2.max(0.0).sqrt(),
        phi: c.phi,
        branch: c.branch,
        arccos: c.arccos,
        form: c.form,
        oracle_gap: gap,
        d2_simplified: simplified_critical_value(p.r, p.eta, c.phi),
    }
}

/// Distance from the principal root and the phase value, without the oracle.
pub fn srd_distance_solver(p: CylindricalPoint) -> Result<DistanceResult> {
    if let Some(c) = closed_form(p) {
        return Ok(c);
    }
    let phi = phi_solver(p.r, p.eta, Branch::Principal)?;
    let d2 = critical_value(p.r, p.eta, phi, ArccosBranch::Principal);
    let cand = DistanceCandidate { phi, branch: Branch::Principal, arccos: ArccosBranch::Principal, form: CriticalForm::Phase, d2 };
    Ok(from_candidate(p, &cand, None))
}

/// Distance with the candidate closest to the heat-kernel oracle.
pub fn srd_distance(kernels: &Kernels, p: CylindricalPoint) -> Result<DistanceResult> {
    let oracle = distance_oracle(kernels, p, &DEFAULT_ORACLE_TIMES)?;
    let gap = |d2: f64| (d2 - oracle.d2).abs() / oracle.d2.abs().max(1e-300);
    if let Some(mut c) = closed_form(p) {
        c.oracle_gap = Some(gap(c.d * c.d));
        return Ok(c);
    }
    let cands = distance_candidates(p);
    let best = cands
        .iter()
        .min_by(|a, b| gap(a.d2).total_cmp(&gap(b.d2)))
        .ok_or_else(|| Error::NoRoot(format!("no admissible critical point at r = {}, eta = {}", p.r, p.eta)))?;
    Ok(from_candidate(p, best, Some(gap(best.d2))))
}

/// Extrapolated −lim 4t log p_t with an error estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub d2: f64,
    pub error: f64,
    /// One estimate per consecutive triple of times.
    pub extrapolants: Vec<f64>,
    /// −4t log p at each time.
    pub raw: Vec<f64>,
}

/// Fits log p = a − b ln t − E/(4t) through consecutive triples of times,
/// then removes the O(t²) drift of the fitted E by one Richardson step.
pub fn distance_oracle(kernels: &Kernels, p: CylindricalPoint, times: &[f64]) -> Result<OracleEstimate> {
    if times.len() < 3 {
        return Err(Error::domain("distance oracle needs at least three times"));
    }
    if times.windows(2).any(|w| !(w[1] < w[0])) || times.iter().any(|&t| !(t > 0.0)) {
        return Err(Error::domain("distance oracle times must be positive and decreasing"));
    }
    let logs: Vec<f64> = {
        use rayon::prelude::*;
        let vals: Vec<Result<f64>> = times.par_iter().map(|&t| Ok(kernels.p_oct_integral(t, p)?.log_value)).collect();
        vals.into_iter().collect::<Result<Vec<_>>>()?
    };
    let raw: Vec<f64> = times.iter().zip(&logs).map(|(t, l)| -4.0 * t * l).collect();
    let mut extrapolants = Vec::new();
    for i in 0..times.len() - 2 {
        let rows: Vec<[f64; 4]> =
            (i..i + 3).map(|j| [1.0, -times[j].ln(), -1.0 / (4.0 * times[j]), logs[j]]).collect();
        extrapolants.push(solve3(&rows)[2]);
    }
    let n = extrapolants.len();
    if n >= 3 {
        let d1 = (extrapolants[n - 1] - extrapolants[n - 2]).abs();
        let d0 = (extrapolants[n - 2] - extrapolants[n - 3]).abs();
        if d1 > 1.5 * d0 + 1e-9 {
            return Err(Error::accuracy("distance oracle extrapolants do not settle", d1));
        }
    }
    if n == 1 {
        return Ok(OracleEstimate { d2: extrapolants[0], error: f64::NAN, extrapolants, raw });
    }
    let rho = (times[n] / times[n + 1]).powi(2);
    let step = (extrapolants[n - 1] - extrapolants[n - 2]) / (rho - 1.0);
    let d2 = extrapolants[n - 1] + step;
    let error = step.abs();
    Ok(OracleEstimate { d2, error, extrapolants, raw })
}

/// Gaussian elimination with partial pivoting on a 3×4 augmented system.
fn solve3(rows: &[[f64; 4]]) -> [f64; 3] {
    let mut m = [rows[0], rows[1], rows[2]];
    for c in 0..3 {
        let piv = (c..3).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        m.swap(c, piv);
        for r in c + 1..3 {
            let f = m[r][c] / m[c][c];
            let pivot = m[c];
            for (x, p) in m[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    let mut x = [0.0; 3];
    for c in (0..3).rev() {
        let mut s = m[c][3];
        for k in c + 1..3 {
            s -= m[c][k] * x[k];
        }
        x[c] = s / m[c][c];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(r: f64, eta: f64) -> CylindricalPoint {
        CylindricalPoint::new(r, eta).unwrap()
    }

    #[test]
    fn axes() {
        for &r in &[0.3, 0.8, 1.2] {
            assert!((srd_distance_solver(pt(r, 0.0)).unwrap().d - r).abs() < 1e-15);
        }
        let d = srd_distance_solver(pt(0.0, 1.0)).unwrap().d;
        assert!((d - (2.0 * PI - 1.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn phi_at_zero_eta() {
        assert_eq!(phi_solver(0.7, 0.0, Branch::Principal).unwrap(), 0.0);
    }

    #[test]
    fn phi_small_eta_slope() {
        for &r in &[0.3, 0.8, 1.3] {
            let eta = 1e-6;
            let phi = phi_solver(r, eta, Branch::Principal).unwrap();
            let expect = -1.0 / (1.0 - r / r.tan());
            assert!((phi / eta / expect - 1.0).abs() < 1e-5, "{r} {}", phi / eta);
        }
    }

    #[test]
    fn root_residual() {
        for &(r, eta) in &[(0.5, 1.0), (1.0, 2.0), (0.05, 2.5), (1.4, 0.3)] {
            let phi = phi_solver(r, eta, Branch::Principal).unwrap();
            assert!(residual(r, eta, phi, ArccosBranch::Principal).abs() < 1e-12);
        }
    }

    #[test]
    fn reflected_branch_has_no_root() {
        assert!(matches!(phi_solver(0.5, 1.0, Branch::Reflected), Err(Error::NoRoot(_))));
    }

    #[test]
    fn phase_value_equals_simplified_quotient() {
        for &(r, eta) in &[(0.5, 1.0), (1.0, 2.0), (0.2, 0.4)] {
            let phi = phi_solver(r, eta, Branch::Principal).unwrap();
            let a = critical_value(r, eta, phi, ArccosBranch::Principal);
            let b = simplified_critical_value(r, eta, phi);
            assert!((a / b - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn vertical_limit_of_the_solver() {
        let eta = 1.0;
        let d2 = srd_distance_solver(pt(1e-4, eta)).unwrap().d.powi(2);
        assert!((d2 - (2.0 * PI * eta - eta * eta)).abs() < 1e-3);
    }

    #[test]
    fn bounds_and_monotonicity() {
        for i in 1..15 {
            let r = 0.1 * i as f64;
            let mut prev = 0.0;
            for j in 0..31 {
                let eta = 0.1 * j as f64;
                let d = srd_distance_solver(pt(r, eta)).unwrap().d;
                assert!(d >= r - 1e-12 && d <= PI, "{r} {eta} {d}");
                assert!(d >= prev - 1e-12);
                prev = d;
            }
        }
    }

    #[test]
    fn solve3_exact() {
        let x = solve3(&[[2.0, 1.0, 0.0, 3.0], [1.0, 3.0, 1.0, 5.0], [0.0, 1.0, 4.0, 5.0]]);
        for v in x {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }
}
