//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Runs without the libtest harness so the per-criterion lines always print.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use octoheat::kernels::{spectrum, Calibration, CylindricalPoint, Kernels, SpectrumKind};
use octoheat::specfun::{gegenbauer_c, jacobi_p};
use octoheat::sphere_heat::{q11_spectral, q11_theta};
use octoheat::validation::{
    calibrate, calibrate_with, check_asymptotic_rates, check_distance, check_green, check_heat_equation,
    check_sphere_kernel, check_special_functions, octonionic_mass, CalibrationOptions, CalibrationReport,
    ValidationReport, SHAPE_TOLERANCE,
};
use octoheat::TruncationControl;

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn pt(r: f64, eta: f64) -> CylindricalPoint {
    CylindricalPoint::new(r, eta).unwrap()
}

fn grid3() -> Vec<CylindricalPoint> {
    let mut v = Vec::new();
    for &r in &[0.2, 0.6, 1.0] {
        for &e in &[0.3, 1.0, 2.0] {
            v.push(pt(r, e));
        }
    }
    v
}

fn within(what: &str, residual: f64, tol: f64) -> Outcome {
    if residual <= tol {
        Ok(format!("{what} {residual:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{what} {residual:.2e} > {tol:.0e}"))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let ok = parts.iter().all(|p| p.is_ok());
    let text: Vec<String> = parts.into_iter().map(|p| p.unwrap_or_else(|e| format!("FAILED {e}"))).collect();
    if ok {
        Ok(text.join("; "))
    } else {
        Err(text.join("; "))
    }
}

/// Fatal checks of a report must pass; advisory ones are listed.
fn report_outcome(report: &ValidationReport, names: &[&str]) -> Vec<Outcome> {
    names
        .iter()
        .map(|&n| match report.get(n) {
            Some(c) => within(n, c.residual, c.tolerance),
            None => Err(format!("check '{n}' missing")),
        })
        .collect()
}

fn criterion_1_spectrum() -> Outcome {
    let cal = Calibration { c_spec: 6.0 / PI.powi(8), ..Calibration::printed() };
    let listed = spectrum(SpectrumKind::Octonionic, 100.0, &cal);
    let mut brute = Vec::new();
    for m in 0..=30usize {
        for k in 0..=30usize {
            let lam = 4 * (k * (k + m + 7) + 2 * m);
            if lam <= 100 {
                brute.push((lam, m, k));
            }
        }
    }
    brute.sort();
    let mut got: Vec<(usize, usize, usize)> =
        listed.iter().map(|e| (e.eigenvalue.round() as usize, e.m, e.k)).collect();
    got.sort();
    let exact = listed.iter().all(|e| e.eigenvalue == e.eigenvalue.round());
    let gap = listed.iter().map(|e| e.eigenvalue).filter(|&l| l > 0.0).fold(f64::INFINITY, f64::min);
    all(vec![
        if gap == 8.0 { Ok("gap = 8".into()) } else { Err(format!("gap = {gap}")) },
        if got == brute && exact {
            Ok(format!("{} modes up to 100 match enumeration", got.len()))
        } else {
            Err(format!("listed {got:?} vs brute {brute:?}"))
        },
    ])
}

fn criterion_2_representations(cal: &CalibrationReport) -> Outcome {
    let k = Kernels::new(TruncationControl::default(), cal.calibration());
    let raw = Kernels::default();
    let mut worst = 0.0f64;
    let (mut int_ratios, mut rel_ratios) = (Vec::new(), Vec::new());
    for &t in &[0.25, 0.5, 1.0] {
        for p in grid3() {
            let a = k.p_oct_spectral(t, p).map_err(|e| e.to_string())?.value;
            let b = k.p_oct_integral(t, p).map_err(|e| e.to_string())?.value;
            let c = k.p_oct_from_quat(t, p).map_err(|e| e.to_string())?.value;
            worst = worst.max(rel(b, a)).max(rel(c, a)).max(rel(c, b));
            let s = raw.p_oct_spectral(t, p).map_err(|e| e.to_string())?.value;
            int_ratios.push(raw.p_oct_integral(t, p).map_err(|e| e.to_string())?.value / s);
            rel_ratios.push(raw.p_oct_from_quat(t, p).map_err(|e| e.to_string())?.value / s);
        }
    }
    let spread = |v: &[f64]| {
        let max = v.iter().cloned().fold(f64::MIN, f64::max);
        let min = v.iter().cloned().fold(f64::MAX, f64::min);
        (max - min) / min.abs()
    };
    all(vec![
        within("calibrated pairwise rel", worst, 1e-6),
        within("nominal integral/spectral spread", spread(&int_ratios), SHAPE_TOLERANCE),
        within("nominal relation/spectral spread", spread(&rel_ratios), SHAPE_TOLERANCE),
    ])
}

fn criterion_3_heat(cal: &CalibrationReport) -> Outcome {
    let k = Kernels::new(TruncationControl::default(), cal.calibration());
    let r = check_heat_equation(&k, &[0.5], &grid3()).map_err(|e| e.to_string())?;
    let order = r.get("heat equation stencil order").and_then(|c| c.note.clone()).unwrap_or_default();
    let mut parts = report_outcome(&r, &["heat equation residual", "heat equation stencil order"]);
    parts.push(Ok(order));
    all(parts)
}

fn criterion_4_normalization(cal: &CalibrationReport) -> Outcome {
    let k = Kernels::new(TruncationControl::default(), cal.calibration());
    let mut mass = 0.0f64;
    for &t in &[0.3, 1.0, 3.0] {
        mass = mass.max((octonionic_mass(&k, t).map_err(|e| e.to_string())? - 1.0).abs());
    }
    let target = 2520.0 / PI.powi(8);
    let mut stat = 0.0f64;
    for p in grid3().into_iter().chain([pt(0.0, 0.0), pt(1.5, 3.0)]) {
        stat = stat.max(rel(k.p_oct(20.0, p).map_err(|e| e.to_string())?.value, target));
    }
    all(vec![within("unit mass", mass, 1e-6), within("p(20) vs 2520/pi^8", stat, 1e-8)])
}

fn criterion_5_sphere(cal: &CalibrationReport) -> Outcome {
    let c = TruncationControl::default();
    let mut worst = 0.0f64;
    for &t in &[0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.0] {
        for i in 0..=9 {
            let d = 0.2 + 2.7 * i as f64 / 9.0;
            let a = q11_spectral(t, d.cos(), &c).map_err(|e| e.to_string())?.value;
            let b = q11_theta(t, d, &c).map_err(|e| e.to_string())?.value;
            worst = worst.max(rel(a, b));
        }
    }
    let k = Kernels::new(c, cal.calibration());
    let r = check_sphere_kernel(&k, true).map_err(|e| e.to_string())?;
    let mut parts = vec![within("spectral vs theta", worst, 1e-7)];
    parts.extend(report_outcome(&r, &["S11 interior expansion t^2 band", "S11 exterior expansion t^2 band"]));
    all(parts)
}

fn criterion_6_green(cal: &CalibrationReport) -> Outcome {
    let r = check_green(cal).map_err(|e| e.to_string())?;
    let mut parts = report_outcome(&r, &["Green equation residual", "Laplace/Green ratio spread"]);
    parts.push(Ok(format!("fitted c_green {:.12e} = {:.9} x 2304/pi^8", cal.c_green.fitted, cal.c_green.ratio)));
    all(parts)
}

fn criterion_7_distance() -> Outcome {
    let r = check_distance(&Kernels::default(), true).map_err(|e| e.to_string())?;
    all(report_outcome(
        &r,
        &[
            "d(r,0) = r (solver)",
            "d(r,0) = r (oracle)",
            "d^2(0,eta) = 2 pi eta - eta^2 (oracle)",
            "off-diagonal d^2 vs oracle",
            "scanned d <= pi",
        ],
    ))
}

fn criterion_8_asymptotics(cal: &CalibrationReport, deviations: &mut Vec<String>) -> Outcome {
    let k = Kernels::new(TruncationControl::default(), cal.calibration());
    let r = check_asymptotic_rates(&k, true).map_err(|e| e.to_string())?;
    for c in r.checks.iter().filter(|c| !c.fatal && !c.pass) {
        let note = c.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        deviations.push(format!("{}: residual {:.3e} vs {:.0e}{note}", c.name, c.residual, c.tolerance));
    }
    all(report_outcome(
        &r,
        &[
            "diagonal leading exponent",
            "vertical rate eta(2pi - eta)",
            "horizontal rate r^2",
            "off-diagonal rate = critical value",
            "off-diagonal eta -> 0 limit",
        ],
    ))
}

type Poly = Vec<BigRational>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pow(a: &Poly, n: usize) -> Poly {
    (0..n).fold(vec![BigRational::one()], |acc, _| mul(&acc, a))
}

fn deriv(a: &Poly) -> Poly {
    if a.len() <= 1 {
        return vec![BigRational::zero()];
    }
    a.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64, 1)).collect()
}

/// Exact quotient a / b; panics on a nonzero remainder.
fn div(a: &Poly, b: &Poly) -> Poly {
    let mut rem = a.clone();
    let db = b.len() - 1;
    if rem.len() <= db {
        return vec![BigRational::zero()];
    }
    let mut out = vec![BigRational::zero(); rem.len() - db];
    for i in (0..out.len()).rev() {
        let c = &rem[i + db] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] -= &c * bj;
        }
        out[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    out
}

fn eval(a: &Poly, x: &BigRational) -> BigRational {
    a.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn factorial(n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, i| acc * q(i as i64, 1))
}

/// (−1)^k/(2^k k!) (1−x)^{−α}(1+x)^{−β} d^k[(1−x)^{α+k}(1+x)^{β+k}].
fn rodrigues_jacobi(k: usize, alpha: usize, beta: usize) -> Poly {
    let one_minus = vec![q(1, 1), q(-1, 1)];
    let one_plus = vec![q(1, 1), q(1, 1)];
    let mut f = mul(&pow(&one_minus, alpha + k), &pow(&one_plus, beta + k));
    for _ in 0..k {
        f = deriv(&f);
    }
    let w = mul(&pow(&one_minus, alpha), &pow(&one_plus, beta));
    let scale = q(if k.is_multiple_of(2) { 1 } else { -1 }, 1) / (factorial(k) * q(1i64 << k, 1));
    div(&f, &w).into_iter().map(|c| c * &scale).collect()
}

/// C_n^λ for integer λ from d^n (1−x²)^{n+λ−½}: each derivative of
/// g·(1−x²)^b gives (g'(1−x²) − 2b x g)(1−x²)^{b−1}.
fn rodrigues_gegenbauer(n: usize, lambda: i64) -> Poly {
    let one_minus_sq = vec![q(1, 1), q(0, 1), q(-1, 1)];
    let mut g: Poly = vec![q(1, 1)];
    let mut b = q(2 * (n as i64) + 2 * lambda - 1, 2);
    for _ in 0..n {
        let xg = {
            let mut v = vec![BigRational::zero()];
            v.extend(g.iter().cloned());
            v
        };
        let a = mul(&deriv(&g), &one_minus_sq);
        let bx: Poly = xg.iter().map(|c| c * &b * q(2, 1)).collect();
        let len = a.len().max(bx.len());
        g = (0..len)
            .map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero) - bx.get(i).cloned().unwrap_or_else(BigRational::zero))
            .collect();
        b -= q(1, 1);
    }
    // Γ(λ+½)Γ(n+2λ)/(Γ(2λ)Γ(λ+n+½)) = (2λ)_n / (λ+½)_n.
    let mut c = BigRational::one();
    for i in 0..n as i64 {
        c = c * q(2 * lambda + i, 1) / q(2 * lambda + 2 * i + 1, 2);
    }
    let sign = q(if n.is_multiple_of(2) { 1 } else { -1 }, 1);
    let scale = sign * c / (factorial(n) * q(1i64 << n, 1));
    g.into_iter().map(|v| v * &scale).collect()
}

fn criterion_9_special() -> Outcome {
    let xs = [q(-1, 1), q(-1, 2), q(-1, 3), q(0, 1), q(1, 4), q(2, 3), q(1, 1)];
    let mut jac = 0.0f64;
    for k in 0..=5 {
        for alpha in 0..=8 {
            for beta in 0..=8 {
                let p = rodrigues_jacobi(k, alpha, beta);
                for x in &xs {
                    let exact = eval(&p, x);
                    let got = jacobi_p(k, alpha as f64, beta as f64, x.to_f64().unwrap()).map_err(|e| e.to_string())?;
                    let scale = exact.abs().to_f64().unwrap().max(1.0);
                    jac = jac.max((got - exact.to_f64().unwrap()).abs() / scale);
                }
            }
        }
    }
    let mut geg = 0.0f64;
    for m in 0..=5 {
        for lambda in 1..=6 {
            let p = rodrigues_gegenbauer(m, lambda);
            for x in &xs {
                let exact = eval(&p, x);
                let got = gegenbauer_c(m, lambda as f64, x.to_f64().unwrap()).map_err(|e| e.to_string())?;
                let scale = exact.abs().to_f64().unwrap().max(1.0);
                geg = geg.max((got - exact.to_f64().unwrap()).abs() / scale);
            }
        }
    }
    let r = check_special_functions(true).map_err(|e| e.to_string())?;
    let mut parts = vec![within("Jacobi vs Rodrigues", jac, 1e-12), within("Gegenbauer vs Rodrigues", geg, 1e-12)];
    parts.extend(report_outcome(&r, &["h_m Laplace integral vs Gegenbauer ratio", "Jacobi norms closed form"]));
    all(parts)
}

fn criterion_10_calibration(cal: &CalibrationReport) -> Outcome {
    let again = calibrate_with(&CalibrationOptions { start: cal.calibration(), ..CalibrationOptions::default() })
        .map_err(|e| e.to_string())?;
    let drift = cal
        .fits()
        .iter()
        .zip(again.fits().iter())
        .map(|((_, a), (_, b))| rel(b.fitted, a.fitted))
        .fold(0.0f64, f64::max);
    let recorded = cal.fits().iter().all(|(_, f)| f.ratio.is_finite() && f.ratio > 0.0 && f.printed > 0.0);
    let shape = cal.fits().iter().map(|(_, f)| f.spread).fold(0.0f64, f64::max);
    let ratios: Vec<String> = cal.fits().iter().map(|(n, f)| format!("{n} x{:.6}", f.ratio)).collect();
    all(vec![
        within("idempotence", drift, 1e-12),
        within("worst shape spread", shape, SHAPE_TOLERANCE),
        if recorded && cal.passed { Ok(format!("ratios {}", ratios.join(", "))) } else { Err("ratios not recorded".into()) },
    ])
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cal = match calibrate() {
        Ok(c) => c,
        Err(e) => {
            println!("calibration failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut deviations = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 spectrum", criterion_1_spectrum()),
        ("2 cross-representation", criterion_2_representations(&cal)),
        ("3 heat equation", criterion_3_heat(&cal)),
        ("4 normalization", criterion_4_normalization(&cal)),
        ("5 S11 kernel", criterion_5_sphere(&cal)),
        ("6 Green function", criterion_6_green(&cal)),
        ("7 distance", criterion_7_distance()),
        ("8 asymptotics", criterion_8_asymptotics(&cal, &mut deviations)),
        ("9 special functions", criterion_9_special()),
        ("10 calibration", criterion_10_calibration(&cal)),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    for d in &deviations {
        println!("known deviation: {d}");
    }
    println!("acceptance: {} of {} passed in {:.0} s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
