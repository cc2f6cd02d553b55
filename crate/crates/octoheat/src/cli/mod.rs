//! Command-line surface over the library.
//!
//! Exit codes: 0 success, 2 domain error, 3 accuracy, calibration or
//! validation failure, 4 I/O error.

mod table;

pub use table::{format_g, Cell, Table};

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::{
    asympt_diagonal, asympt_diagonal_weighted, asympt_horizontal, asympt_horizontal_printed, asympt_offdiagonal,
    asympt_offdiagonal_printed, asympt_vertical, green, laplace_transform, srd_distance, srd_distance_solver,
    PRINTED_GREEN_CONSTANT,
};
use crate::kernels::{spectrum, Calibration, CylindricalPoint, Kernels, SpectrumKind};
use crate::specfun::TruncationControl;
use crate::sphere_heat::{q11, q11_spectral, q11_theta, SphereArgument};
use crate::validation::{calibrate_with, run_all, CalibrationOptions, CalibrationReport, Level};
use crate::KernelValue;

#[derive(Debug, Parser)]
#[command(name = "octoheat", version, about = "Subelliptic heat kernel on S15 over OP1")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Significant digits of numeric output.
    #[arg(long, default_value_t = 12, global = true)]
    pub precision: usize,
    #[arg(long, default_value_t = 1e-10, global = true)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-8, global = true)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 2000, global = true)]
    pub max_terms: usize,
    /// Calibration JSON: read by every command, written by `calibrate`.
    #[arg(long, global = true)]
    pub calibration: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Oct,
    Quat,
    S11,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Spectral,
    Integral,
    Relation,
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Diagonal,
    Vertical,
    Horizontal,
    Offdiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumArg {
    Oct,
    Quat,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one kernel value.
    #[command(allow_negative_numbers = true)]
    Eval {
        #[arg(long, value_enum)]
        kernel: KernelKind,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Evaluate a kernel on an (r, eta) grid, r outer.
    #[command(allow_negative_numbers = true)]
    Grid {
        #[arg(long, value_enum)]
        kernel: KernelKind,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        r_min: f64,
        #[arg(long)]
        r_max: f64,
        #[arg(long)]
        r_steps: usize,
        #[arg(long)]
        eta_min: f64,
        #[arg(long)]
        eta_max: f64,
        #[arg(long)]
        eta_steps: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Eigenvalues of -L up to a cap with their (m, k) labels.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[arg(long, value_enum, default_value_t = SpectrumArg::Oct)]
        kind: SpectrumArg,
        #[arg(long, default_value_t = 100.0)]
        cap: f64,
    },
    /// Sub-Riemannian distance from the pole.
    #[command(allow_negative_numbers = true)]
    Distance {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        eta: f64,
        /// Skip the heat-kernel oracle and use the principal root.
        #[arg(long)]
        solver_only: bool,
    },
    /// Green function of -L + 40, optionally with the Laplace transform.
    #[command(allow_negative_numbers = true)]
    Green {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        laplace: bool,
    },
    /// Small-time expansions.
    #[command(allow_negative_numbers = true)]
    Asympt {
        #[arg(long, value_enum)]
        regime: Regime,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 0.0)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        /// Use the printed prefactors.
        #[arg(long)]
        printed: bool,
    },
    /// Fit the six constants.
    Calibrate,
    /// Run the validation harness.
    Validate {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("octoheat: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Contract(_) | Error::NoRoot(_) | Error::Pole => 2,
        Error::Accuracy { .. } | Error::Calibration(_) => 3,
        Error::Io(_) => 4,
    }
}

struct Output {
    body: String,
    code: i32,
}

fn execute(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    let control = TruncationControl::new(g.abs_tol, g.rel_tol, g.max_terms, TruncationControl::default().max_panels)?;
    if g.precision == 0 || g.precision > 17 {
        return Err(Error::domain("precision must lie in 1..=17"));
    }
    let calibration = match (&g.calibration, &cli.command) {
        (Some(path), cmd) if !matches!(cmd, Command::Calibrate) => load_calibration(path)?,
        _ => Calibration::printed(),
    };
    let kernels = Kernels::new(control, calibration);
    let out = match &cli.command {
        Command::Eval { kernel, t, r, eta, method } => {
            let p = CylindricalPoint::new(*r, *eta)?;
            check_t(*t)?;
            let v = evaluate(&kernels, *kernel, *method, *t, p)?;
            let mut table = Table::new(vec!["value", "method", "error"]);
            table.push(vec![v.value.into(), v.method.tag().into(), v.error_estimate.into()]);
            render(g, &table)
        }
        Command::Grid { kernel, t, r_min, r_max, r_steps, eta_min, eta_max, eta_steps, method } => {
            check_t(*t)?;
            let rs = axis(*r_min, *r_max, *r_steps)?;
            let es = axis(*eta_min, *eta_max, *eta_steps)?;
            let points: Vec<CylindricalPoint> = rs
                .iter()
                .flat_map(|&r| es.iter().map(move |&e| (r, e)))
                .map(|(r, e)| CylindricalPoint::new(r, e))
                .collect::<Result<_>>()?;
            let values = {
                use rayon::prelude::*;
                let v: Vec<Result<KernelValue>> =
                    points.par_iter().map(|&p| evaluate(&kernels, *kernel, *method, *t, p)).collect();
                v.into_iter().collect::<Result<Vec<_>>>()?
            };
            let mut table = Table::new(vec!["r", "eta", "value", "method", "error"]);
            for (p, v) in points.iter().zip(values) {
                table.push(vec![p.r.into(), p.eta.into(), v.value.into(), v.method.tag().into(), v.error_estimate.into()]);
            }
            render(g, &table)
        }
        Command::Spectrum { kind, cap } => {
            if !(cap.is_finite() && *cap >= 0.0) {
                return Err(Error::domain("cap must be a nonnegative number"));
            }
            let kind = match kind {
                SpectrumArg::Oct => SpectrumKind::Octonionic,
                SpectrumArg::Quat => SpectrumKind::Quaternionic,
            };
            // Without a fitted file the series scales come from the stationary values.
            let cal = if kernels.calibration.fitted {
                kernels.calibration
            } else {
                Calibration {
                    c_spec: 2520.0 / PI.powi(8) / 420.0,
                    c_quat: 60.0 / PI.powi(6) / 20.0,
                    ..kernels.calibration
                }
            };
            let mut table = Table::new(vec!["eigenvalue", "m", "k", "multiplicity"]);
            for e in spectrum(kind, *cap, &cal) {
                table.push(vec![e.eigenvalue.into(), e.m.into(), e.k.into(), e.multiplicity.into()]);
            }
            render(g, &table)
        }
        Command::Distance { r, eta, solver_only } => {
            let p = CylindricalPoint::new(*r, *eta)?;
            let d = if *solver_only { srd_distance_solver(p)? } else { srd_distance(&kernels, p)? };
            let mut table =
                Table::new(vec!["d", "d2", "phi", "branch", "arccos", "form", "oracle_gap", "d2_simplified"]);
            table.push(vec![
                d.d.into(),
                (d.d * d.d).into(),
                d.phi.into(),
                tag(&d.branch).into(),
                tag(&d.arccos).into(),
                tag(&d.form).into(),
                d.oracle_gap.unwrap_or(f64::NAN).into(),
                d.d2_simplified.into(),
            ]);
            render(g, &table)
        }
        Command::Green { r, eta, laplace } => {
            let p = CylindricalPoint::new(*r, *eta)?;
            let constant = if kernels.calibration.fitted { kernels.calibration.c_green } else { PRINTED_GREEN_CONSTANT };
            let value = green(p, constant)?;
            let mut table = Table::new(vec!["value", "constant", "laplace", "laplace_error"]);
            let (l, le) = if *laplace {
                let lt = laplace_transform(&kernels, p)?;
                (lt.value, lt.error_estimate)
            } else {
                (f64::NAN, f64::NAN)
            };
            table.push(vec![value.into(), constant.into(), l.into(), le.into()]);
            render(g, &table)
        }
        Command::Asympt { regime, t, r, eta, printed } => {
            check_t(*t)?;
            let c_int = kernels.calibration.c_int;
            let v = match (regime, printed) {
                (Regime::Diagonal, true) => asympt_diagonal(*t)?,
                (Regime::Diagonal, false) => asympt_diagonal_weighted(*t, c_int)?,
                (Regime::Vertical, _) => asympt_vertical(*t, *eta)?,
                (Regime::Horizontal, true) => asympt_horizontal_printed(*t, *r)?,
                (Regime::Horizontal, false) => asympt_horizontal(*t, *r, c_int)?,
                (Regime::Offdiagonal, true) => asympt_offdiagonal_printed(*t, CylindricalPoint::new(*r, *eta)?)?,
                (Regime::Offdiagonal, false) => asympt_offdiagonal(*t, CylindricalPoint::new(*r, *eta)?, c_int)?,
            };
            let mut table = Table::new(vec!["value", "log_value", "method"]);
            table.push(vec![v.value.into(), v.log_value.into(), v.method.tag().into()]);
            render(g, &table)
        }
        Command::Calibrate => {
            let report = calibrate_with(&CalibrationOptions { control, ..CalibrationOptions::default() })?;
            if let Some(path) = &g.calibration {
                write_file(path, &calibration_document(&report))?;
            }
            let mut table = Table::new(vec!["name", "fitted", "printed", "ratio", "spread"]);
            for (name, f) in report.fits() {
                table.push(vec![name.into(), f.fitted.into(), f.printed.into(), f.ratio.into(), f.spread.into()]);
            }
            render(g, &table)
        }
        Command::Validate { level } => {
            let full = run_all(*level, control)?;
            let mut table = Table::new(vec!["name", "tolerance", "residual", "pass", "fatal"]);
            for c in &full.report.checks {
                table.push(vec![c.name.as_str().into(), c.tolerance.into(), c.residual.into(), c.pass.into(), c.fatal.into()]);
            }
            let body = match g.format {
                Format::Csv => table.to_csv(g.precision),
                Format::Json => validation_json(g, &full.calibration, &table, *level),
            };
            Output { body, code: if full.report.passed() { 0 } else { 3 } }
        }
    };
    match &g.out {
        Some(path) => write_file(path, &out.body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.body.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    Ok(out.code)
}

fn render(g: &Global, table: &Table) -> Output {
    let body = match g.format {
        Format::Csv => table.to_csv(g.precision),
        Format::Json => {
            let mut s = table.to_json(g.precision);
            s.push('\n');
            s
        }
    };
    Output { body, code: 0 }
}

fn tag<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("t must be positive, got {t}")));
    }
    Ok(())
}

fn axis(lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::domain("grid axis needs finite min <= max and at least one step"));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

fn evaluate(kernels: &Kernels, kernel: KernelKind, method: MethodArg, t: f64, p: CylindricalPoint) -> Result<KernelValue> {
    match (kernel, method) {
        (KernelKind::Oct, MethodArg::Auto) => kernels.p_oct(t, p),
        (KernelKind::Oct, MethodArg::Spectral) => kernels.p_oct_spectral(t, p),
        (KernelKind::Oct, MethodArg::Integral) => kernels.p_oct_integral(t, p),
        (KernelKind::Oct, MethodArg::Relation) => kernels.p_oct_from_quat(t, p),
        (KernelKind::Quat, MethodArg::Auto) => kernels.p_quat(t, p),
        (KernelKind::Quat, MethodArg::Spectral) => kernels.p_quat_spectral(t, p),
        (KernelKind::Quat, MethodArg::Integral) => kernels.p_quat_integral(t, p),
        (KernelKind::S11, m) => {
            let delta = (p.r.cos() * p.eta.cos()).clamp(-1.0, 1.0).acos();
            match m {
                MethodArg::Auto => q11(t, SphereArgument::Cos(delta), &kernels.control),
                MethodArg::Spectral => q11_spectral(t, delta.cos(), &kernels.control),
                MethodArg::Theta => q11_theta(t, delta, &kernels.control),
                _ => Err(Error::domain("s11 supports methods auto, spectral and theta")),
            }
        }
        (_, m) => Err(Error::domain(format!("method {m:?} is not available for this kernel"))),
    }
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Flat JSON document: constant name → {fitted, printed, ratio}.
fn calibration_document(report: &CalibrationReport) -> String {
    let mut map = BTreeMap::new();
    for (name, f) in report.fits() {
        map.insert(name, serde_json::json!({ "fitted": f.fitted, "printed": f.printed, "ratio": f.ratio }));
    }
    let mut s = serde_json::to_string_pretty(&map).expect("map serializes");
    s.push('\n');
    s
}

pub fn load_calibration(path: &Path) -> Result<Calibration> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let get = |name: &str| -> Result<f64> {
        doc.get(name)
            .and_then(|v| v.get("fitted"))
            .and_then(|v| v.as_f64())
            .filter(|v| v.is_finite() && *v > 0.0)
            .ok_or_else(|| Error::Io(format!("{}: missing or invalid {name}", path.display())))
    };
    Ok(Calibration {
        c_mu: get("c_mu")?,
        c_spec: get("c_spec")?,
        c_quat: get("c_quat")?,
        c_int: get("c_int")?,
        c_rel: get("c_rel")?,
        c_green: get("c_green")?,
        fitted: true,
    })
}

fn validation_json(g: &Global, cal: &CalibrationReport, checks: &Table, level: Level) -> String {
    let d = g.precision;
    let mut constants = Vec::new();
    for (name, f) in cal.fits() {
        let body = table::json_object(
            &["fitted", "printed", "ratio", "spread"],
            &[f.fitted.into(), f.printed.into(), f.ratio.into(), f.spread.into()],
            d,
        );
        constants.push(format!("{}:{body}", serde_json::to_string(name).expect("key")));
    }
    let meta = table::json_object(
        &["version", "level", "abs_tol", "rel_tol", "max_terms"],
        &[
            env!("CARGO_PKG_VERSION").into(),
            tag(&level).into(),
            g.abs_tol.into(),
            g.rel_tol.into(),
            g.max_terms.into(),
        ],
        d,
    );
    format!("{{\"constants\":{{{}}},\"checks\":{},\"meta\":{meta}}}\n", constants.join(","), checks.to_json(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp(name: &str) -> std::path::PathBuf {
        std::env::temp_dir().join(format!("octoheat-{}-{name}", std::process::id()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::domain("x")), 2);
        assert_eq!(exit_code(&Error::Pole), 2);
        assert_eq!(exit_code(&Error::NoRoot("x".into())), 2);
        assert_eq!(exit_code(&Error::accuracy("x", 1.0)), 3);
        assert_eq!(exit_code(&Error::Calibration("x".into())), 3);
        assert_eq!(exit_code(&Error::Io("x".into())), 4);
    }

    #[test]
    fn calibration_file_roundtrip() {
        let path = temp("cal.json");
        let names = ["c_mu", "c_spec", "c_quat", "c_int", "c_rel", "c_green"];
        let mut doc = serde_json::Map::new();
        for (i, n) in names.iter().enumerate() {
            doc.insert(n.to_string(), serde_json::json!({ "fitted": 1.0 + i as f64, "printed": 2.0, "ratio": 0.5 }));
        }
        std::fs::write(&path, serde_json::Value::Object(doc).to_string()).unwrap();
        let cal = load_calibration(&path).unwrap();
        assert!(cal.fitted);
        assert_eq!(cal.entries().map(|(_, v)| v), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);

        std::fs::write(&path, r#"{"c_mu": {"fitted": 1.0}}"#).unwrap();
        assert!(matches!(load_calibration(&path), Err(Error::Io(_))));
        std::fs::remove_file(&path).unwrap();
        assert!(matches!(load_calibration(&path), Err(Error::Io(_))));
    }

    #[test]
    fn run_maps_failures() {
        let args = |s: &str| std::iter::once("octoheat".to_string()).chain(s.split_whitespace().map(String::from)).collect::<Vec<_>>();
        assert_eq!(run(args("eval --kernel s11 --t 0.5 --r 1.0 --eta 0 --method integral")), 2);
        assert_eq!(run(args("eval --kernel oct --t 0.5 --r 0.3 --eta 3.5")), 2);
        assert_eq!(run(args("distance --r 0.3")), 2);
        let missing = temp("missing.json");
        assert_eq!(run(args(&format!("spectrum --calibration {}", missing.display()))), 4);
        let out = temp("spectrum.csv");
        assert_eq!(run(args(&format!("spectrum --cap 16 --out {}", out.display()))), 0);
        assert_eq!(std::fs::read_to_string(&out).unwrap(), "eigenvalue,m,k,multiplicity\n0,0,0,1\n8,1,0,16\n16,2,0,126\n");
        std::fs::remove_file(&out).unwrap();
    }
}
