//! Fits every normalization constant and compares it with the nominal value.

use octoheat::validation::calibrate;

fn main() -> octoheat::Result<()> {
    let report = calibrate()?;
    println!("{:<8} {:>22} {:>22} {:>14} {:>10}", "name", "fitted", "nominal", "ratio", "spread");
    for (name, fit) in report.fits() {
        println!(
            "{name:<8} {:>22.15e} {:>22.15e} {:>14.8} {:>10.2e}",
            fit.fitted, fit.printed, fit.ratio, fit.spread
        );
    }
    for (name, r) in &report.residuals {
        println!("{name}: {r:.2e}");
    }
    Ok(())
}
