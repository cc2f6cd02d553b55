//! Runs the quick validation suite and prints one line per check.

use octoheat::validation::{run_all, Level};
use octoheat::TruncationControl;

fn main() -> octoheat::Result<()> {
    let full = run_all(Level::Quick, TruncationControl::default())?;
    for c in &full.report.checks {
        let status = match (c.pass, c.fatal) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "advisory",
        };
        println!("{status:>8}  {:<48} residual {:.2e} (tol {:.0e})", c.name, c.residual, c.tolerance);
    }
    println!("fatal failures: {}", full.report.failures());
    Ok(())
}
