//! Sub-Riemannian distance from the critical-point solver, checked against
//! the small-time decay of the kernel.

use octoheat::geometry::{distance_candidates, distance_oracle, srd_distance, DEFAULT_ORACLE_TIMES};
use octoheat::kernels::{CylindricalPoint, Kernels};

fn main() -> octoheat::Result<()> {
    let k = Kernels::default();
    for &(r, eta) in &[(0.8, 0.0), (0.6, 0.7), (1.0, 1.5)] {
        let p = CylindricalPoint::new(r, eta)?;
        for c in distance_candidates(p) {
            println!("  candidate phi = {:+.10} {:?} {:?} {:?} d2 = {:.10}", c.phi, c.branch, c.arccos, c.form, c.d2);
        }
        let d = srd_distance(&k, p)?;
        let o = distance_oracle(&k, p, &DEFAULT_ORACLE_TIMES)?;
        println!(
            "({r}, {eta}): d = {:.10} phi = {:+.10} oracle d2 = {:.10} ± {:.1e}",
            d.d, d.phi, o.d2, o.error
        );
    }
    Ok(())
}
