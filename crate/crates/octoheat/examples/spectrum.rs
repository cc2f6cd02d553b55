//! Low eigenvalues of the sub-Laplacian on S¹⁵ and S¹¹ with multiplicities.

use octoheat::kernels::{spectrum, Calibration, SpectrumKind};
use std::f64::consts::PI;

fn main() {
    // Series scales forced by the stationary values 2520/π⁸ and 60/π⁶.
    let cal = Calibration {
        c_spec: 6.0 / PI.powi(8),
        c_quat: 3.0 / PI.powi(6),
        ..Calibration::printed()
    };
    for kind in [SpectrumKind::Octonionic, SpectrumKind::Quaternionic] {
        println!("{kind:?}");
        for e in spectrum(kind, 60.0, &cal) {
            println!(
                "  {:>6} m = {:>2} k = {:>2} multiplicity = {:>8} (residual {:.1e})",
                e.eigenvalue, e.m, e.k, e.multiplicity, e.rounding_residual
            );
        }
    }
}
