//! Small-time expansions on the diagonal, along the fiber, horizontally and
//! off-diagonal, next to the kernel itself.

use octoheat::geometry::{
    asympt_constants, asympt_diagonal, asympt_diagonal_weighted, asympt_horizontal, asympt_offdiagonal, asympt_vertical,
};
use octoheat::kernels::{CylindricalPoint, Kernels};
use std::f64::consts::PI;

fn main() -> octoheat::Result<()> {
    let c = asympt_constants();
    println!("A = {:.15} ± {:.1e}, B = {:.15} ± {:.1e}", c.a, c.a_error, c.b, c.b_error);

    let c_int = 1.0 / (16.0 * PI * PI);
    let k = Kernels::default();
    let origin = CylindricalPoint::new(0.0, 0.0)?;
    for &t in &[0.02, 0.01, 0.005] {
        let exact = k.p_oct_integral(t, origin)?.log_value;
        let two_term = asympt_diagonal_weighted(t, k.calibration.c_int)?.log_value;
        let slope = (asympt_diagonal(t)?.log_value - asympt_diagonal(t / 2.0)?.log_value) / 2f64.ln();
        println!("t = {t}: log p = {exact:.8}  expansion = {two_term:.8}  nominal slope = {slope:.4}");
    }
    let p = CylindricalPoint::new(0.6, 0.7)?;
    for &t in &[0.01, 0.005] {
        println!(
            "t = {t}: vertical(0.5) {:.6}  horizontal(0.8) {:.6}  off-diagonal(0.6, 0.7) {:.6}",
            asympt_vertical(t, 0.5)?.log_value,
            asympt_horizontal(t, 0.8, c_int)?.log_value,
            asympt_offdiagonal(t, p, c_int)?.log_value
        );
    }
    Ok(())
}
