//! The octonionic kernel from its spectral series, its integral
//! representation and the derivative relation to the quaternionic kernel,
//! after calibration.

use octoheat::kernels::{CylindricalPoint, Kernels};
use octoheat::validation::calibrate;
use octoheat::TruncationControl;

fn main() -> octoheat::Result<()> {
    let cal = calibrate()?.calibration();
    let k = Kernels::new(TruncationControl::default(), cal);
    println!("{:>5} {:>5} {:>5} {:>20} {:>20} {:>20}", "t", "r", "eta", "spectral", "integral", "relation");
    for &t in &[0.1, 0.5, 1.0] {
        for &(r, eta) in &[(0.2, 0.3), (0.8, 1.0), (1.3, 2.5)] {
            let p = CylindricalPoint::new(r, eta)?;
            println!(
                "{t:>5} {r:>5} {eta:>5} {:>20.13e} {:>20.13e} {:>20.13e}",
                k.p_oct_spectral(t, p)?.value,
                k.p_oct_integral(t, p)?.value,
                k.p_oct_from_quat(t, p)?.value
            );
        }
    }
    let p = CylindricalPoint::new(0.5, 0.5)?;
    for &t in &[0.01, 0.2, 2.0] {
        let v = k.p_oct(t, p)?;
        println!("auto dispatch t = {t}: {:.13e} [{}] ± {:.1e}", v.value, v.method, v.error_estimate);
    }
    Ok(())
}
