//! Laplace transform of the kernel at s = 40 against the closed-form Green
//! function of −L + 40.

use octoheat::geometry::{green_shape, laplace_transform};
use octoheat::kernels::{CylindricalPoint, Kernels};
use octoheat::validation::calibrate;
use octoheat::TruncationControl;

fn main() -> octoheat::Result<()> {
    let cal = calibrate()?.calibration();
    let k = Kernels::new(TruncationControl::default(), cal);
    println!("c_green = {:.15e}", cal.c_green);
    for &(r, eta) in &[(0.3, 0.5), (0.7, 1.2), (1.1, 2.0)] {
        let p = CylindricalPoint::new(r, eta)?;
        let lt = laplace_transform(&k, p)?;
        let g = cal.c_green * green_shape(p)?;
        println!(
            "({r}, {eta}): laplace = {:.13e} (short {:.6e}, tail {:.6e})  green = {g:.13e}",
            lt.value, lt.short_time, lt.long_time
        );
    }
    Ok(())
}
