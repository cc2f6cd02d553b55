//! Applies the radial sub-Laplacian to the kernel by finite differences and
//! compares with the time derivative.

use octoheat::geometry::{apply_radial_sublaplacian, default_step};
use octoheat::kernels::{CylindricalPoint, Kernels};

fn main() -> octoheat::Result<()> {
    let k = Kernels::default();
    for &(t, r, eta) in &[(0.3, 0.4, 0.8), (0.6, 0.9, 1.7), (1.2, 0.2, 2.4)] {
        let p = CylindricalPoint::new(r, eta)?;
        let h = default_step(p);
        let f = |r: f64, eta: f64| k.p_oct_spectral(t, CylindricalPoint { r, eta }).map(|v| v.value).unwrap_or(f64::NAN);
        let lp = apply_radial_sublaplacian(f, p, h)?;
        let dt = 1e-4;
        let dp = (k.p_oct_spectral(t + dt, p)?.value - k.p_oct_spectral(t - dt, p)?.value) / (2.0 * dt);
        println!("t = {t} (r, eta) = ({r}, {eta}): L p = {lp:+.10e}  dp/dt = {dp:+.10e}  rel = {:.1e}", ((lp - dp) / dp).abs());
    }
    Ok(())
}
