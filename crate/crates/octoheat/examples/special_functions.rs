//! Jacobi and Gegenbauer polynomials, the fiber zonal functions h_m and the
//! wrapped-Gaussian jet behind the S¹¹ kernel.

use num_complex::Complex64;
use octoheat::specfun::{gegenbauer_c, h_m, h_m_laplace, jacobi_p, theta_v};

fn main() -> octoheat::Result<()> {
    println!("P_k^(3,7)(0.3):");
    for k in 0..6 {
        println!("  k = {k}: {:+.12e}", jacobi_p(k, 3.0, 7.0, 0.3)?);
    }

    println!("C_m^3(cos 0.7) and h_m(0.7):");
    for m in 0..6 {
        let c = gegenbauer_c(m, 3.0, 0.7f64.cos())?;
        let h = h_m(m, 0.7)?;
        let hl = h_m_laplace(m, 0.7, 1e-12)?;
        println!("  m = {m}: C = {c:+.12e}  h = {h:+.12e}  laplace = {hl:+.12e}");
    }

    let jet = theta_v(0.3, Complex64::new(0.9, 0.0), 5)?;
    println!("d^j/dδ^j θ(0.3, δ) at δ = 0.9:");
    for (j, v) in jet.as_array().iter().enumerate() {
        println!("  j = {j}: {:+.12e}", v.re);
    }
    Ok(())
}
