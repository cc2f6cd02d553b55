//! Heat kernel of the round S¹¹ by its spectral series, the closed theta
//! form and the small-time expansion, inside and beyond the cut.

use octoheat::sphere_heat::{q11_small_time_interior, q11_spectral, q11_theta, SphereArgument, SphereKernelRequest};
use octoheat::TruncationControl;

fn main() -> octoheat::Result<()> {
    let control = TruncationControl::default();
    println!("{:>6} {:>6} {:>22} {:>22} {:>22}", "t", "delta", "spectral", "theta", "small-time");
    for &t in &[0.05, 0.2, 1.0] {
        for &delta in &[0.1, 0.5, 1.5, 3.0] {
            let s = q11_spectral(t, f64::cos(delta), &control)?;
            let th = q11_theta(t, delta, &control)?;
            let st = if t <= 0.05 { format!("{:.14e}", q11_small_time_interior(t, delta)?.value) } else { "-".into() };
            println!("{t:>6} {delta:>6} {:>22.14e} {:>22.14e} {st:>22}", s.value, th.value);
        }
    }

    // Imaginary angle: x = cosh y > 1 feeds the integral representation.
    for &y in &[0.2, 1.0, 2.0] {
        let q = SphereKernelRequest { t: 0.3, argument: SphereArgument::Cosh(y), control }.evaluate()?;
        println!("q(0.3, cosh {y}) = {:.14e} [{}]", q.value, q.method);
    }
    Ok(())
}
