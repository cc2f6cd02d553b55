//! Literal forms that the computed kernel does not reproduce. Each test
//! asserts the nominal statement and is ignored; the accompanying reason
//! gives the measured value.

use octoheat::geometry::{distance_oracle, phi_solver, printed_critical_value, Branch, DEFAULT_ORACLE_TIMES};
use octoheat::kernels::{CylindricalPoint, Kernels};
use octoheat::validation::check_rodrigues_identity;

#[test]
#[ignore = "measured slope is -10.843; the O(t) correction shifts it by about +0.12 at this time"]
fn raw_diagonal_slope_at_5e_3() {
    let k = Kernels::default();
    let o = CylindricalPoint::new(0.0, 0.0).unwrap();
    let h = 1e-3;
    let f = |s: f64| k.p_oct_integral(s.exp(), o).unwrap().log_value;
    let x = (5e-3f64).ln();
    let slope = (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h);
    assert!((slope + 11.0).abs() < 0.1, "slope {slope}");
}

#[test]
#[ignore = "(eta - phi)^2 + arccos^2(cos r cos phi) overshoots the oracle by a factor of about 6 off the axes"]
fn printed_critical_form_matches_oracle() {
    let k = Kernels::default();
    for &(r, e) in &[(0.5, 1.0), (1.0, 2.0)] {
        let oracle = distance_oracle(&k, CylindricalPoint::new(r, e).unwrap(), &DEFAULT_ORACLE_TIMES).unwrap().d2;
        let phi = phi_solver(r, e, Branch::Principal).unwrap();
        let printed = printed_critical_value(r, e, phi);
        assert!(((printed - oracle) / oracle).abs() < 0.02, "printed {printed} vs oracle {oracle}");
    }
}

#[test]
#[ignore = "the fitted constant is 1/8 for every m"]
fn bridge_constant_is_one_sixth() {
    let r = check_rodrigues_identity(10).unwrap();
    assert!(r.get("bridge identity constant vs 1/6").unwrap().pass);
}

#[test]
#[ignore = "the printed series scale gives total mass 16"]
fn printed_spectral_scale_has_unit_mass() {
    let k = Kernels::default();
    let m = octoheat::validation::octonionic_mass(&k, 1.0).unwrap();
    assert!((m - 1.0).abs() < 1e-6, "mass {m}");
}
