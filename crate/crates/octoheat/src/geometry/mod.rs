//! Geometry of the radial picture: the sub-Laplacian and its measure, the
//! Green function of -L + 40, the sub-Riemannian distance and small-time
//! asymptotics of the kernel.

mod asymptotics;
mod distance;
mod green;
mod operator;

pub use asymptotics::{
    asympt_constants, asympt_constants_weighted, asympt_diagonal, asympt_diagonal_weighted, asympt_horizontal,
    asympt_horizontal_printed, asympt_offdiagonal, asympt_offdiagonal_printed, asympt_vertical, AsymptoticConstants,
};
pub use distance::{
    critical_value, distance_candidates, distance_oracle, phi_solver, printed_critical_value, simplified_critical_value,
    srd_distance, srd_distance_solver, ArccosBranch, Branch, CriticalForm, DistanceCandidate, DistanceResult,
    OracleEstimate, DEFAULT_ORACLE_TIMES,
};
pub use green::{green, green_shape, laplace_transform, LaplaceTransform, GREEN_MASS, PRINTED_GREEN_CONSTANT};
pub use operator::{
    apply_quaternionic_sublaplacian, apply_radial_sublaplacian, default_step, measure_constant, measure_density,
    riemannian_cos_delta, PRINTED_MEASURE_CONSTANT,
};
