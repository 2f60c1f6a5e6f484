//! WKB phases, classical deflection, stationary-phase evaluation of
//! oscillatory mode sums, and closed-form cross sections.

mod cross_sections;
mod f2;
mod phases;
mod stationary;

use thiserror::Error;

pub use cross_sections::{
    classical_cs, fraunhofer_cs, fraunhofer_cs_slope, penetration_cs, rainbow_cs, weak_field_cs, rainbow_peak_angle,
    rainbow_window, ChargeSign, PenetrationBranch, AIRY_FIRST_MAX,
};
pub use f2::{f2_asymptotic, F2Mode, F2Phase};
pub use phases::{
    deflection, extremal_deflection, xi_by_quadrature, xi_phase, zeta_by_quadrature, zeta_phase,
    WkbPhase,
};
pub use stationary::{
    poisson_stationary_sum, Coalescence, Convexity, Phase, StationaryPhaseReport, StationaryPoint,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("mode n = {n} is classically forbidden at the edge (mu = {mu}, kr_c = {kr_c})")]
    Forbidden { n: f64, mu: f64, kr_c: f64 },
    #[error("phase or derivative is not finite at n = {n}")]
    NonFinite { n: f64 },
    #[error("stationary point for l = {l} could not be resolved")]
    Unresolved { l: i64 },
}

/// `sgn` with `sgn(0) = +1`.
pub(crate) fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}
