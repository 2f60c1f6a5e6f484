//! Exact partial-wave solution: interior ODE, exterior cylinder basis and
//! matching across the delta shell at `x = X`.

mod inside;
mod matching;
mod ode;
mod params;

use thiserror::Error;

use crate::specfun::SpecFunError;

pub use inside::{inside_solution, InsideSolution};
pub use matching::{
    match_coefficient, match_with_inside, mode_table, outside_basis_at_edge, ModeMatch, ModeTable,
    OutsideBasis, TAIL_THRESHOLD,
};
pub use params::{
    gamma_profile, Barrier, FieldProfile, ModeIndex, Regime, RegimeWarning, Spin, VortexParams,
    FLUX_RATIO_LIMIT, LARGE_RADIUS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadialError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("interior integration failed to meet tolerance near x = {x}")]
    Solver { x: f64 },
    #[error("matching denominator vanishes for mode n = {n} (interior resonance)")]
    Degenerate { n: i64 },
    #[error("special function failure in mode n = {n}: {source}")]
    SpecFun {
        n: i64,
        #[source]
        source: SpecFunError,
    },
    #[error("mode n = {n} is not covered by the table")]
    Coverage { n: i64 },
}
