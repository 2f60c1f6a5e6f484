//! Cylinder functions of real order and the Airy function.
//!
//! Everything here is pure and reentrant; callers may evaluate from any
//! number of threads.

mod airy;
mod bessel;

use num_complex::Complex64;
use thiserror::Error;

pub use airy::airy_ai;
pub use bessel::{bessel_j, bessel_jy, bessel_second, BesselPair};

/// Largest supported order.
pub const MAX_ORDER: f64 = 500.0;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1000.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("cylinder order {0} outside [0, {MAX_ORDER}]")]
    Order(f64),
    #[error("argument {0} outside (0, {MAX_ARGUMENT}]")]
    Argument(f64),
    #[error("continued fraction did not converge for nu={nu}, x={x}")]
    NoConvergence { nu: f64, x: f64 },
    #[error("second solution overflows for nu={nu}, x={x}")]
    Overflow { nu: f64, x: f64 },
}

/// Order `ν ≥ 0` of a cylinder function; in scattering `ν = |n − μ|`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CylinderOrder(f64);

impl CylinderOrder {
    pub fn new(nu: f64) -> Result<Self, SpecFunError> {
        if nu.is_finite() && (0.0..=MAX_ORDER).contains(&nu) {
            Ok(Self(nu))
        } else {
            Err(SpecFunError::Order(nu))
        }
    }

    /// Order of partial wave `n` in a vortex of flux `μ`.
    pub fn for_mode(n: i64, mu: f64) -> Result<Self, SpecFunError> {
        Self::new((n as f64 - mu).abs())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Direction of a travelling cylindrical wave.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HankelKind {
    /// `e^{+ix}` at large argument.
    Outgoing,
    /// `e^{−ix}` at large argument.
    Incoming,
}

/// `√(π/2)·(J_ν ± iY_ν)(x)`, normalized so that the large-`x` form is
/// `x^{−1/2} e^{±i(x − νπ/2 − π/4)}` with no extra constant.
pub fn hankel_out(kind: HankelKind, nu: CylinderOrder, x: f64) -> Result<Complex64, SpecFunError> {
    hankel_with_derivative(kind, nu, x).map(|(h, _)| h)
}

/// Value and x-derivative of [`hankel_out`].
pub fn hankel_with_derivative(
    kind: HankelKind,
    nu: CylinderOrder,
    x: f64,
) -> Result<(Complex64, Complex64), SpecFunError> {
    let p = bessel_jy(nu, x)?;
    Ok(hankel_from_pair(kind, &p))
}

pub(crate) fn hankel_from_pair(kind: HankelKind, p: &BesselPair) -> (Complex64, Complex64) {
    let norm = (std::f64::consts::PI / 2.0).sqrt();
    let s = match kind {
        HankelKind::Outgoing => 1.0,
        HankelKind::Incoming => -1.0,
    };
    (
        Complex64::new(norm * p.j, s * norm * p.y),
        Complex64::new(norm * p.dj, s * norm * p.dy),
    )
}
