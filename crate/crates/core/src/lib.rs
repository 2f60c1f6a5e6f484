//! Scattering of a nonrelativistic spin-1/2 charged particle by a
//! finite-radius, penetrable magnetic vortex.
//!
//! All lengths are measured in units of `1/k`; the vortex radius enters as
//! the dimensionless `X = k r_c`. Cross sections are `k·dσ/(dz dφ)` unless a
//! routine says otherwise.

pub mod specfun;
pub mod quadrature;
pub mod radial;
pub mod summation;
pub mod asymptotics;
pub mod amplitudes;
