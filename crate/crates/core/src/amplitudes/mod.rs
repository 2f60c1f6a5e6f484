//! Scattering amplitudes assembled from mode data, and sampled cross
//! sections. Amplitudes are in units of `1/√k`.

mod curve;
mod grid;

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::asymptotics::AsymptoticError;
use crate::radial::{ModeTable, RadialError, Regime, VortexParams};
use crate::summation::CompensatedSum;

pub use curve::{cross_section_curve, CrossSectionCurve, CurveSample, Method, Units};
pub use grid::{AngleGrid, DEFAULT_POINTS, DENSE_STEP};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AmplitudeError {
    #[error("amplitude is singular at phi = {0}")]
    Singular(f64),
    #[error("angle {0} outside (-pi, pi)")]
    Angle(f64),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("mode table does not cover n = {n}")]
    Coverage { n: i64 },
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error("at phi = {phi}: {source}")]
    Asymptotic {
        phi: f64,
        #[source]
        source: AsymptoticError,
    },
}

/// All pieces of the far-field amplitude at one angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeBreakdown {
    pub phi: f64,
    pub f_ab: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
    /// `f1 + f2`, summed as `Σ(1 + c_n)` so that it vanishes identically
    /// without a scatterer.
    pub near: Complex64,
}

impl AmplitudeBreakdown {
    pub fn total(&self) -> Complex64 {
        self.f_ab + self.near + self.f3
    }

    /// `k·(f1 f2* + f1* f2)`.
    pub fn interference(&self) -> f64 {
        2.0 * (self.f1 * self.f2.conj()).re
    }
}

/// `a_n = (2π)^{−1/2} e^{i(|n| − ½|n−μ|)π}`.
pub fn incoming_coefficient(n: i64, mu: f64) -> Complex64 {
    let turns = (n.abs() as f64 - 0.5 * (n as f64 - mu).abs()).rem_euclid(2.0);
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), turns * PI)
}

/// `e^{i(|n| − |n−μ|)π}`, reduced modulo `2π` before exponentiating.
pub fn mode_phase(n: i64, mu: f64) -> Complex64 {
    let turns = (n.abs() as f64 - (n as f64 - mu).abs()).rem_euclid(2.0);
    Complex64::from_polar(1.0, turns * PI)
}

/// Aharonov–Bohm amplitude `i sin(μπ)/√(2π) · e^{i(⌊μ⌋+½)φ}/sin(φ/2)`.
pub fn ab_amplitude(phi: f64, mu: f64) -> Result<Complex64, AmplitudeError> {
    if !(phi.abs() <= PI) {
        return Err(AmplitudeError::Angle(phi));
    }
    if phi == 0.0 {
        return Err(AmplitudeError::Singular(phi));
    }
    let frac = mu - mu.floor();
    let strength = (frac * PI).sin() * if mu.floor().rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
    let arg = ((mu.floor() + 0.5) * phi).rem_euclid(2.0 * PI);
    Ok(Complex64::new(0.0, strength / (2.0 * PI).sqrt()) * Complex64::from_polar(1.0, arg) / (0.5 * phi).sin())
}

fn prefactor() -> Complex64 {
    Complex64::new(0.0, 1.0 / (2.0 * PI).sqrt())
}

fn angular(n: i64, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, (n as f64 * phi).rem_euclid(2.0 * PI))
}

/// Diffraction amplitude: the field-independent sum over modes with
/// `|n − μ| ≤ X`, compensated and in increasing `n`.
pub fn f1_sum(phi: f64, params: &VortexParams) -> Complex64 {
    let lo = (params.mu - params.kr_c).ceil() as i64;
    let hi = (params.mu + params.kr_c).floor() as i64;
    let acc: CompensatedSum = (lo..=hi).map(|n| angular(n, phi) * mode_phase(n, params.mu)).collect();
    prefactor() * acc.total()
}

/// Penetration and edge amplitudes from a mode table.
pub fn fc_sums(phi: f64, table: &ModeTable) -> Result<(Complex64, Complex64), AmplitudeError> {
    let b = breakdown_parts(phi, table)?;
    Ok((b.1, b.2))
}

/// `(f1, f2, f3, f1 + f2)` in one pass over the table.
fn breakdown_parts(phi: f64, table: &ModeTable) -> Result<(Complex64, Complex64, Complex64, Complex64), AmplitudeError> {
    if !table.covers_default() {
        let need = table.params.mode_range();
        let have = table.range();
        let n = if have.start() > need.start() { *need.start() } else { *need.end() };
        return Err(AmplitudeError::Coverage { n });
    }
    let mu = table.params.mu;
    let mut f1 = CompensatedSum::default();
    let mut f2 = CompensatedSum::default();
    let mut near = CompensatedSum::default();
    let mut f3 = CompensatedSum::default();
    let one = Complex64::new(1.0, 0.0);
    for m in table.iter() {
        if m.c_n == Complex64::new(0.0, 0.0) && m.regime == Regime::Far {
            continue;
        }
        let w = angular(m.n, phi) * mode_phase(m.n, mu);
        match m.regime {
            Regime::Near => {
                f1.add(w);
                f2.add(w * m.c_n);
                near.add(w * (one + m.c_n));
            }
            Regime::Far => f3.add(w * m.c_n),
        }
    }
    let p = prefactor();
    Ok((p * f1.total(), p * f2.total(), p * f3.total(), p * near.total()))
}

/// Every amplitude at `phi`; `f_ab` is zero at `phi = 0`, where it is
/// undefined.
pub fn amplitude_breakdown(phi: f64, table: &ModeTable) -> Result<AmplitudeBreakdown, AmplitudeError> {
    if !(phi.abs() < PI) {
        return Err(AmplitudeError::Angle(phi));
    }
    let (f1, f2, f3, near) = breakdown_parts(phi, table)?;
    let f_ab = if phi == 0.0 { Complex64::new(0.0, 0.0) } else { ab_amplitude(phi, table.params.mu)? };
    Ok(AmplitudeBreakdown { phi, f_ab, f1, f2, f3, near })
}
