use std::f64::consts::PI;

use num_complex::Complex64;

use super::phases::{deflection, xi_smooth, zeta_phase, zeta_smooth};
use super::stationary::{poisson_stationary_sum, Phase};
use super::{sign, AsymptoticError};
use crate::summation::CompensatedSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum F2Mode {
    DirectSum,
    StationaryPhase,
}

/// `χ(n) = nφ + 2(ζ̃ − ξ̃)`: the penetration phase with the `|n|` and
/// `|n−μ|` kinks absorbed. At integer `n` it equals
/// `nφ + μ sgn(n−μ)π + 2(ζ − ξ)` modulo `2π`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F2Phase {
    pub phi: f64,
    pub mu: f64,
    pub kr_c: f64,
}

impl F2Phase {
    fn clamp(&self, n: f64) -> f64 {
        n.clamp(self.mu - self.kr_c, self.mu + self.kr_c)
    }

    /// Integer window `[⌈μ−X⌉, ⌊μ+X⌋]` of allowed modes.
    pub fn window(&self) -> (i64, i64) {
        ((self.mu - self.kr_c).ceil() as i64, (self.mu + self.kr_c).floor() as i64)
    }
}

impl Phase for F2Phase {
    fn value(&self, n: f64) -> f64 {
        let m = self.clamp(n);
        match zeta_smooth(m, self.mu, self.kr_c) {
            Ok(z) => n * self.phi + 2.0 * (z - xi_smooth(m, self.mu, self.kr_c)),
            Err(_) => f64::NAN,
        }
    }

    fn slope(&self, n: f64) -> f64 {
        match deflection(self.clamp(n), self.mu, self.kr_c) {
            Ok(theta) => self.phi - theta,
            Err(_) => f64::NAN,
        }
    }
}

/// Asymptotic penetration amplitude in units of `1/√k`:
/// `−(i/√2π) Σ_{|n−μ|≤X} e^{i[nφ + μ sgn(n−μ)π]} e^{2i(ζ_n − ξ_n)}`.
pub fn f2_asymptotic(phi: f64, mu: f64, kr_c: f64, mode: F2Mode) -> Result<Complex64, AsymptoticError> {
    if !(phi.abs() > 0.0 && phi.abs() < PI) {
        return Err(AsymptoticError::Domain(format!("angle {phi} must satisfy 0 < |phi| < pi")));
    }
    if !(kr_c >= 10.0) {
        return Err(AsymptoticError::Domain(format!("kr_c = {kr_c} below the large-radius regime")));
    }
    let phase = F2Phase { phi, mu, kr_c };
    let (lo, hi) = phase.window();
    let sum = match mode {
        F2Mode::DirectSum => {
            let mut acc = CompensatedSum::default();
            for n in lo..=hi {
                let nf = n as f64;
                let w = zeta_phase(nf, mu, kr_c)?;
                // e^{iμ sgn(n−μ)π}, with μ reduced mod 2 for accuracy
                let ab = sign(nf - mu) * (mu.rem_euclid(2.0)) * PI;
                let arg = (nf * phi).rem_euclid(2.0 * PI) + ab + 2.0 * (w.zeta - w.xi);
                acc.add(Complex64::from_polar(1.0, arg));
            }
            acc.total()
        }
        F2Mode::StationaryPhase => poisson_stationary_sum(&phase, (lo, hi))?.total,
    };
    Ok(Complex64::new(0.0, -1.0) * sum / (2.0 * PI).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_phase_agrees_mod_two_pi() {
        let (phi, mu, x) = (-0.3, 10.4, 100.0);
        let p = F2Phase { phi, mu, kr_c: x };
        let (lo, hi) = p.window();
        for n in lo..=hi {
            let nf = n as f64;
            let w = zeta_phase(nf, mu, x).unwrap();
            let literal = nf * phi + mu * sign(nf - mu) * PI + 2.0 * (w.zeta - w.xi);
            let d = (p.value(nf) - literal).rem_euclid(2.0 * PI);
            assert!(d.min(2.0 * PI - d) < 1e-9, "n={n}");
        }
    }

    #[test]
    fn slope_matches_value() {
        let p = F2Phase { phi: 0.2, mu: 25.0, kr_c: 100.0 };
        let h = 1e-5;
        for n in [-60.0, -0.5, 0.5, 20.0, 110.0] {
            let fd = (p.value(n + h) - p.value(n - h)) / (2.0 * h);
            assert!((fd - p.slope(n)).abs() < 1e-6, "n={n}");
        }
    }

    #[test]
    fn stationary_phase_tracks_direct_sum() {
        let d = f2_asymptotic(-0.3, 10.0, 100.0, F2Mode::DirectSum).unwrap();
        let s = f2_asymptotic(-0.3, 10.0, 100.0, F2Mode::StationaryPhase).unwrap();
        assert!((d - s).norm() / d.norm() < 0.05, "{d} vs {s}");
    }

    #[test]
    fn forward_magnitude_shrinks() {
        let mid = f2_asymptotic(-0.3, 10.0, 100.0, F2Mode::DirectSum).unwrap().norm();
        let fwd = f2_asymptotic(-1e-3, 10.0, 100.0, F2Mode::DirectSum).unwrap().norm();
        assert!(fwd < 0.2 * mid, "{fwd} vs {mid}");
    }
}
