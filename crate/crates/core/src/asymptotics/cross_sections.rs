//! Closed-form cross sections.
//!
//! Fraunhofer values are `k·dσ/(dz dφ)`; penetration and classical values
//! are in units of `r_c`.

use std::f64::consts::{FRAC_2_PI, PI};

use super::{sign, AsymptoticError};
use crate::specfun::airy_ai;

/// Location of the first maximum of `Ai(−t)`, as `t`.
pub const AIRY_FIRST_MAX: f64 = 1.018_792_971_647_471;

/// Sign of `eB`, fixing the side to which the field deflects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChargeSign {
    Positive,
    Negative,
}

impl ChargeSign {
    pub fn of(mu: f64) -> Self {
        if mu < 0.0 {
            ChargeSign::Negative
        } else {
            ChargeSign::Positive
        }
    }

    fn value(self) -> f64 {
        match self {
            ChargeSign::Positive => 1.0,
            ChargeSign::Negative => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PenetrationBranch {
    Strong,
    Weak,
    Rainbow,
    Outside,
}

fn check_angle(phi: f64) -> Result<(), AsymptoticError> {
    if phi.is_finite() && phi > -PI && phi < PI {
        Ok(())
    } else {
        Err(AsymptoticError::Domain(format!("angle {phi} outside (-pi, pi)")))
    }
}

/// Fraunhofer diffraction `(2/π)·sin²(Xφ/2)/sin²(φ/2)·cos²(μπ + Xφ/2)`.
///
/// Only the fractional part of `μ` enters, so the result is exactly
/// periodic in `μ`.
pub fn fraunhofer_cs(phi: f64, mu: f64, kr_c: f64) -> f64 {
    let frac = mu - mu.floor();
    let c = (frac * PI + 0.5 * kr_c * phi).cos();
    if phi == 0.0 {
        return FRAC_2_PI * kr_c * kr_c * c * c;
    }
    let ratio = (0.5 * kr_c * phi).sin() / (0.5 * phi).sin();
    FRAC_2_PI * ratio * ratio * c * c
}

/// Analytic `φ`-derivative of [`fraunhofer_cs`].
pub fn fraunhofer_cs_slope(phi: f64, mu: f64, kr_c: f64) -> f64 {
    let frac = mu - mu.floor();
    let h = 0.5 * kr_c;
    let arg = frac * PI + h * phi;
    let (sc, cc) = arg.sin_cos();
    if phi == 0.0 {
        // the ratio is even in φ, so only the cosine factor moves
        return FRAC_2_PI * kr_c * kr_c * (-2.0 * h * cc * sc);
    }
    let (sx, cx) = (h * phi).sin_cos();
    let (sh, ch) = (0.5 * phi).sin_cos();
    let ratio = sx / sh;
    let dratio = (h * cx * sh - 0.5 * sx * ch) / (sh * sh);
    FRAC_2_PI * (2.0 * ratio * dratio * cc * cc - 2.0 * h * ratio * ratio * cc * sc)
}

/// Classical cross section for orbit radius `ρ = r_B/r_c`.
///
/// `ρ < 1`: every angle is reached. `ρ ≥ 1`: only
/// `0 ≤ −sgn(eB)φ ≤ 2 arcsin(1/ρ)`; zero outside, `+∞` on the edge.
/// `ρ = 1` gives `|sin φ|`.
pub fn classical_cs(phi: f64, rb_over_rc: f64, sign_eb: ChargeSign) -> Result<f64, AsymptoticError> {
    check_angle(phi)?;
    let rho = rb_over_rc;
    if !(rho.is_finite() && rho > 0.0) {
        return Err(AsymptoticError::Domain(format!("orbit ratio {rho} must be positive")));
    }
    let half = 0.5 * phi;
    let s = sign_eb.value();
    if rho < 1.0 {
        let rho2 = rho * rho;
        let root = (1.0 - rho2 * half.sin() * half.sin()).sqrt();
        let bracket = 0.5 * (1.0 + rho2 * phi.cos()) / root - sign(s * phi) * rho * half.cos();
        return Ok(half.sin().abs() * bracket);
    }
    let side = -s * phi;
    if side < 0.0 {
        return Ok(0.0);
    }
    if rho == 1.0 {
        return Ok(phi.sin().abs());
    }
    let edge = 2.0 * (1.0 / rho).asin();
    if side > edge {
        return Ok(0.0);
    }
    let rho2 = rho * rho;
    let under = 1.0 - rho2 * half.sin() * half.sin();
    if side == edge || under <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(half.sin().abs() * (1.0 + rho2 * phi.cos()) / under.sqrt())
}

/// Half-width of the window around the extremal angle where the Airy form
/// is reported: `6·(2|μ|)^{−2/3}/√(ρ² − 1)`, `ρ = X/(2|μ|)`.
pub fn rainbow_window(mu: f64, kr_c: f64) -> Option<f64> {
    let rho = kr_c / (2.0 * mu.abs());
    (mu != 0.0 && rho > 1.0).then(|| 6.0 * (2.0 * mu.abs()).powf(-2.0 / 3.0) / (rho * rho - 1.0).sqrt())
}

/// Angle of the first Airy maximum, on the lit side of the extremal angle.
pub fn rainbow_peak_angle(mu: f64, kr_c: f64) -> Option<f64> {
    let rho = kr_c / (2.0 * mu.abs());
    if mu == 0.0 || rho <= 1.0 {
        return None;
    }
    let scale = (2.0 * mu.abs()).powf(2.0 / 3.0) * (rho * rho - 1.0).sqrt();
    let extr = -2.0 * (2.0 * mu / kr_c).asin();
    Some(extr + sign(mu) * AIRY_FIRST_MAX / scale)
}

/// Airy rainbow form, evaluated as written: it carries no `r_c`, and its
/// `(2|μ|)^{4/3}` growth matches a `k·dσ` normalization. It is therefore
/// taken as `k·dσ/(dz dφ)`; divide by `X` for `r_c` units.
pub fn rainbow_cs(phi: f64, mu: f64, kr_c: f64) -> Result<f64, AsymptoticError> {
    check_angle(phi)?;
    if mu == 0.0 || 2.0 * mu.abs() > kr_c {
        return Err(AsymptoticError::Domain(format!("rainbow needs 0 < 2|mu| <= kr_c (mu={mu}, kr_c={kr_c})")));
    }
    let rho = kr_c / (2.0 * mu);
    let excess = rho * rho - 1.0;
    let two_mu = 2.0 * mu.abs();
    let arg = -sign(mu) * (phi + 2.0 * (2.0 * mu / kr_c).asin()) * two_mu.powf(2.0 / 3.0) * excess.sqrt();
    let ai = airy_ai(arg.clamp(-100.0, 100.0));
    Ok((2.0 * PI).powi(2) * two_mu.powf(4.0 / 3.0) * excess * ai * ai)
}

/// Penetration cross section in units of `r_c`, with the branch used.
///
/// `2|μ| > X`: strong-field form. Otherwise the weak-field two-branch form
/// inside the classically allowed window, and the Airy form within
/// [`rainbow_window`] of the extremal angle (which overrides the former,
/// also on the dark side). At `2|μ| = X` exactly the weak form is used.
pub fn penetration_cs(phi: f64, mu: f64, kr_c: f64) -> Result<(f64, PenetrationBranch), AsymptoticError> {
    check_angle(phi)?;
    if mu == 0.0 || !mu.is_finite() || !(kr_c > 0.0) {
        return Err(AsymptoticError::Domain(format!("penetration needs mu != 0 (mu={mu}, kr_c={kr_c})")));
    }
    if 2.0 * mu.abs() > kr_c {
        let half = 0.5 * phi;
        let q = kr_c / (2.0 * mu);
        let q2 = q * q;
        // written term by term like the classical form with r_B/r_c = |q|
        let root = (1.0 - q2 * half.sin() * half.sin()).sqrt();
        let bracket = 0.5 * (1.0 + q2 * phi.cos()) / root - sign(phi) * q * half.cos();
        return Ok((half.sin().abs() * bracket, PenetrationBranch::Strong));
    }
    if let Some(width) = rainbow_window(mu, kr_c) {
        let extr = -2.0 * (2.0 * mu / kr_c).asin();
        if (phi - extr).abs() <= width {
            return Ok((rainbow_cs(phi, mu, kr_c)? / kr_c, PenetrationBranch::Rainbow));
        }
    }
    weak_field_cs(phi, mu, kr_c).map(|v| match v {
        Some(v) => (v, PenetrationBranch::Weak),
        None => (0.0, PenetrationBranch::Outside),
    })
}

/// Two-branch weak-field form in units of `r_c`, with its interference
/// term, and no rainbow override. `None` outside the classically allowed
/// window `0 ≤ −sgn(μ)φ < 2 arcsin(2|μ|/X)`.
pub fn weak_field_cs(phi: f64, mu: f64, kr_c: f64) -> Result<Option<f64>, AsymptoticError> {
    check_angle(phi)?;
    if mu == 0.0 || !mu.is_finite() || !(kr_c >= 2.0 * mu.abs()) {
        return Err(AsymptoticError::Domain(format!("weak field needs 0 < 2|mu| <= kr_c (mu={mu}, kr_c={kr_c})")));
    }
    let q = kr_c / (2.0 * mu);
    let q2 = q * q;
    let side = -sign(mu) * phi;
    let limit = 2.0 * (2.0 * mu.abs() / kr_c).asin();
    if side < 0.0 || side >= limit {
        return Ok(None);
    }
    let s = (0.5 * phi).sin().abs();
    let under = 1.0 - q2 * s * s;
    if under <= 0.0 {
        return Ok(None);
    }
    let root = under.sqrt();
    let phase = 4.0 * mu.abs() * (q.abs() * s).min(1.0).acos() - 2.0 * kr_c * s * root;
    let value = s / root * (1.0 + q2 * phi.cos() + (q2 - 1.0) * phase.sin());
    Ok(Some(value.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraunhofer_limits_and_zeros() {
        let x = 100.0;
        assert!((fraunhofer_cs(0.0, 0.3, x) - FRAC_2_PI * x * x * (0.3 * PI).cos().powi(2)).abs() < 1e-9);
        assert!((fraunhofer_cs(1e-12, 0.3, x) / fraunhofer_cs(0.0, 0.3, x) - 1.0).abs() < 1e-9);
        assert!(fraunhofer_cs(0.0, 0.5, x) < 1e-25);
        // cosine-factor zero: Xφ/2 = π/2 − μπ + π
        let phi = 2.0 * (PI / 2.0 - 0.5 * PI + PI) / x;
        assert!(fraunhofer_cs(phi, 0.5, x) < 1e-20);
        for phi in [-0.3, 0.01, 0.2] {
            assert_eq!(fraunhofer_cs(phi, 0.3, x), fraunhofer_cs(phi, 1.3, x));
        }
    }

    #[test]
    fn fraunhofer_slope_is_derivative() {
        let h = 1e-6;
        for &(phi, mu) in &[(0.013, 0.3), (-0.05, 0.71), (0.0, 0.2), (0.4, 2.9)] {
            let fd = (fraunhofer_cs(phi + h, mu, 80.0) - fraunhofer_cs(phi - h, mu, 80.0)) / (2.0 * h);
            let an = fraunhofer_cs_slope(phi, mu, 80.0);
            assert!((fd - an).abs() < 1e-5 * an.abs().max(1.0), "{phi}: {fd} vs {an}");
        }
    }

    #[test]
    fn classical_symmetry_and_edge() {
        for &rho in &[0.4, 1.0, 2.0] {
            for &phi in &[-2.5, -1.0, -0.2, 0.3, 1.7] {
                let a = classical_cs(phi, rho, ChargeSign::Positive).unwrap();
                let b = classical_cs(-phi, rho, ChargeSign::Negative).unwrap();
                assert_eq!(a, b);
            }
        }
        let edge = -2.0 * 0.5f64.asin();
        assert_eq!(classical_cs(edge, 2.0, ChargeSign::Positive).unwrap(), f64::INFINITY);
        assert!(classical_cs(edge + 1e-6, 2.0, ChargeSign::Positive).unwrap() > 100.0);
        assert_eq!(classical_cs(edge - 1e-3, 2.0, ChargeSign::Positive).unwrap(), 0.0);
        assert_eq!(classical_cs(0.5, 2.0, ChargeSign::Positive).unwrap(), 0.0);
    }

    #[test]
    fn strong_branch_coincides_with_classical() {
        for &(mu, x) in &[(25.0, 30.0), (-40.0, 50.0), (80.0, 100.0)] {
            for k in 0..101 {
                let phi = -3.1 + 6.2 * k as f64 / 100.0;
                let (v, b) = penetration_cs(phi, mu, x).unwrap();
                assert_eq!(b, PenetrationBranch::Strong);
                let c = classical_cs(phi, x / (2.0 * f64::abs(mu)), ChargeSign::of(mu)).unwrap();
                assert_eq!(v, c, "phi={phi}");
            }
        }
    }

    #[test]
    fn weak_branch_at_unit_ratio_is_sine() {
        for k in 1..100 {
            let phi = -PI * k as f64 / 100.0;
            let (v, b) = penetration_cs(phi, 50.0, 100.0).unwrap();
            assert_eq!(b, PenetrationBranch::Weak);
            assert!((v - phi.sin().abs()).abs() < 1e-12);
        }
        assert_eq!(penetration_cs(0.5, 50.0, 100.0).unwrap().1, PenetrationBranch::Outside);
    }

    #[test]
    fn rainbow_branch_is_finite_and_peaks_at_airy_maximum() {
        let (mu, x) = (25.0, 100.0);
        let extr = -PI / 3.0;
        let w = rainbow_window(mu, x).unwrap();
        let mut best = (0.0, f64::NEG_INFINITY);
        let mut phi = extr - w;
        while phi <= extr + w {
            let (v, b) = penetration_cs(phi, mu, x).unwrap();
            assert_eq!(b, PenetrationBranch::Rainbow);
            assert!(v.is_finite());
            if v > best.1 {
                best = (phi, v);
            }
            phi += 1e-5;
        }
        let peak = rainbow_peak_angle(mu, x).unwrap();
        assert!((best.0 - peak).abs() < 2e-5, "{} vs {peak}", best.0);
        assert!(peak > extr);
    }
}
