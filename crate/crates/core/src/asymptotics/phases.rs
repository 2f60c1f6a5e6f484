//! WKB phases at the vortex edge for the uniform field.
//!
//! The closed forms below are written in terms of `1 ± A` rather than `A`
//! itself, so that arguments grazing `±1` keep full relative accuracy.

use super::{sign, AsymptoticError};
use crate::quadrature::GaussLegendre;
use crate::radial::FieldProfile;

/// Slack allowed when an `arccos` argument leaves `[−1, 1]` through rounding.
const CLAMP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WkbPhase {
    pub xi: f64,
    pub zeta: f64,
    /// Inner turning point of the interior integrand.
    pub y0: f64,
}

/// `arccos z` from `1 − z` and `1 + z`.
fn acos_split(one_minus: f64, one_plus: f64) -> Option<f64> {
    if one_minus < -CLAMP_TOL || one_plus < -CLAMP_TOL {
        return None;
    }
    Some(2.0 * one_minus.max(0.0).sqrt().atan2(one_plus.max(0.0).sqrt()))
}

fn check_allowed(n: f64, mu: f64, kr_c: f64) -> Result<f64, AsymptoticError> {
    if !(kr_c > 0.0 && n.is_finite() && mu.is_finite()) {
        return Err(AsymptoticError::Domain(format!("n={n}, mu={mu}, kr_c={kr_c}")));
    }
    let nu = (n - mu).abs();
    if nu > kr_c * (1.0 + CLAMP_TOL) {
        return Err(AsymptoticError::Forbidden { n, mu, kr_c });
    }
    Ok(nu.min(kr_c))
}

/// `√(X² − d²)` computed as `√((X−|d|)(X+|d|))`.
fn edge_momentum(nu: f64, kr_c: f64) -> f64 {
    ((kr_c - nu) * (kr_c + nu)).max(0.0).sqrt()
}

/// Exterior phase `ξ_n(X) = √(X²−ν²) − ν arccos(ν/X)`, `ν = |n−μ|`.
pub fn xi_phase(n: f64, mu: f64, kr_c: f64) -> Result<f64, AsymptoticError> {
    let nu = check_allowed(n, mu, kr_c)?;
    let root = edge_momentum(nu, kr_c);
    // arccos(ν/X) = atan2(√(X²−ν²), ν)
    Ok(root - nu * root.atan2(nu))
}

/// Pieces shared by the interior phase and the deflection function.
struct Interior {
    acos_a1: f64,
    acos_a2: f64,
    /// `arccos(−A2) = π − arccos(A2)`, accurate near `A2 = −1`.
    acos_neg_a2: f64,
}

fn interior(n: f64, mu: f64, kr_c: f64) -> Result<Interior, AsymptoticError> {
    let x2 = kr_c * kr_c;
    let r = (x2 + 4.0 * mu * n).max(0.0).sqrt();
    let xr = kr_c * r;
    let forbidden = || AsymptoticError::Forbidden { n, mu, kr_c };
    if xr == 0.0 {
        return Err(forbidden());
    }
    let rx = r + kr_c;
    let d = n - mu;
    let one_minus_a1 = 2.0 * mu * mu * ((rx - 2.0 * n) * (rx + 2.0 * n) / (rx * rx)) / xr;
    let one_plus_a1 = (xr + x2 + 2.0 * mu * d) / xr;
    let one_plus_a2 = n * (4.0 * mu * kr_c / rx + 2.0 * d) / xr;
    let one_minus_a2 = (xr + x2 - 2.0 * n * d) / xr;
    let acos_a1 = acos_split(one_minus_a1, one_plus_a1).ok_or_else(forbidden)?;
    let acos_a2 = acos_split(one_minus_a2, one_plus_a2).ok_or_else(forbidden)?;
    let acos_neg_a2 = acos_split(one_plus_a2, one_minus_a2).ok_or_else(forbidden)?;
    Ok(Interior { acos_a1, acos_a2, acos_neg_a2 })
}

/// Inner turning point: smaller root `y0²` of `(n − μy²/X²)² = y²`.
fn turning_point(n: f64, mu: f64, kr_c: f64) -> f64 {
    let x2 = kr_c * kr_c;
    let b = 1.0 + 2.0 * mu * n / x2;
    let disc = (1.0 + 4.0 * mu * n / x2).max(0.0);
    (2.0 * n * n / (b + disc.sqrt())).sqrt()
}

/// Interior phase `ζ_n(X)` for the uniform field, spin term dropped.
///
/// At `μ = 0` the field-free limit `ζ = ξ` is returned.
pub fn zeta_phase(n: f64, mu: f64, kr_c: f64) -> Result<WkbPhase, AsymptoticError> {
    let nu = check_allowed(n, mu, kr_c)?;
    let xi = xi_phase(n, mu, kr_c)?;
    if mu == 0.0 {
        return Ok(WkbPhase { xi, zeta: xi, y0: n.abs() });
    }
    let parts = interior(n, mu, kr_c)?;
    let zeta = 0.5 * edge_momentum(nu, kr_c)
        + (kr_c * kr_c + 2.0 * mu * n) / (4.0 * mu.abs()) * parts.acos_a1
        - 0.5 * n.abs() * parts.acos_a2;
    Ok(WkbPhase { xi, zeta, y0: turning_point(n, mu, kr_c) })
}

/// `ξ` with the `|n−μ|` kink removed: `ξ̃ = ξ + |n−μ|π/2`.
pub(crate) fn xi_smooth(n: f64, mu: f64, kr_c: f64) -> f64 {
    let d = (n - mu).clamp(-kr_c, kr_c);
    let root = edge_momentum(d.abs(), kr_c);
    root + d * d.atan2(root)
}

/// `ζ` with the `|n|` kink removed: `ζ̃ = ζ + |n|π/2`.
pub(crate) fn zeta_smooth(n: f64, mu: f64, kr_c: f64) -> Result<f64, AsymptoticError> {
    if mu == 0.0 {
        return Ok(xi_smooth(n, mu, kr_c));
    }
    let nu = check_allowed(n, mu, kr_c)?;
    let parts = interior(n, mu, kr_c)?;
    Ok(0.5 * edge_momentum(nu, kr_c)
        + (kr_c * kr_c + 2.0 * mu * n) / (4.0 * mu.abs()) * parts.acos_a1
        + 0.5 * n.abs() * parts.acos_neg_a2)
}

/// Classical scattering angle of mode `n`, `2∂(ξ−ζ)/∂n`.
///
/// The literal closed forms carry `|n|` and `|n−μ|` kinks that add
/// multiples of `2π`; this returns the branch continuous in `n`.
pub fn deflection(n: f64, mu: f64, kr_c: f64) -> Result<f64, AsymptoticError> {
    let nu = check_allowed(n, mu, kr_c)?;
    let d = (n - mu).clamp(-kr_c, kr_c);
    let edge = 2.0 * d.atan2(edge_momentum(nu, kr_c));
    if mu == 0.0 {
        return Ok(0.0);
    }
    let parts = interior(n, mu, kr_c)?;
    Ok(edge - sign(mu) * parts.acos_a1 - sign(n) * parts.acos_neg_a2)
}

/// Extremal deflection `−sgn(μ)·2 arcsin(2|μ|/X)` for `2|μ| ≤ X`.
pub fn extremal_deflection(mu: f64, kr_c: f64) -> Option<f64> {
    (2.0 * mu.abs() <= kr_c && mu != 0.0).then(|| -sign(mu) * 2.0 * (2.0 * mu.abs() / kr_c).asin())
}

const QUAD_NODES: usize = 24;
const QUAD_PANELS: usize = 48;

/// `∫_y0^X √(1 − ((n − γ(u))/u)²) du` with the turning-point singularity
/// removed by `u = y0 + t²`. Works for any profile.
pub fn zeta_by_quadrature(
    n: f64,
    mu: f64,
    kr_c: f64,
    profile: FieldProfile,
) -> Result<WkbPhase, AsymptoticError> {
    check_allowed(n, mu, kr_c)?;
    let p2 = |u: f64| {
        if u == 0.0 {
            return if n == 0.0 { 1.0 } else { f64::NEG_INFINITY };
        }
        let g = profile.gamma(u, kr_c, mu);
        1.0 - ((n - g) / u).powi(2)
    };
    let y0 = inner_zero(&p2, kr_c);
    let xi = xi_by_quadrature(n, mu, kr_c)?;
    let gl = GaussLegendre::new(QUAD_NODES);
    let top = (kr_c - y0).sqrt();
    let zeta = gl.integrate(|t| 2.0 * t * p2(y0 + t * t).max(0.0).sqrt(), 0.0, top, QUAD_PANELS);
    Ok(WkbPhase { xi, zeta, y0 })
}

/// Closest zero of `p2` to the left of `X`, by scan and bisection.
fn inner_zero(p2: &impl Fn(f64) -> f64, kr_c: f64) -> f64 {
    const SCAN: usize = 4000;
    let mut hi = kr_c;
    for k in (0..SCAN).rev() {
        let lo = kr_c * k as f64 / SCAN as f64;
        if p2(lo) < 0.0 {
            let mut lo = lo;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if p2(mid) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        hi = lo;
    }
    0.0
}

/// `∫_ν^X √(1 − ν²/u²) du` by the same substitution.
pub fn xi_by_quadrature(n: f64, mu: f64, kr_c: f64) -> Result<f64, AsymptoticError> {
    let nu = check_allowed(n, mu, kr_c)?;
    let gl = GaussLegendre::new(QUAD_NODES);
    let top = (kr_c - nu).sqrt();
    let f = |t: f64| {
        let u = nu + t * t;
        // 1 − ν²/u² = t²(2ν + t²)/u²
        2.0 * t * t * (2.0 * nu + t * t).sqrt() / u
    };
    Ok(gl.integrate(f, 0.0, top, QUAD_PANELS))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn xi_special_values() {
        assert!((xi_phase(3.7, 3.7, 20.0).unwrap() - 20.0).abs() < 1e-14);
        assert!(xi_phase(30.0, 10.0, 20.0).unwrap().abs() < 1e-14);
        let x = 40.0;
        let expect = x * (3f64.sqrt() / 2.0 - PI / 6.0);
        assert!((xi_phase(20.0, 0.0, x).unwrap() - expect).abs() < 1e-12);
        assert!(matches!(xi_phase(21.0, 0.0, 20.0), Err(AsymptoticError::Forbidden { .. })));
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for &(n, mu, x) in &[
            (3.0, 0.37, 20.0),
            (-12.0, 2.5, 30.0),
            (40.0, 10.0, 100.0),
            (-80.0, 10.0, 100.0),
            (0.0, 25.0, 100.0),
            (110.0, 25.0, 100.0),
            (-70.0, -25.0, 100.0),
            (7.0, 40.0, 50.0),
        ] {
            let w = zeta_phase(n, mu, x).unwrap();
            let q = zeta_by_quadrature(n, mu, x, FieldProfile::Uniform).unwrap();
            assert!((w.xi - xi_by_quadrature(n, mu, x).unwrap()).abs() < 1e-9, "xi {n} {mu}");
            assert!((w.zeta - q.zeta).abs() < 1e-8, "zeta {n} {mu}: {} vs {}", w.zeta, q.zeta);
            assert!((w.y0 - q.y0).abs() < 1e-8 * x);
        }
    }

    #[test]
    fn zeta_tends_to_xi_without_field() {
        let xi = xi_phase(3.0, 0.0, 20.0).unwrap();
        let mut prev = f64::INFINITY;
        for mu in [1e-2, 1e-3, 1e-4] {
            let d = (zeta_phase(3.0, mu, 20.0).unwrap().zeta - xi).abs();
            assert!(d < prev);
            prev = d;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn deflection_matches_finite_differences() {
        let h = 1e-5;
        for &(n, mu, x) in &[(5.0, 10.0, 100.0), (-30.0, 10.0, 100.0), (60.0, 25.0, 100.0), (-3.0, -7.0, 50.0)] {
            let f = |m: f64| {
                let w = zeta_phase(m, mu, x).unwrap();
                2.0 * (w.xi - w.zeta)
            };
            let fd = (f(n + h) - f(n - h)) / (2.0 * h);
            let th = deflection(n, mu, x).unwrap();
            let diff = (fd - th).rem_euclid(2.0 * PI);
            let diff = diff.min(2.0 * PI - diff);
            assert!(diff < 1e-6, "n={n} mu={mu}: fd={fd} th={th}");
        }
    }

    #[test]
    fn deflection_extremum_and_zero_field() {
        assert_eq!(deflection(12.0, 0.0, 50.0).unwrap(), 0.0);
        let (mu, x) = (10.0, 100.0);
        let mut best = 0.0f64;
        let mut n = mu - x + 1e-3;
        while n < mu + x {
            best = best.min(deflection(n, mu, x).unwrap());
            n += 0.01;
        }
        let expect = extremal_deflection(mu, x).unwrap();
        assert!((best - expect).abs() < 1e-6, "{best} vs {expect}");
    }

    #[test]
    fn strong_field_deflection_is_monotone() {
        for &(mu, x) in &[(40.0, 50.0), (-40.0, 50.0), (80.0, 100.0)] {
            let mut vals = Vec::new();
            let mut n = mu - x + 0.25;
            while n < mu + x - 0.25 {
                vals.push(deflection(n, mu, x).unwrap());
                n += 0.25;
            }
            let rising = vals.windows(2).filter(|w| w[1] > w[0]).count();
            assert!(rising == 0 || rising == vals.len() - 1, "mu={mu}: {rising}");
        }
    }

    #[test]
    fn boundary_slope_equals_exterior_slope() {
        // Differentiate the integral definition in its upper limit, with the
        // profile scale held at X.
        let (n, mu, x) = (4.0, 0.8, 30.0);
        let y0 = zeta_phase(n, mu, x).unwrap().y0;
        let gl = GaussLegendre::new(QUAD_NODES);
        let zeta_to = |top: f64| {
            let p2 = |u: f64| 1.0 - ((n - mu * u * u / (x * x)) / u).powi(2);
            gl.integrate(|t| 2.0 * t * p2(y0 + t * t).max(0.0).sqrt(), 0.0, (top - y0).sqrt(), QUAD_PANELS)
        };
        let h = 1e-4;
        let slope = (zeta_to(x + h) - zeta_to(x - h)) / (2.0 * h);
        let expect = (1.0 - ((n - mu) / x).powi(2)).sqrt();
        assert!((slope - expect).abs() < 1e-7, "{slope} vs {expect}");
    }
}
