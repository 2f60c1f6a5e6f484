//! Regular interior solution `τ_n` of the radial equation
//!
//! `τ'' + τ'/x − (n − γ)²/x² τ + σγ'/x τ + τ = 0`.
//!
//! Writing `τ = x^m v` with `m = |n|` removes the centrifugal singularity:
//! `v'' + (2m+1) v'/x + Q(x) v = 0`, `Q = 1 + σγ'/x + (2nγ − γ²)/x²`.
//! For the uniform profile `γ = a x²` this is `Q = A − a²x²` with
//! `A = 1 + 2aσ + 2na`, and `v` is an entire even series.

use super::ode::BulirschStoer;
use super::params::{FieldProfile, ModeIndex, VortexParams};
use super::RadialError;

const RTOL: f64 = 1e-11;
const SERIES_TERMS: usize = 4000;

/// Boundary data of `τ_n` at `x = X`, up to an arbitrary overall scale.
///
/// The stored pair is normalized to unit Euclidean length with
/// `value ≥ 0`; all matching results are invariant under rescaling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InsideSolution {
    pub value: f64,
    pub derivative: f64,
}

impl InsideSolution {
    pub fn scaled(self, factor: f64) -> Self {
        Self { value: self.value * factor, derivative: self.derivative * factor }
    }

    pub(crate) fn normalized(value: f64, derivative: f64) -> Self {
        let norm = value.hypot(derivative);
        let s = if value < 0.0 { -1.0 / norm } else { 1.0 / norm };
        Self { value: value * s, derivative: derivative * s }
    }

    pub fn log_derivative(&self) -> f64 {
        self.derivative / self.value
    }
}

/// Sums the Frobenius series of `v` at `x`, returning `(v, v')`.
fn series(x: f64, m: f64, big_a: f64, a: f64) -> (f64, f64) {
    let x2 = x * x;
    let a2 = a * a;
    // d_k multiplies x^{2k}; d_k·2k(2k+2m) = −A d_{k−1} + a² d_{k−2}
    let (mut d_prev2, mut d_prev) = (0.0f64, 1.0f64);
    let mut pow = 1.0;
    let mut v = 1.0;
    let mut dv = 0.0;
    let mut small = 0;
    for k in 1..SERIES_TERMS {
        let kf = k as f64;
        let d = (-big_a * d_prev + a2 * d_prev2) / (2.0 * kf * (2.0 * kf + 2.0 * m));
        // keep the power separate so tiny x never underflows the product early
        pow *= x2;
        let term = d * pow;
        v += term;
        dv += 2.0 * kf * term / x;
        d_prev2 = d_prev;
        d_prev = d;
        if term.abs() <= 1e-18 * v.abs() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (v, dv)
}

/// Integrates the interior equation of mode `mode` from the series start to
/// `X` and returns `(τ(X), τ'(X))` up to scale.
pub fn inside_solution(mode: ModeIndex, params: &VortexParams) -> Result<InsideSolution, RadialError> {
    let kr_c = params.kr_c;
    let n = mode.n as f64;
    let m = n.abs();
    let sigma = params.spin.sign();
    let a = match params.profile {
        FieldProfile::Uniform => params.mu / (kr_c * kr_c),
    };
    let big_a = 1.0 + 2.0 * a * sigma + 2.0 * n * a;

    // Series evaluation is free of cancellation while x² ≲ 2(m+1); start
    // the integrator there, never below the nominal start point.
    let x0 = (1e-6f64).max(1e-4 * kr_c);
    let start = x0.max((m + 1.0).sqrt()).min(kr_c);
    let (v0, dv0) = series(start, m, big_a, a);
    let (v, dv) = if start >= kr_c {
        (v0, dv0)
    } else {
        let profile = params.profile;
        let mu = params.mu;
        let rhs = move |x: f64, y: &[f64; 2]| {
            let g = profile.gamma(x, kr_c, mu);
            let q = 1.0 + sigma * profile.gamma_slope(x, kr_c, mu) / x + (2.0 * n * g - g * g) / (x * x);
            [y[1], -(2.0 * m + 1.0) * y[1] / x - q * y[0]]
        };
        // Rescale the start so the state is O(1); v itself can be tiny.
        let s = 1.0 / v0.abs().max(dv0.abs()).max(f64::MIN_POSITIVE);
        let y = BulirschStoer::new(RTOL).integrate(rhs, start, [v0 * s, dv0 * s], kr_c, 0.25)?;
        (y[0], y[1])
    };
    // τ = X^m v and τ' = X^m (v' + m v/X); the common X^m drops out.
    let value = v;
    let derivative = dv + m * v / kr_c;
    if !(value.is_finite() && derivative.is_finite()) || (value == 0.0 && derivative == 0.0) {
        return Err(RadialError::Solver { x: kr_c });
    }
    Ok(InsideSolution::normalized(value, derivative))
}
