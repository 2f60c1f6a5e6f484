use std::fmt;

use super::RadialError;

/// Penetrability of the delta shell at the vortex edge, in units of `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Barrier {
    Finite(f64),
    /// `κ = ±∞`: Dirichlet condition at the edge.
    Impenetrable,
}

impl Barrier {
    /// Maps `±∞` onto [`Barrier::Impenetrable`].
    pub fn from_f64(kappa: f64) -> Self {
        if kappa.is_infinite() {
            Barrier::Impenetrable
        } else {
            Barrier::Finite(kappa)
        }
    }
}

impl fmt::Display for Barrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Barrier::Finite(k) => write!(f, "{k}"),
            Barrier::Impenetrable => f.write_str("inf"),
        }
    }
}

/// Spin projection along the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Radial distribution of the field inside the vortex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldProfile {
    /// Constant field strength for `r < r_c`.
    #[default]
    Uniform,
}

impl FieldProfile {
    /// Enclosed flux `γ(x)` in units of the flux quantum, `γ(X) = μ`.
    pub fn gamma(self, x: f64, kr_c: f64, mu: f64) -> f64 {
        match self {
            FieldProfile::Uniform => {
                let t = x / kr_c;
                mu * t * t
            }
        }
    }

    /// `dγ/dx`.
    pub fn gamma_slope(self, x: f64, kr_c: f64, mu: f64) -> f64 {
        match self {
            FieldProfile::Uniform => 2.0 * mu * x / (kr_c * kr_c),
        }
    }
}

/// A dimensionless scattering scenario.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VortexParams {
    /// `X = k r_c`.
    pub kr_c: f64,
    /// Total flux in units of `2πħc/e`.
    pub mu: f64,
    pub barrier: Barrier,
    pub spin: Spin,
    pub profile: FieldProfile,
}

/// A violated working assumption. Computation still proceeds.
#[derive(Clone, Debug, PartialEq)]
pub enum RegimeWarning {
    SmallRadius { kr_c: f64 },
    StrongFlux { ratio: f64 },
}

/// `2|μ|/X²` above this counts as violating `|μ| ≪ X²/2`.
pub const FLUX_RATIO_LIMIT: f64 = 0.1;
/// Below this the vortex is not large compared to the wavelength.
pub const LARGE_RADIUS: f64 = 10.0;

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeWarning::SmallRadius { kr_c } => {
                write!(f, "kr_c = {kr_c} violates kr_c >> 1 (need kr_c >= {LARGE_RADIUS})")
            }
            RegimeWarning::StrongFlux { ratio } => write!(
                f,
                "2|mu|/(kr_c)^2 = {ratio} violates |e Phi|/(pi hbar c) << (kr_c)^2 (limit {FLUX_RATIO_LIMIT})"
            ),
        }
    }
}

impl VortexParams {
    pub fn new(kr_c: f64, mu: f64, barrier: Barrier, spin: Spin) -> Result<Self, RadialError> {
        if !(kr_c.is_finite() && kr_c > 0.0) {
            return Err(RadialError::Domain(format!("kr_c must be positive and finite, got {kr_c}")));
        }
        if !mu.is_finite() {
            return Err(RadialError::Domain(format!("mu must be finite, got {mu}")));
        }
        if let Barrier::Finite(k) = barrier {
            if k.is_nan() {
                return Err(RadialError::Domain("kappa is NaN".into()));
            }
        }
        Ok(Self { kr_c, mu, barrier, spin, profile: FieldProfile::Uniform })
    }

    /// Field-free, barrier-free reference scenario.
    pub fn free(kr_c: f64) -> Self {
        Self::new(kr_c, 0.0, Barrier::Finite(0.0), Spin::Up).expect("positive radius")
    }

    pub fn with_mu(self, mu: f64) -> Self {
        Self { mu, ..self }
    }

    pub fn with_kr_c(self, kr_c: f64) -> Self {
        Self { kr_c, ..self }
    }

    pub fn with_barrier(self, barrier: Barrier) -> Self {
        Self { barrier, ..self }
    }

    pub fn with_spin(self, spin: Spin) -> Self {
        Self { spin, ..self }
    }

    pub fn is_large_radius(&self) -> bool {
        self.kr_c >= LARGE_RADIUS
    }

    /// `2|μ|/X²`, i.e. `r_c/r_B · 1/X`.
    pub fn flux_ratio(&self) -> f64 {
        2.0 * self.mu.abs() / (self.kr_c * self.kr_c)
    }

    /// Classical orbit radius over vortex radius, `X/(2|μ|)`.
    pub fn orbit_ratio(&self) -> Option<f64> {
        (self.mu != 0.0).then(|| self.kr_c / (2.0 * self.mu.abs()))
    }

    /// Weak field: orbit at least as large as the vortex.
    pub fn is_weak_field(&self) -> bool {
        2.0 * self.mu.abs() <= self.kr_c
    }

    pub fn warnings(&self) -> Vec<RegimeWarning> {
        let mut out = Vec::new();
        if !self.is_large_radius() {
            out.push(RegimeWarning::SmallRadius { kr_c: self.kr_c });
        }
        if self.flux_ratio() > FLUX_RATIO_LIMIT {
            out.push(RegimeWarning::StrongFlux { ratio: self.flux_ratio() });
        }
        out
    }

    /// Mode cutoff `⌈X + 12 X^{1/3} + 25⌉` on `|n − μ|`.
    pub fn mode_cutoff(&self) -> i64 {
        (self.kr_c + 12.0 * self.kr_c.cbrt() + 25.0).ceil() as i64
    }

    /// Default table range, centred on the nearest integer to `μ`.
    pub fn mode_range(&self) -> std::ops::RangeInclusive<i64> {
        let centre = self.mu.round() as i64;
        let cut = self.mode_cutoff();
        (centre - cut)..=(centre + cut)
    }
}

/// Which side of the centrifugal turning point the vortex edge lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `|n − μ| ≤ X`: edge beyond the turning point.
    Near,
    /// `|n − μ| > X`: edge inside the classically forbidden zone.
    Far,
}

/// Partial-wave label with its order and regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeIndex {
    pub n: i64,
    pub nu: f64,
    pub regime: Regime,
}

impl ModeIndex {
    pub fn new(n: i64, params: &VortexParams) -> Self {
        let nu = (n as f64 - params.mu).abs();
        let regime = if nu <= params.kr_c { Regime::Near } else { Regime::Far };
        Self { n, nu, regime }
    }
}

/// `γ(x)` with domain check `0 ≤ x ≤ X`.
pub fn gamma_profile(x: f64, params: &VortexParams) -> Result<f64, RadialError> {
    if !(0.0..=params.kr_c).contains(&x) {
        return Err(RadialError::Domain(format!("x = {x} outside [0, {}]", params.kr_c)));
    }
    if x == params.kr_c {
        return Ok(params.mu);
    }
    Ok(params.profile.gamma(x, params.kr_c, params.mu))
}
