use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{ab_amplitude, amplitude_breakdown, AmplitudeBreakdown, AmplitudeError, AngleGrid};
use crate::asymptotics::{classical_cs, fraunhofer_cs, penetration_cs, rainbow_cs, ChargeSign, PenetrationBranch};
use crate::radial::{mode_table, ModeTable, VortexParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Exact,
    Fraunhofer,
    PenetrationAsymptotic,
    Rainbow,
    Classical,
    AB,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Exact,
        Method::Fraunhofer,
        Method::PenetrationAsymptotic,
        Method::Rainbow,
        Method::Classical,
        Method::AB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Fraunhofer => "fraunhofer",
            Method::PenetrationAsymptotic => "penetration",
            Method::Rainbow => "rainbow",
            Method::Classical => "classical",
            Method::AB => "ab",
        }
    }

    /// Needs a mode table.
    pub fn is_exact(self) -> bool {
        self == Method::Exact
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        Method::ALL
            .into_iter()
            .find(|m| m.name() == key || (key == "penetrationasymptotic" && *m == Method::PenetrationAsymptotic))
            .ok_or_else(|| format!("unknown method '{s}'"))
    }
}

/// `InverseK` reports `k·dσ/(dz dφ)`; `Rc` reports `dσ/(dz dφ)/r_c`, i.e.
/// the former divided by `X`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Units {
    #[default]
    InverseK,
    Rc,
}

impl Units {
    pub fn name(self) -> &'static str {
        match self {
            Units::InverseK => "k",
            Units::Rc => "rc",
        }
    }
}

impl FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "k" | "1/k" | "inverse-k" | "inversek" => Ok(Units::InverseK),
            "rc" | "r_c" => Ok(Units::Rc),
            _ => Err(format!("unknown units '{s}' (expected k or rc)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub phi: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossSectionCurve {
    pub method: Method,
    pub units: Units,
    pub kr_c: f64,
    pub samples: Vec<CurveSample>,
    /// Per-sample amplitudes, `Exact` only.
    pub amplitudes: Option<Vec<AmplitudeBreakdown>>,
    /// Branch used per sample, `PenetrationAsymptotic` only.
    pub branches: Option<Vec<PenetrationBranch>>,
}

impl CrossSectionCurve {
    pub fn phis(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.phi).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }

    fn scale(&self) -> f64 {
        match self.units {
            Units::InverseK => 1.0,
            Units::Rc => 1.0 / self.kr_c,
        }
    }

    fn from_amplitudes(&self, f: impl Fn(&AmplitudeBreakdown) -> f64) -> Option<Vec<f64>> {
        let s = self.scale();
        self.amplitudes.as_ref().map(|a| a.iter().map(|b| f(b) * s).collect())
    }

    /// `|f1|²`, in the curve's units.
    pub fn f1_cs(&self) -> Option<Vec<f64>> {
        self.from_amplitudes(|b| b.f1.norm_sqr())
    }

    /// `|f2|²`, in the curve's units.
    pub fn f2_cs(&self) -> Option<Vec<f64>> {
        self.from_amplitudes(|b| b.f2.norm_sqr())
    }

    /// `|f1 + f2|²`, in the curve's units.
    pub fn near_cs(&self) -> Option<Vec<f64>> {
        self.from_amplitudes(|b| b.near.norm_sqr())
    }

    /// `f1 f2* + f1* f2`, in the curve's units.
    pub fn interference(&self) -> Option<Vec<f64>> {
        self.from_amplitudes(|b| b.interference())
    }

    /// The same curve in other units.
    pub fn in_units(mut self, units: Units) -> Self {
        let factor = unit_factor(self.units, units, self.kr_c);
        for s in &mut self.samples {
            s.value *= factor;
        }
        self.units = units;
        self
    }
}

fn unit_factor(from: Units, to: Units, kr_c: f64) -> f64 {
    match (from, to) {
        (Units::InverseK, Units::Rc) => 1.0 / kr_c,
        (Units::Rc, Units::InverseK) => kr_c,
        _ => 1.0,
    }
}

fn wrap(phi: f64) -> impl Fn(crate::asymptotics::AsymptoticError) -> AmplitudeError {
    move |source| AmplitudeError::Asymptotic { phi, source }
}

/// Samples `method` on `grid`. `Exact` uses `table` when given and builds
/// the default table otherwise.
pub fn cross_section_curve(
    params: &VortexParams,
    grid: &AngleGrid,
    method: Method,
    units: Units,
    table: Option<&ModeTable>,
) -> Result<CrossSectionCurve, AmplitudeError> {
    let x = params.kr_c;
    let mu = params.mu;
    let mut curve = CrossSectionCurve {
        method,
        units,
        kr_c: x,
        samples: Vec::new(),
        amplitudes: None,
        branches: None,
    };
    let points = grid.points();
    // values are produced in `native` units and converted at the end
    let native;
    let values: Vec<f64> = match method {
        Method::Exact => {
            if grid.contains_zero() {
                return Err(AmplitudeError::Singular(0.0));
            }
            let owned;
            let table = match table {
                Some(t) => t,
                None => {
                    owned = mode_table(params, None)?;
                    &owned
                }
            };
            let amps = points
                .par_iter()
                .map(|&phi| amplitude_breakdown(phi, table))
                .collect::<Result<Vec<_>, _>>()?;
            let v = amps.iter().map(|b| b.total().norm_sqr()).collect();
            curve.amplitudes = Some(amps);
            native = Units::InverseK;
            v
        }
        Method::AB => {
            native = Units::InverseK;
            points
                .par_iter()
                .map(|&phi| ab_amplitude(phi, mu).map(|f| f.norm_sqr()))
                .collect::<Result<_, _>>()?
        }
        Method::Fraunhofer => {
            native = Units::InverseK;
            points.par_iter().map(|&phi| fraunhofer_cs(phi, mu, x)).collect()
        }
        Method::Rainbow => {
            native = Units::InverseK;
            points
                .par_iter()
                .map(|&phi| rainbow_cs(phi, mu, x).map_err(wrap(phi)))
                .collect::<Result<_, _>>()?
        }
        Method::Classical => {
            native = Units::Rc;
            let rho = x / (2.0 * mu.abs());
            points
                .par_iter()
                .map(|&phi| classical_cs(phi, rho, ChargeSign::of(mu)).map_err(wrap(phi)))
                .collect::<Result<_, _>>()?
        }
        Method::PenetrationAsymptotic => {
            native = Units::Rc;
            let out: Vec<(f64, PenetrationBranch)> = points
                .par_iter()
                .map(|&phi| penetration_cs(phi, mu, x).map_err(wrap(phi)))
                .collect::<Result<_, _>>()?;
            curve.branches = Some(out.iter().map(|o| o.1).collect());
            out.into_iter().map(|o| o.0).collect()
        }
    };
    let factor = unit_factor(native, units, x);
    curve.samples = points
        .iter()
        .zip(values)
        .map(|(&phi, v)| CurveSample { phi, value: if factor == 1.0 { v } else { v * factor } })
        .collect();
    Ok(curve)
}
