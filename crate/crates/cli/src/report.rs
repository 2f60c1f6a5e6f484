use std::fmt::Write as _;
use std::io::{self, Write};

use vortex_core::amplitudes::{cross_section_curve, AmplitudeBreakdown, AngleGrid, CrossSectionCurve, Method, Units};
use vortex_core::radial::{mode_table, Barrier, VortexParams};

use crate::error::CliError;
use crate::output::format_number;
use crate::scenario::Scenario;

/// `‖a − b‖₂ / ‖b‖₂` over the pairs where both are finite.
pub fn relative_l2(a: &[f64], b: &[f64]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        if x.is_finite() && y.is_finite() {
            num += (x - y) * (x - y);
            den += y * y;
        }
    }
    if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (num / den).sqrt()
    }
}

/// Limits checked by [`compare_report`]; `None` means report only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub unitarity: f64,
    pub spin_pointwise: Option<f64>,
    pub method_l2: Option<f64>,
    pub interference: Option<f64>,
}

impl Tolerances {
    /// Unitarity to `1e−8` and spin differences within `10·(2|μ|/X²)`.
    pub fn for_params(p: &VortexParams) -> Self {
        Tolerances {
            unitarity: 1e-8,
            spin_pointwise: Some((10.0 * p.flux_ratio()).max(1e-9)),
            method_l2: None,
            interference: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MethodSummary {
    pub method: Method,
    pub rel_l2: f64,
    pub max_rel: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinScan {
    pub rel_l2: f64,
    /// Largest relative difference over samples above `10⁻³` of the peak.
    pub max_pointwise: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub exact: CrossSectionCurve,
    pub approximations: Vec<CrossSectionCurve>,
    pub summaries: Vec<MethodSummary>,
    pub unitarity: f64,
    /// Largest `|f1 f2* + c.c.| / (|f1|² + |f2|²)` outside `|φ| ≤ 5/X`.
    pub interference: f64,
    pub spin: SpinScan,
    pub failures: Vec<String>,
}

/// The part of the exact amplitude a closed form approximates.
fn exact_counterpart(method: Method, b: &AmplitudeBreakdown) -> f64 {
    match method {
        Method::Exact => b.total().norm_sqr(),
        Method::Fraunhofer => b.f1.norm_sqr(),
        Method::AB => b.f_ab.norm_sqr(),
        Method::PenetrationAsymptotic | Method::Rainbow | Method::Classical => b.f2.norm_sqr(),
    }
}

fn scale(units: Units, kr_c: f64) -> f64 {
    match units {
        Units::InverseK => 1.0,
        Units::Rc => 1.0 / kr_c,
    }
}

fn counterpart_values(exact: &CrossSectionCurve, method: Method) -> Vec<f64> {
    let s = scale(exact.units, exact.kr_c);
    exact.amplitudes.as_ref().map_or_else(Vec::new, |a| a.iter().map(|b| exact_counterpart(method, b) * s).collect())
}

pub fn spin_scan(params: &VortexParams, grid: &AngleGrid) -> Result<SpinScan, CliError> {
    let a = cross_section_curve(params, grid, Method::Exact, Units::InverseK, None)?.values();
    let flipped = params.with_spin(params.spin.flipped());
    let b = cross_section_curve(&flipped, grid, Method::Exact, Units::InverseK, None)?.values();
    let peak = a.iter().chain(&b).cloned().fold(0.0, f64::max);
    let max_pointwise = a
        .iter()
        .zip(&b)
        .filter(|(x, y)| x.max(**y) >= 1e-3 * peak)
        .map(|(x, y)| (x - y).abs() / x.max(*y))
        .fold(0.0, f64::max);
    Ok(SpinScan { rel_l2: relative_l2(&b, &a), max_pointwise })
}

/// Exact curve against every other selected method, plus unitarity,
/// interference and spin checks. Tolerance breaches are listed in
/// `failures`.
pub fn compare_report(scenario: &Scenario, tol: &Tolerances) -> Result<CompareReport, CliError> {
    scenario.validate()?;
    if !scenario.methods.contains(&Method::Exact) || scenario.methods.len() < 2 {
        return Err(CliError::Input("a comparison needs exact plus at least one other method".into()));
    }
    let p = &scenario.params;
    let grid = scenario.angle_grid()?;
    let table = mode_table(p, None)?;
    let exact = cross_section_curve(p, &grid, Method::Exact, scenario.units(), Some(&table))?;
    let mut failures = Vec::new();
    let mut approximations = Vec::new();
    let mut summaries = Vec::new();
    for &m in scenario.methods.iter().filter(|m| **m != Method::Exact) {
        let c = cross_section_curve(p, &grid, m, scenario.units(), Some(&table))?;
        let e = counterpart_values(&exact, m);
        let v = c.values();
        let max_rel = v
            .iter()
            .zip(&e)
            .filter(|(a, b)| a.is_finite() && **b > 0.0)
            .map(|(a, b)| (a - b).abs() / b)
            .fold(0.0, f64::max);
        let s = MethodSummary { method: m, rel_l2: relative_l2(&v, &e), max_rel };
        if let Some(t) = tol.method_l2 {
            if !(s.rel_l2 <= t) {
                failures.push(format!("{m}: relative L2 {} above {t}", s.rel_l2));
            }
        }
        summaries.push(s);
        approximations.push(c);
    }
    let unitarity = table.unitarity_defect();
    if !(unitarity <= tol.unitarity) {
        failures.push(format!("unitarity defect {unitarity} above {}", tol.unitarity));
    }
    let forward = 5.0 / p.kr_c;
    let interference = exact
        .amplitudes
        .iter()
        .flatten()
        .filter(|b| b.phi.abs() > forward)
        .map(|b| b.interference().abs() / (b.f1.norm_sqr() + b.f2.norm_sqr()).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    if let Some(t) = tol.interference {
        if !(interference <= t) {
            failures.push(format!("interference residual {interference} above {t}"));
        }
    }
    let spin = spin_scan(p, &grid)?;
    if let Some(t) = tol.spin_pointwise {
        if !(spin.max_pointwise <= t) {
            failures.push(format!("spin difference {} above {t}", spin.max_pointwise));
        }
    }
    Ok(CompareReport { exact, approximations, summaries, unitarity, interference, spin, failures })
}

impl CompareReport {
    pub const CSV_HEADER: &'static str = "phi,method,exact,approx,rel_diff";

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for c in &self.approximations {
            let e = counterpart_values(&self.exact, c.method);
            for (s, ev) in c.samples.iter().zip(e) {
                let rel = if ev > 0.0 { (s.value - ev).abs() / ev } else { f64::NAN };
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_number(s.phi),
                    c.method,
                    format_number(ev),
                    format_number(s.value),
                    format_number(rel)
                )?;
            }
        }
        out.flush()
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for m in &self.summaries {
            let _ = writeln!(s, "{:<12} rel_l2 = {:.3e}  max_rel = {:.3e}", m.method.name(), m.rel_l2, m.max_rel);
        }
        let _ = writeln!(s, "unitarity     worst ||s_n| - 1| = {:.3e}", self.unitarity);
        let _ = writeln!(s, "interference  worst ratio = {:.3e}", self.interference);
        let _ = writeln!(s, "spin          rel_l2 = {:.3e}  max_pointwise = {:.3e}", self.spin.rel_l2, self.spin.max_pointwise);
        if self.failures.is_empty() {
            s.push_str("all configured tolerances met\n");
        } else {
            for f in &self.failures {
                let _ = writeln!(s, "FAIL {f}");
            }
        }
        s
    }
}

/// Pairwise distances between exact `k|f2|²` curves for several barrier
/// strengths, one row per radius.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaScan {
    pub kappas: Vec<f64>,
    pub radii: Vec<f64>,
    /// `distances[r][p]` for radius `r` and pair `p` (in `pairs()` order).
    pub distances: Vec<Vec<f64>>,
}

impl KappaScan {
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        let k = &self.kappas;
        (0..k.len()).flat_map(|i| (i + 1..k.len()).map(move |j| (k[i], k[j]))).collect()
    }

    /// Every pair shrinks from each radius to the next.
    pub fn is_decreasing(&self) -> bool {
        self.distances.windows(2).all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| b < a))
    }
}

pub fn kappa_scan(mu: f64, kappas: &[f64], radii: &[f64], grid: &AngleGrid) -> Result<KappaScan, CliError> {
    let mut distances = Vec::new();
    for &x in radii {
        let curves = kappas
            .iter()
            .map(|&k| {
                let p = VortexParams::new(x, mu, Barrier::from_f64(k), vortex_core::radial::Spin::Up)?;
                let c = cross_section_curve(&p, grid, Method::Exact, Units::InverseK, None)?;
                Ok(c.f2_cs().unwrap_or_default())
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let mut row = Vec::new();
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                row.push(relative_l2(&curves[j], &curves[i]));
            }
        }
        distances.push(row);
    }
    Ok(KappaScan { kappas: kappas.to_vec(), radii: radii.to_vec(), distances })
}
