use std::f64::consts::PI;
use std::io::{self, Write};

use vortex_core::asymptotics::{fraunhofer_cs, fraunhofer_cs_slope};

use crate::error::CliError;
use crate::output::format_number;

pub const SWEEP_HEADER: &str = "mu,peak_phi_1,peak_value_1,peak_phi_2,peak_value_2";

const SAMPLES: usize = 8001;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FringePeak {
    pub phi: f64,
    pub value: f64,
}

/// Peaks of one closed-form diffraction curve. Fewer than one peak marks a
/// detection failure.
#[derive(Clone, Debug, PartialEq)]
pub struct FringeRow {
    pub mu: f64,
    pub peaks: Vec<FringePeak>,
}

impl FringeRow {
    pub fn is_flagged(&self) -> bool {
        self.peaks.is_empty()
    }
}

/// Local maxima of the closed-form diffraction curve within `|φ| ≤ 4π/X`
/// that reach half the largest one, refined by bisection on the analytic
/// slope. At most the two highest are kept, sorted by angle.
pub fn fringe_peaks(mu: f64, kr_c: f64) -> Vec<FringePeak> {
    let half = (4.0 * PI / kr_c).min(PI * (1.0 - 1e-9));
    let h = 2.0 * half / (SAMPLES - 1) as f64;
    let phis: Vec<f64> = (0..SAMPLES).map(|j| -half + h * j as f64).collect();
    let vals: Vec<f64> = phis.iter().map(|&p| fraunhofer_cs(p, mu, kr_c)).collect();
    let top = vals.iter().cloned().fold(0.0, f64::max);
    if !(top > 0.0) {
        return Vec::new();
    }
    let mut peaks: Vec<FringePeak> = (1..SAMPLES - 1)
        .filter(|&i| vals[i] >= vals[i - 1] && vals[i] > vals[i + 1] && vals[i] >= 0.5 * top)
        .map(|i| {
            let (mut lo, mut hi) = (phis[i - 1], phis[i + 1]);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if fraunhofer_cs_slope(mid, mu, kr_c) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let phi = 0.5 * (lo + hi);
            FringePeak { phi, value: fraunhofer_cs(phi, mu, kr_c) }
        })
        .collect();
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value));
    peaks.truncate(2);
    peaks.sort_by(|a, b| a.phi.total_cmp(&b.phi));
    peaks
}

pub fn fringe_sweep(kr_c: f64, mu_grid: &[f64]) -> Result<Vec<FringeRow>, CliError> {
    if !(kr_c.is_finite() && kr_c > 0.0) {
        return Err(CliError::Input(format!("kr_c must be positive, got {kr_c}")));
    }
    if let Some(bad) = mu_grid.iter().find(|m| !(0.0..=3.0).contains(*m)) {
        return Err(CliError::Input(format!("mu = {bad} outside the sweep range [0, 3]")));
    }
    Ok(mu_grid.iter().map(|&mu| FringeRow { mu, peaks: fringe_peaks(mu, kr_c) }).collect())
}

/// Missing peaks leave their cells empty.
pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[FringeRow]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in rows {
        let mut line = format_number(row.mu);
        for k in 0..2 {
            match row.peaks.get(k) {
                Some(p) => {
                    line.push(',');
                    line.push_str(&format_number(p.phi));
                    line.push(',');
                    line.push_str(&format_number(p.value));
                }
                None => line.push_str(",,"),
            }
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}
