//! Poisson summation of `Σ_{n=a}^{b} e^{iχ(n)}` evaluated by stationary
//! phase, with Airy uniformization where two stationary points coalesce.

use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;

use super::AsymptoticError;
use crate::specfun::airy_ai;

/// A real phase `χ(n)` on a window of the real line.
pub trait Phase {
    fn value(&self, n: f64) -> f64;
    fn slope(&self, n: f64) -> f64;

    fn curvature(&self, n: f64) -> f64 {
        let h = 1e-3;
        (self.slope(n + h) - self.slope(n - h)) / (2.0 * h)
    }

    fn third(&self, n: f64) -> f64 {
        let h = 2e-2;
        (self.curvature(n + h) - self.curvature(n - h)) / (2.0 * h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convexity {
    /// `χ'' < 0`.
    Up,
    /// `χ'' > 0`.
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryPoint {
    pub n: f64,
    pub l: i64,
    pub convexity: Convexity,
    pub contribution: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coalescence {
    pub n_inflection: f64,
    pub l: i64,
    pub alpha1: f64,
    pub alpha3: f64,
    pub airy_contribution: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StationaryPhaseReport {
    pub points: Vec<StationaryPoint>,
    pub coalescences: Vec<Coalescence>,
    /// Boundary terms at both window ends, summed over `l`.
    pub endpoints: Complex64,
    pub total: Complex64,
}

/// Airy terms are kept for `y` below this; `Ai(4) ≈ 1e−3`.
const AIRY_UPPER: f64 = 4.0;
const BISECT_ITERS: usize = 200;

/// Evaluates `Σ_{n=lo}^{hi} e^{iχ(n)}`.
///
/// Every `l` with `χ' = 2πl` inside the window contributes its stationary
/// points. Pairs straddling an inflection with Airy argument `y > −1` (the
/// pair separation is then below `2(2/|α₃|)^{1/3}`) are replaced by the
/// uniform Airy term, which is also kept on the dark side `y > 0`. The ends
/// carry `e^{iχ}/(1 − e^{∓iχ'})`: the half-terms plus the boundary parts of
/// all non-stationary `l` integrals.
///
/// Stationary points within about a Fresnel zone `√(2π/|χ''|)` of either
/// end, inside or just outside the window, are not treated uniformly; the
/// result is then only qualitative.
pub fn poisson_stationary_sum<P: Phase + ?Sized>(
    phase: &P,
    window: (i64, i64),
) -> Result<StationaryPhaseReport, AsymptoticError> {
    let (lo, hi) = (window.0 as f64, window.1 as f64);
    if window.1 <= window.0 {
        return Err(AsymptoticError::Domain(format!("empty window {window:?}")));
    }
    let finite = |n: f64, v: f64| if v.is_finite() { Ok(v) } else { Err(AsymptoticError::NonFinite { n }) };

    let samples = ((hi - lo) as usize * 8).clamp(400, 40_000);
    let grid: Vec<f64> = (0..=samples).map(|k| lo + (hi - lo) * k as f64 / samples as f64).collect();
    let mut curv = Vec::with_capacity(grid.len());
    for &n in &grid {
        curv.push(finite(n, phase.curvature(n))?);
    }

    let inflections = find_inflections(phase, &grid, &curv);
    let mut breaks = vec![lo];
    breaks.extend(inflections.iter().copied());
    breaks.push(hi);

    let mut roots: Vec<(f64, i64, usize)> = Vec::new();
    for (seg, w) in breaks.windows(2).enumerate() {
        let (p, q) = (w[0], w[1]);
        let (sp, sq) = (finite(p, phase.slope(p))?, finite(q, phase.slope(q))?);
        let (smin, smax) = (sp.min(sq), sp.max(sq));
        let first = (smin / TAU).ceil() as i64;
        let last = (smax / TAU).floor() as i64;
        for l in first..=last {
            let target = TAU * l as f64;
            let n = bisect(|x| phase.slope(x) - target, p, q).ok_or(AsymptoticError::Unresolved { l })?;
            if n > lo && n < hi {
                roots.push((n, l, seg));
            }
        }
    }

    let mut coalescences = Vec::new();
    let mut absorbed = vec![false; roots.len()];
    for (k, &n0) in inflections.iter().enumerate() {
        let s1 = finite(n0, phase.slope(n0))?;
        let a3 = finite(n0, phase.third(n0))?;
        if a3 == 0.0 {
            continue;
        }
        let scale = (2.0 / a3.abs()).cbrt();
        let reach = 3.0 * scale;
        // l values whose Airy argument lands in (−1, AIRY_UPPER)
        let span = (AIRY_UPPER.max(1.0) / scale) / TAU;
        let centre = s1 / TAU;
        for l in ((centre - span).floor() as i64)..=((centre + span).ceil() as i64) {
            let a1 = s1 - TAU * l as f64;
            let y = a3.signum() * a1 * scale;
            if !(y > -1.0 && y < AIRY_UPPER) {
                continue;
            }
            let chi0 = finite(n0, phase.value(n0))?;
            let airy = Complex64::from_polar(TAU * scale * airy_ai(y), reduced(chi0, n0, l));
            coalescences.push(Coalescence { n_inflection: n0, l, alpha1: a1, alpha3: a3, airy_contribution: airy });
            // Segments k and k+1 meet at this inflection.
            for side in [k, k + 1] {
                let nearest = roots
                    .iter()
                    .enumerate()
                    .filter(|(i, r)| r.1 == l && r.2 == side && !absorbed[*i] && (r.0 - n0).abs() < reach)
                    .min_by(|a, b| (a.1 .0 - n0).abs().total_cmp(&(b.1 .0 - n0).abs()))
                    .map(|(i, _)| i);
                if let Some(i) = nearest {
                    absorbed[i] = true;
                }
            }
        }
    }

    let mut points = Vec::new();
    for (i, &(n, l, _)) in roots.iter().enumerate() {
        if absorbed[i] {
            continue;
        }
        let c = finite(n, phase.curvature(n))?;
        let chi = finite(n, phase.value(n))?;
        let convexity = if c < 0.0 { Convexity::Up } else { Convexity::Down };
        let contribution =
            Complex64::from_polar((TAU / c.abs()).sqrt(), reduced(chi, n, l) + c.signum() * FRAC_PI_4);
        points.push(StationaryPoint { n, l, convexity, contribution });
    }

    let endpoints = end_term(phase, lo, -1.0)? + end_term(phase, hi, 1.0)?;
    let total = points.iter().map(|p| p.contribution).sum::<Complex64>()
        + coalescences.iter().map(|c| c.airy_contribution).sum::<Complex64>()
        + endpoints;
    Ok(StationaryPhaseReport { points, coalescences, endpoints, total })
}

/// `χ(n) − 2πnl` modulo `2π`; the integer part of `n` drops out.
fn reduced(chi: f64, n: f64, l: i64) -> f64 {
    chi - TAU * (n.fract() * l as f64)
}

/// `e^{iχ}/(1 − e^{−iχ'})` at the upper end, `e^{iχ}/(1 − e^{iχ'})` at
/// the lower. Falls back to the bare half-term when a stationary point sits
/// on the end itself.
fn end_term<P: Phase + ?Sized>(phase: &P, n: f64, side: f64) -> Result<Complex64, AsymptoticError> {
    let chi = phase.value(n);
    let s = phase.slope(n);
    if !(chi.is_finite() && s.is_finite()) {
        return Err(AsymptoticError::NonFinite { n });
    }
    let e = Complex64::from_polar(1.0, chi);
    let den = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, -side * s);
    if den.norm() < 0.05 {
        Ok(0.5 * e)
    } else {
        Ok(e / den)
    }
}

fn find_inflections<P: Phase + ?Sized>(phase: &P, grid: &[f64], curv: &[f64]) -> Vec<f64> {
    let scale = curv.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let floor = 1e-9 * scale;
    let mut out = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (&n, &c) in grid.iter().zip(curv) {
        if c.abs() <= floor {
            continue;
        }
        if let Some((pn, pc)) = last {
            if pc.signum() != c.signum() {
                if let Some(r) = bisect(|x| phase.curvature(x), pn, n) {
                    out.push(r);
                }
            }
        }
        last = Some((n, c));
    }
    out
}

/// Root of `f` on `[a, b]` assuming a sign change (or a zero at an end).
fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..BISECT_ITERS {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}
