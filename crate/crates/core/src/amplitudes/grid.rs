use std::f64::consts::PI;

use super::AmplitudeError;

/// Size of the default grid.
pub const DEFAULT_POINTS: usize = 2001;

/// Step of [`AngleGrid::dense`].
pub const DENSE_STEP: f64 = PI / 1e5;

/// Strictly increasing angles inside `(−π, π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleGrid {
    points: Vec<f64>,
}

impl Default for AngleGrid {
    /// 2001 points with spacing `2π/2002`, offset by half a step from `−π`
    /// so that `φ = 0` falls between two samples.
    fn default() -> Self {
        let h = 2.0 * PI / (DEFAULT_POINTS + 1) as f64;
        let points = (0..DEFAULT_POINTS).map(|j| -PI + h * (j as f64 + 0.5)).collect();
        AngleGrid { points }
    }
}

impl AngleGrid {
    pub fn from_points(points: Vec<f64>) -> Result<Self, AmplitudeError> {
        if points.is_empty() {
            return Err(AmplitudeError::Grid("no angles".into()));
        }
        if let Some(&bad) = points.iter().find(|p| !(p.abs() < PI)) {
            return Err(AmplitudeError::Grid(format!("angle {bad} outside (-pi, pi)")));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(AmplitudeError::Grid("angles must be strictly increasing".into()));
        }
        Ok(AngleGrid { points })
    }

    /// `steps` equally spaced angles from `min` to `max` inclusive.
    pub fn uniform(min: f64, max: f64, steps: usize) -> Result<Self, AmplitudeError> {
        if steps < 2 {
            return Err(AmplitudeError::Grid(format!("steps = {steps}, need at least 2")));
        }
        if !(min < max) {
            return Err(AmplitudeError::Grid(format!("empty range [{min}, {max}]")));
        }
        let h = (max - min) / (steps - 1) as f64;
        let mut points: Vec<f64> = (0..steps).map(|j| min + h * j as f64).collect();
        points[steps - 1] = max;
        Self::from_points(points)
    }

    /// Step `π/10⁵` around `centre`, clipped to `(−π, π)`; `centre` itself
    /// is a sample.
    pub fn dense(centre: f64, half_width: f64) -> Result<Self, AmplitudeError> {
        if !(half_width > 0.0 && centre.abs() < PI) {
            return Err(AmplitudeError::Grid(format!("bad dense window {centre} ± {half_width}")));
        }
        let k = (half_width / DENSE_STEP).floor() as i64;
        let points = (-k..=k)
            .map(|j| centre + DENSE_STEP * j as f64)
            .filter(|p| p.abs() < PI)
            .collect();
        Self::from_points(points)
    }

    /// Drops the angles for which `keep` is false.
    pub fn retain(mut self, keep: impl Fn(f64) -> bool) -> Result<Self, AmplitudeError> {
        self.points.retain(|&p| keep(p));
        Self::from_points(self.points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.points.contains(&0.0)
    }
}
