//! Adaptive Gragg–Bulirsch–Stoer integration of a two-component system.

use super::RadialError;

const SEQUENCE: [usize; 9] = [2, 4, 6, 8, 10, 12, 14, 16, 18];
const MAX_STEPS: usize = 2_000_000;

pub(crate) type State = [f64; 2];

/// Extrapolated modified-midpoint integrator with relative error control.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BulirschStoer {
    pub rtol: f64,
}

impl BulirschStoer {
    pub fn new(rtol: f64) -> Self {
        Self { rtol }
    }

    /// Integrates `y' = f(x, y)` from `x0` to `x1 > x0` starting with step `h0`.
    ///
    /// The error of each step is measured against `|y₀| + |y₁|` of the current
    /// state, i.e. relative to the local amplitude rather than per component.
    pub fn integrate<F>(&self, f: F, x0: f64, y0: State, x1: f64, h0: f64) -> Result<State, RadialError>
    where
        F: Fn(f64, &State) -> State,
    {
        let mut x = x0;
        let mut y = y0;
        let mut h = h0.min(x1 - x0);
        let mut table = [[0.0f64; 2]; SEQUENCE.len()];
        for _ in 0..MAX_STEPS {
            if x >= x1 {
                return Ok(y);
            }
            let last = x + h >= x1;
            if last {
                h = x1 - x;
            }
            let scale = (y[0].abs() + y[1].abs()).max(f64::MIN_POSITIVE);
            let mut accepted = None;
            let mut last_err = f64::INFINITY;
            for k in 0..SEQUENCE.len() {
                let row = midpoint(&f, x, &y, h, SEQUENCE[k]);
                // Neville extrapolation in h², diagonal kept in `table`.
                let mut prev = row;
                let mut err = 0.0f64;
                for j in 1..=k {
                    let ratio = (SEQUENCE[k] as f64 / SEQUENCE[k - j] as f64).powi(2) - 1.0;
                    let mut next = [0.0; 2];
                    for c in 0..2 {
                        next[c] = prev[c] + (prev[c] - table[j - 1][c]) / ratio;
                    }
                    table[j - 1] = prev;
                    if j == k {
                        err = (0..2).map(|c| (next[c] - prev[c]).abs()).fold(0.0, f64::max);
                    }
                    prev = next;
                }
                table[k] = prev;
                if !(prev[0].is_finite() && prev[1].is_finite()) {
                    break;
                }
                if k >= 2 {
                    let e = err / (self.rtol * scale);
                    last_err = e;
                    if e <= 1.0 {
                        accepted = Some((prev, k, e));
                        break;
                    }
                }
            }
            match accepted {
                Some((next, k, e)) => {
                    x = if last { x1 } else { x + h };
                    y = next;
                    let grow = 0.94 * (0.65 / e.max(1e-10)).powf(1.0 / (2 * k + 1) as f64);
                    let grow = if k >= 6 { grow.min(1.0) } else { grow };
                    h *= grow.clamp(0.2, 4.0);
                }
                None => {
                    let shrink = if last_err.is_finite() { 0.25 } else { 0.1 };
                    h *= shrink;
                    if h <= f64::EPSILON * x.abs().max(1.0) {
                        return Err(RadialError::Solver { x });
                    }
                }
            }
        }
        Err(RadialError::Solver { x })
    }
}

fn midpoint<F>(f: &F, x: f64, y: &State, big_h: f64, n: usize) -> State
where
    F: Fn(f64, &State) -> State,
{
    let h = big_h / n as f64;
    let d = f(x, y);
    let mut zm = *y;
    let mut z = [y[0] + h * d[0], y[1] + h * d[1]];
    for m in 1..n {
        let d = f(x + m as f64 * h, &z);
        let zn = [zm[0] + 2.0 * h * d[0], zm[1] + 2.0 * h * d[1]];
        zm = z;
        z = zn;
    }
    let d = f(x + big_h, &z);
    [
        0.5 * (z[0] + zm[0] + h * d[0]),
        0.5 * (z[1] + zm[1] + h * d[1]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_over_many_periods() {
        let bs = BulirschStoer::new(1e-12);
        let y = bs
            .integrate(|_, y| [y[1], -y[0]], 0.0, [0.0, 1.0], 100.0, 0.1)
            .unwrap();
        assert!((y[0] - 100f64.sin()).abs() < 1e-9);
        assert!((y[1] - 100f64.cos()).abs() < 1e-9);
    }

    #[test]
    fn growing_exponential_keeps_relative_accuracy() {
        let bs = BulirschStoer::new(1e-12);
        let y = bs.integrate(|_, y| [y[1], 9.0 * y[0]], 0.0, [1.0, 3.0], 40.0, 0.01).unwrap();
        let expect = (120.0f64).exp();
        assert!((y[0] / expect - 1.0).abs() < 1e-9);
    }
}
