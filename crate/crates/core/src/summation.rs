//! Compensated summation for long sums of unit-modulus terms.

use num_complex::Complex64;

/// Neumaier summation, applied to real and imaginary parts separately.
/// Deterministic for a fixed order of `add` calls.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

fn step(sum: &mut f64, carry: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *carry += (*sum - t) + x;
    } else {
        *carry += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        step(&mut self.sum.re, &mut self.carry.re, z.re);
        step(&mut self.sum.im, &mut self.carry.im, z.im);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

impl FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = Self::default();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}
