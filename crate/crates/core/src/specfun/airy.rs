use std::f64::consts::PI;

use super::bessel::{bessel_jy_raw, bessel_k_scaled_small_order};

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = 0.258_819_403_792_806_8;
const SERIES_LIMIT: f64 = 2.0;

/// Airy function `Ai(y) = π⁻¹∫₀^∞ cos(yu + u³/3) du`.
///
/// Absolute error stays below 1e-11 on `|y| ≤ 100`. Maclaurin series near the
/// origin, order-1/3 Bessel functions elsewhere.
pub fn airy_ai(y: f64) -> f64 {
    if y.abs() <= SERIES_LIMIT {
        return maclaurin(y);
    }
    bessel_branch(y)
}

fn bessel_branch(y: f64) -> f64 {
    let x = y.abs();
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    if y > 0.0 {
        if zeta > 700.0 {
            return 0.0;
        }
        (x / 3.0).sqrt() / PI * bessel_k_scaled_small_order(1.0 / 3.0, zeta) * (-zeta).exp()
    } else {
        let p = bessel_jy_raw(1.0 / 3.0, zeta);
        0.5 * x.sqrt() * (p.j - p.y / 3f64.sqrt())
    }
}

fn maclaurin(y: f64) -> f64 {
    let y3 = y * y * y;
    let mut f = 1.0;
    let mut g = y;
    let mut tf = 1.0;
    let mut tg = y;
    for k in 1..60 {
        let k3 = 3.0 * k as f64;
        tf *= y3 / ((k3 - 1.0) * k3);
        tg *= y3 / (k3 * (k3 + 1.0));
        f += tf;
        g += tg;
        if tf.abs() < 1e-18 * f.abs().max(1.0) && tg.abs() < 1e-18 * g.abs().max(1.0) {
            break;
        }
    }
    AI0 * f - AIP0 * g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        // 3^{-2/3}/Γ(2/3)
        let expect = 3f64.powf(-2.0 / 3.0) / 1.354_117_939_426_400_4;
        assert!((airy_ai(0.0) - expect).abs() < 1e-15);
    }

    #[test]
    fn branches_agree_at_switch() {
        for &y in &[-SERIES_LIMIT, SERIES_LIMIT] {
            let a = maclaurin(y);
            let b = bessel_branch(y);
            assert!((a - b).abs() < 1e-12, "{y}: {a} vs {b}");
        }
    }

    #[test]
    fn damped_on_the_right() {
        assert!(airy_ai(20.0).abs() < 1e-12);
        assert!(airy_ai(20.0) > 0.0);
        assert!(airy_ai(100.0) < 1e-280);
    }

    #[test]
    fn satisfies_airy_equation() {
        let h = 1e-3;
        for &y in &[-40.0, -7.5, -2.5, -1.0, 0.4, 3.0, 6.0] {
            let d2 = (airy_ai(y + h) - 2.0 * airy_ai(y) + airy_ai(y - h)) / (h * h);
            let resid = (d2 - y * airy_ai(y)).abs();
            // O(h²) truncation scaled by the fourth derivative ~ y² Ai
            assert!(resid < 1e-6 * (1.0 + y * y), "y={y} resid={resid}");
        }
    }
}
