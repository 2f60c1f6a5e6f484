//! Real-order Bessel functions of the first and second kind.
//!
//! `J_ν`, `Y_ν` and their derivatives are produced together: the ratio
//! `J'_ν/J_ν` comes from a continued fraction, the pair `Y_μ, Y_{μ+1}` with
//! `|μ| ≤ 1/2` from Temme's series (`x < 2`) or Steed's complex continued
//! fraction (`x ≥ 2`), and the Wronskian fixes the normalization of `J`.
//! Recurrences then carry everything to the requested order. The result is
//! accurate to a few ulps across the whole supported range, including the
//! transition region `ν ≈ x` where power series and Hankel expansions both
//! struggle.

use std::f64::consts::PI;

use super::{CylinderOrder, SpecFunError, MAX_ARGUMENT};

const EPS: f64 = 1.0e-16;
const FPMIN: f64 = 1.0e-30;
const MAX_ITER: usize = 100_000;
const RESCALE_AT: f64 = 1.0e250;

/// Values and x-derivatives of `J_ν` and `Y_ν` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselPair {
    pub j: f64,
    pub y: f64,
    pub dj: f64,
    pub dy: f64,
}

impl BesselPair {
    /// `J·Y' − Y·J'`, analytically `2/(πx)`.
    pub fn wronskian(&self) -> f64 {
        self.j * self.dy - self.y * self.dj
    }
}

// Chebyshev data for Temme's gamma combinations
//   g1(ν) = (1/Γ(1−ν) − 1/Γ(1+ν)) / (2ν),  g2(ν) = (1/Γ(1−ν) + 1/Γ(1+ν)) / 2
// on |ν| ≤ 1/2, expanded in 4|ν| − 1.
const G1_DAT: [f64; 14] = [
    -1.14516408366268311786898152867,
    0.00636085311347084238122955495,
    0.00186245193007206848934643657,
    0.000152833085873453507081227824,
    0.000017017464011802038795324732,
    -6.4597502923347254354668326451e-07,
    -5.1819848432519380894104312968e-08,
    4.5189092894858183051123180797e-10,
    3.2433227371020873043666259180e-11,
    6.8309434024947522875432400828e-13,
    2.8353502755172101513119628130e-14,
    -7.9883905769323592875638087541e-16,
    -3.3726677300771949833341213457e-17,
    -3.6586334809210520744054437104e-20,
];

const G2_DAT: [f64; 15] = [
    1.882645524949671835019616975350,
    -0.077490658396167518329547945212,
    -0.018256714847324929419579340950,
    0.0006338030209074895795923971731,
    0.0000762290543508729021194461175,
    -9.5501647561720443519853993526e-07,
    -8.8927268107886351912431512955e-08,
    -1.9521334772319613740511880132e-09,
    -9.4003052735885162111769579771e-11,
    4.6875133849532393179290879101e-12,
    2.2658535746925759582447545145e-13,
    -1.1725509698488015111878735251e-15,
    -7.0441338200245222530843155877e-17,
    -2.4377878310107693650659740228e-18,
    -7.5225243218253901727164675011e-20,
];

fn cheb_eval(coeffs: &[f64], x: f64) -> f64 {
    let y2 = 2.0 * x;
    let mut d = 0.0;
    let mut dd = 0.0;
    for &c in coeffs[1..].iter().rev() {
        let tmp = d;
        d = y2 * d - dd + c;
        dd = tmp;
    }
    x * d - dd + 0.5 * coeffs[0]
}

/// Temme's `(g1, g2, 1/Γ(1+ν), 1/Γ(1−ν))` for `|ν| ≤ 1/2`.
pub(crate) fn temme_gamma(nu: f64) -> (f64, f64, f64, f64) {
    let t = 4.0 * nu.abs() - 1.0;
    let g1 = cheb_eval(&G1_DAT, t);
    let g2 = cheb_eval(&G2_DAT, t);
    (g1, g2, g2 - nu * g1, g2 + nu * g1)
}

/// `J_ν(x)`, `Y_ν(x)` and derivatives for `ν ≥ 0`, `x > 0`.
pub fn bessel_jy(nu: CylinderOrder, x: f64) -> Result<BesselPair, SpecFunError> {
    check_argument(x)?;
    let pair = jy_unchecked(nu.value(), x)?;
    if !(pair.y.is_finite() && pair.dy.is_finite()) {
        return Err(SpecFunError::Overflow { nu: nu.value(), x });
    }
    Ok(pair)
}

/// Regular cylinder function `J_ν(x)`.
pub fn bessel_j(nu: CylinderOrder, x: f64) -> Result<f64, SpecFunError> {
    check_argument(x)?;
    Ok(jy_unchecked(nu.value(), x)?.j)
}

/// Irregular companion `Y_ν(x)` (Weber normalization, `W[J, Y] = 2/(πx)`).
///
/// For integer order this is the logarithmic solution.
pub fn bessel_second(nu: CylinderOrder, x: f64) -> Result<f64, SpecFunError> {
    bessel_jy(nu, x).map(|p| p.y)
}

/// Unchecked evaluation for internal callers with known-good arguments.
pub(crate) fn bessel_jy_raw(nu: f64, x: f64) -> BesselPair {
    jy_unchecked(nu, x).expect("continued fractions converge for finite positive x")
}

fn check_argument(x: f64) -> Result<(), SpecFunError> {
    if !(x > 0.0) || x > MAX_ARGUMENT || !x.is_finite() {
        return Err(SpecFunError::Argument(x));
    }
    Ok(())
}

fn jy_unchecked(xnu: f64, x: f64) -> Result<BesselPair, SpecFunError> {
    let nl = if x < 2.0 {
        (xnu + 0.5) as usize
    } else {
        (xnu - x + 1.5).max(0.0) as usize
    };
    let xmu = xnu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν/J_ν.
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::NoConvergence { nu: xnu, x });
    }

    // Downward recurrence from ν to μ with unnormalized values.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE_AT {
            rjl /= RESCALE_AT;
            rjpl /= RESCALE_AT;
            rjl1 /= RESCALE_AT;
            rjp1 /= RESCALE_AT;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1) = if x < 2.0 {
        let (rymu, ry1) = temme_y(xmu, x)?;
        let rymup = xmu * xi * rymu - ry1;
        (w / (rymup - f * rymu), rymu, ry1)
    } else {
        let (p, q) = steed_cf2(xmu, x)?;
        let gam = (p - f) / q;
        let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        let rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        (rjmu, rymu, xmu * xi * rymu - rymup)
    };

    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    let dj = rjp1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    let y = rymu;
    let dy = xnu * xi * rymu - ry1;
    Ok(BesselPair { j, y, dj, dy })
}

/// Temme's series for `(Y_μ, Y_{μ+1})`, `|μ| ≤ 1/2`, `x < 2`.
fn temme_y(xmu: f64, x: f64) -> Result<(f64, f64), SpecFunError> {
    let xmu2 = xmu * xmu;
    let x2 = 0.5 * x;
    let pimu = PI * xmu;
    let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = xmu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gamma(xmu);
    let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let e = e.exp();
    let mut p = e / (gampl * PI);
    let mut q = 1.0 / (e * PI * gammi);
    let pimu2 = 0.5 * pimu;
    let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
    let r = PI * pimu2 * fact3 * fact3;
    let mut c = 1.0;
    let dd = -x2 * x2;
    let mut sum = ff + r * q;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - xmu2);
        c *= dd / fi;
        p /= fi - xmu;
        q /= fi + xmu;
        let del = c * (ff + r * q);
        sum += del;
        let del1 = c * p - fi * del;
        sum1 += del1;
        if del.abs() < (1.0 + sum.abs()) * EPS {
            return Ok((-sum, -sum1 * 2.0 / x));
        }
    }
    Err(SpecFunError::NoConvergence { nu: xmu, x })
}

/// Steed's CF2: `p + iq = (J'_μ + iY'_μ)/(J_μ + iY_μ)` for `x ≥ 2`.
fn steed_cf2(xmu: f64, x: f64) -> Result<(f64, f64), SpecFunError> {
    let xi = 1.0 / x;
    let mut a = 0.25 - xmu * xmu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let dlr = cr * dr - ci * di;
    let dli = cr * di + ci * dr;
    let temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 1..MAX_ITER {
        a += 2.0 * i as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        let fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        let den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            return Ok((p, q));
        }
    }
    Err(SpecFunError::NoConvergence { nu: xmu, x })
}

/// Exponentially scaled `e^x K_ν(x)` for `|ν| ≤ 1/2`.
pub(crate) fn bessel_k_scaled_small_order(nu: f64, x: f64) -> f64 {
    if x < 2.0 {
        k_scaled_temme(nu, x)
    } else {
        k_scaled_steed(nu, x)
    }
}

fn k_scaled_temme(nu: f64, x: f64) -> f64 {
    let half_x = 0.5 * x;
    let ln_half_x = half_x.ln();
    let half_x_nu = (nu * ln_half_x).exp();
    let pi_nu = PI * nu;
    let sigma = -nu * ln_half_x;
    let sinrat = if pi_nu.abs() < f64::EPSILON { 1.0 } else { pi_nu / pi_nu.sin() };
    let sinhrat = if sigma.abs() < f64::EPSILON { 1.0 } else { sigma.sinh() / sigma };
    let (g1, g2, inv_g1p, inv_g1m) = temme_gamma(nu);

    let mut fk = sinrat * (sigma.cosh() * g1 - sinhrat * ln_half_x * g2);
    let mut pk = 0.5 / half_x_nu / inv_g1p;
    let mut qk = 0.5 * half_x_nu / inv_g1m;
    let mut ck = 1.0;
    let mut sum0 = fk;
    for k in 1..MAX_ITER {
        let k = k as f64;
        fk = (k * fk + pk + qk) / (k * k - nu * nu);
        ck *= half_x * half_x / k;
        pk /= k - nu;
        qk /= k + nu;
        let del0 = ck * fk;
        sum0 += del0;
        if del0.abs() < 0.5 * sum0.abs() * f64::EPSILON {
            break;
        }
    }
    sum0 * x.exp()
}

fn k_scaled_steed(nu: f64, x: f64) -> f64 {
    let mut bi = 2.0 * (1.0 + x);
    let mut di = 1.0 / bi;
    let mut delhi = di;
    let mut qi = 0.0;
    let mut qip1 = 1.0;
    let mut ai = -(0.25 - nu * nu);
    let mut ci = -ai;
    let mut bqi = -ai;
    let mut s = 1.0 + bqi * delhi;
    for i in 2..MAX_ITER {
        ai -= 2.0 * (i - 1) as f64;
        ci = -ai * ci / i as f64;
        let tmp = (qi - bi * qip1) / ai;
        qi = qip1;
        qip1 = tmp;
        bqi += ci * qip1;
        bi += 2.0;
        di = 1.0 / (bi + ai * di);
        delhi *= bi * di - 1.0;
        let dels = bqi * delhi;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() / s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(nu: f64) -> CylinderOrder {
        CylinderOrder::new(nu).unwrap()
    }

    #[test]
    fn temme_gamma_at_zero_order() {
        let (g1, g2, gp, gm) = temme_gamma(0.0);
        assert!((g1 + 0.577_215_664_901_532_9).abs() < 1e-15);
        assert!((g2 - 1.0).abs() < 1e-15);
        assert!((gp - 1.0).abs() < 1e-15 && (gm - 1.0).abs() < 1e-15);
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.3, 1.0, 1.9, 2.0, 5.0, 17.5, 80.0, 640.0] {
            let p = bessel_jy(order(0.5), x).unwrap();
            let s = (2.0 / (PI * x)).sqrt();
            assert!((p.j - s * x.sin()).abs() <= 1e-11 * s, "j at {x}");
            assert!((p.y + s * x.cos()).abs() <= 1e-11 * s, "y at {x}");
        }
        assert!((bessel_j(order(0.5), PI / 2.0).unwrap() - 2.0 / PI).abs() < 1e-14);
        assert!((bessel_second(order(0.5), PI).unwrap() - 2f64.sqrt() / PI).abs() < 1e-14);
    }

    #[test]
    fn zero_order_near_origin() {
        let j = bessel_j(order(0.0), 1e-12).unwrap();
        assert!((j - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wronskian_across_regimes() {
        for &nu in &[0.0, 0.3, 1.0, 2.7, 12.4, 60.5, 250.0] {
            for &x in &[0.05, 1.5, 2.5, 10.0, 61.0, 199.0, 900.0] {
                let Ok(p) = bessel_jy(order(nu), x) else { continue };
                let expect = 2.0 / (PI * x);
                let rel = (p.wronskian() - expect).abs() / expect;
                assert!(rel < 1e-10, "nu={nu} x={x} rel={rel}");
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_j(order(1.0), 0.0).is_err());
        assert!(bessel_j(order(1.0), -2.0).is_err());
        assert!(bessel_j(order(1.0), 2000.0).is_err());
        assert!(CylinderOrder::new(-0.1).is_err());
        assert!(CylinderOrder::new(501.0).is_err());
    }

    #[test]
    fn scaled_k_branches_agree() {
        for &nu in &[0.0, 1.0 / 3.0, 0.5] {
            for &x in &[1.5, 2.0, 2.5] {
                let a = k_scaled_temme(nu, x);
                let b = k_scaled_steed(nu, x);
                assert!((a - b).abs() < 1e-13 * b, "nu={nu} x={x}: {a} vs {b}");
            }
        }
        // K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
        let k = bessel_k_scaled_small_order(0.5, 3.0);
        assert!((k - (PI / 6.0).sqrt()).abs() < 1e-14);
    }
}
