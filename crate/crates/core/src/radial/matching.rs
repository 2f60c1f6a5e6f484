use num_complex::Complex64;
use rayon::prelude::*;

use super::inside::{inside_solution, InsideSolution};
use super::params::{Barrier, ModeIndex, Regime, VortexParams};
use super::RadialError;
use crate::specfun::{bessel_jy, CylinderOrder};

/// Far-mode `|c_n|` below this, three times in a row, ends the table tail.
pub const TAIL_THRESHOLD: f64 = 1e-14;

const SQRT_HALF_PI: f64 = 1.253_314_137_315_500_3;
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

/// Exterior basis pair at the vortex edge.
///
/// Near modes: `minus/plus = √(π/2)(J_ν ∓ iY_ν)`, the incoming/outgoing
/// waves. Far modes: `minus = √(2π) J_ν` (regular, `~x^ν`) and
/// `plus = √(π/2)(J_ν + iY_ν)` (irregular, `~x^{−ν}`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutsideBasis {
    pub regime: Regime,
    pub minus: Complex64,
    pub dminus: Complex64,
    pub plus: Complex64,
    pub dplus: Complex64,
    j: f64,
    dj: f64,
    y: f64,
    dy: f64,
}

impl OutsideBasis {
    /// `W(minus, plus)`; equals `2i/X` in both regimes.
    pub fn wronskian(&self) -> Complex64 {
        self.minus * self.dplus - self.plus * self.dminus
    }
}

/// Per-mode matching result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeMatch {
    pub n: i64,
    pub nu: f64,
    pub regime: Regime,
    pub c_n: Complex64,
    /// Outgoing over incoming amplitude, `1` without a scatterer.
    pub s_n: Complex64,
    /// `b_n / a_n`.
    pub b_ratio: Complex64,
    /// Set when the entry was zeroed by tail truncation.
    pub suppressed: bool,
}

pub fn outside_basis_at_edge(mode: ModeIndex, params: &VortexParams) -> Result<OutsideBasis, RadialError> {
    let err = |source| RadialError::SpecFun { n: mode.n, source };
    let order = CylinderOrder::new(mode.nu).map_err(err)?;
    let p = bessel_jy(order, params.kr_c).map_err(err)?;
    let h1 = Complex64::new(p.j, p.y) * SQRT_HALF_PI;
    let dh1 = Complex64::new(p.dj, p.dy) * SQRT_HALF_PI;
    let (minus, dminus) = match mode.regime {
        Regime::Near => (h1.conj(), dh1.conj()),
        Regime::Far => (Complex64::new(SQRT_TWO_PI * p.j, 0.0), Complex64::new(SQRT_TWO_PI * p.dj, 0.0)),
    };
    Ok(OutsideBasis { regime: mode.regime, minus, dminus, plus: h1, dplus: dh1, j: p.j, dj: p.dj, y: p.y, dy: p.dy })
}

/// `W(f, τ) + κ f τ` at the edge; `None` κ means the Dirichlet limit, where
/// only `f τ` survives after dividing by `κ`.
fn edge_form(f: Complex64, df: Complex64, t: &InsideSolution, kappa: Option<f64>) -> Complex64 {
    match kappa {
        Some(k) => f * t.derivative - df * t.value + f * (k * t.value),
        None => f,
    }
}

/// Matches a precomputed interior solution onto the exterior basis.
pub fn match_with_inside(
    mode: ModeIndex,
    params: &VortexParams,
    inside: &InsideSolution,
) -> Result<ModeMatch, RadialError> {
    // b_n is tied to the scale of τ; fixing the scale makes it comparable.
    let inside = &InsideSolution::normalized(inside.value, inside.derivative);
    let basis = outside_basis_at_edge(mode, params)?;
    let kappa = match params.barrier {
        Barrier::Finite(k) => Some(k),
        Barrier::Impenetrable => None,
    };
    // Hankel-form numerator and denominator. With a real interior solution
    // they are complex conjugates, so |s_n| = 1 holds to rounding.
    let h1 = Complex64::new(basis.j, basis.y);
    let dh1 = Complex64::new(basis.dj, basis.dy);
    let den = edge_form(h1, dh1, inside, kappa);
    if den.norm() < 1e-300 {
        return Err(RadialError::Degenerate { n: mode.n });
    }
    let s_n = -den.conj() / den;
    let c_n = match mode.regime {
        Regime::Near => -s_n,
        Regime::Far => {
            // 2·[W(J,τ)+κJτ]/[W(H1,τ)+κH1τ], computed directly to keep the
            // tiny tunnelling amplitude free of cancellation.
            let jform = edge_form(Complex64::new(basis.j, 0.0), Complex64::new(basis.dj, 0.0), inside, kappa);
            2.0 * jform / den
        }
    };
    let b_ratio = match kappa {
        None => Complex64::new(0.0, 0.0),
        Some(_) => {
            let d = edge_form(basis.plus, basis.dplus, inside, kappa);
            (basis.plus * basis.dminus - basis.minus * basis.dplus) / d
        }
    };
    Ok(ModeMatch { n: mode.n, nu: mode.nu, regime: mode.regime, c_n, s_n, b_ratio, suppressed: false })
}

pub fn match_coefficient(mode: ModeIndex, params: &VortexParams) -> Result<ModeMatch, RadialError> {
    let inside = inside_solution(mode, params)?;
    match_with_inside(mode, params, &inside)
}

/// Index-ordered mode data over a contiguous range of `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeTable {
    pub params: VortexParams,
    first: i64,
    pub entries: Vec<ModeMatch>,
}

impl ModeTable {
    pub fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.first..=(self.first + self.entries.len() as i64 - 1)
    }

    pub fn get(&self, n: i64) -> Result<&ModeMatch, RadialError> {
        usize::try_from(n - self.first)
            .ok()
            .and_then(|i| self.entries.get(i))
            .ok_or(RadialError::Coverage { n })
    }

    /// Whether all Near modes and the default cutoff are inside the table.
    pub fn covers_default(&self) -> bool {
        let need = self.params.mode_range();
        let have = self.range();
        have.start() <= need.start() && have.end() >= need.end()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ModeMatch> {
        self.entries.iter()
    }

    /// Largest `||s_n| − 1|` over the table.
    pub fn unitarity_defect(&self) -> f64 {
        self.entries.iter().map(|m| (m.s_n.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Computes all modes in `range` in parallel, then suppresses the Far tail
/// on each side deterministically. Defaults to [`VortexParams::mode_range`].
pub fn mode_table(
    params: &VortexParams,
    range: Option<std::ops::RangeInclusive<i64>>,
) -> Result<ModeTable, RadialError> {
    let range = range.unwrap_or_else(|| params.mode_range());
    let first = *range.start();
    let results: Vec<Result<ModeMatch, RadialError>> = range
        .into_par_iter()
        .map(|n| match_coefficient(ModeIndex::new(n, params), params))
        .collect();
    let mut entries = Vec::with_capacity(results.len());
    for r in results {
        entries.push(r?);
    }
    suppress_tail(&mut entries, params.mu);
    Ok(ModeTable { params: *params, first, entries })
}

fn suppress_tail(entries: &mut [ModeMatch], mu: f64) {
    let centre = entries.partition_point(|m| (m.n as f64) < mu);
    let (low, high) = entries.split_at_mut(centre);
    suppress_run(high.iter_mut());
    suppress_run(low.iter_mut().rev());
}

fn suppress_run<'a>(side: impl Iterator<Item = &'a mut ModeMatch>) {
    let mut run = 0;
    for m in side {
        if m.regime != Regime::Far {
            run = 0;
            continue;
        }
        if run >= 3 || m.c_n.norm() < TAIL_THRESHOLD {
            run += 1;
        } else {
            run = 0;
        }
        if run >= 3 {
            m.c_n = Complex64::new(0.0, 0.0);
            m.s_n = Complex64::new(1.0, 0.0);
            m.suppressed = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::Spin;
    use crate::specfun::bessel_j;

    fn params(kr_c: f64, mu: f64, kappa: f64) -> VortexParams {
        VortexParams::new(kr_c, mu, Barrier::from_f64(kappa), Spin::Up).unwrap()
    }

    #[test]
    fn free_case_identities() {
        let p = VortexParams::free(10.0);
        for n in -40..=40 {
            let m = match_coefficient(ModeIndex::new(n, &p), &p).unwrap();
            match m.regime {
                Regime::Near => assert!((m.c_n + 1.0).norm() < 1e-10, "n={n} {}", m.c_n),
                Regime::Far => assert!(m.c_n.norm() < 1e-10, "n={n} {}", m.c_n),
            }
            assert!((m.s_n - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn basis_wronskians() {
        let p = params(10.0, -2.4, 0.0);
        let far = ModeIndex::new(10, &p);
        assert_eq!(far.regime, Regime::Far);
        let b = outside_basis_at_edge(far, &p).unwrap();
        assert!(b.minus.norm() < 0.2 && b.plus.norm() > 1.0);
        assert!((b.wronskian() - Complex64::new(0.0, 0.2)).norm() < 1e-11);

        let q = params(50.0, 0.0, 0.0).with_mu(-3.2);
        let near = ModeIndex::new(0, &q);
        let b = outside_basis_at_edge(near, &q).unwrap();
        assert!((b.wronskian() - Complex64::new(0.0, 2.0 / 50.0)).norm() < 1e-12);
        let j = (b.plus + b.minus) / (2.0 * SQRT_HALF_PI);
        let oracle = bessel_j(CylinderOrder::new(3.2).unwrap(), 50.0).unwrap();
        assert!((j.re - oracle).abs() < 1e-9 && j.im.abs() < 1e-15);
    }

    #[test]
    fn dirichlet_limit() {
        let p = params(30.0, 0.37, 1e8);
        let q = params(30.0, 0.37, f64::INFINITY);
        let mode = ModeIndex::new(5, &p);
        let a = match_coefficient(mode, &p).unwrap();
        let b = match_coefficient(mode, &q).unwrap();
        assert!((a.c_n - b.c_n).norm() < 1e-6);
        assert_eq!(b.b_ratio, Complex64::new(0.0, 0.0));

        let mut prev = f64::INFINITY;
        for k in [1e2, 1e4, 1e6, 1e8] {
            let d = (match_coefficient(mode, &params(30.0, 0.37, k)).unwrap().c_n - b.c_n).norm();
            assert!(d < prev && d * k < 50.0, "kappa={k} diff={d}");
            prev = d;
        }
    }

    #[test]
    fn near_modes_have_unit_coefficients() {
        let p = params(20.0, 0.3, 2.0);
        let t = mode_table(&p, None).unwrap();
        for m in t.iter() {
            assert!((m.s_n.norm() - 1.0).abs() < 1e-12);
            if m.regime == Regime::Near {
                assert!((m.c_n.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn scale_invariance() {
        let p = params(25.0, 1.3, 3.0);
        let mode = ModeIndex::new(-4, &p);
        let sol = inside_solution(mode, &p).unwrap();
        let a = match_with_inside(mode, &p, &sol).unwrap();
        for f in [-7.5, 1e-200, 3e150] {
            let b = match_with_inside(mode, &p, &sol.scaled(f)).unwrap();
            assert!((a.c_n - b.c_n).norm() < 1e-15);
            assert!((a.s_n - b.s_n).norm() < 1e-15);
            assert!((a.b_ratio - b.b_ratio).norm() < 1e-14 * a.b_ratio.norm());
        }
    }

    #[test]
    fn far_tail_decays_and_is_suppressed() {
        let p = params(100.0, 10.0, 2.0);
        let t = mode_table(&p, None).unwrap();
        assert!(t.covers_default());
        let far_above: Vec<_> = t.iter().filter(|m| m.regime == Regime::Far && m.n as f64 > 10.0).collect();
        let start = far_above.iter().position(|m| m.nu - 100.0 > 100f64.cbrt()).unwrap();
        for w in far_above[start..].windows(2) {
            assert!(w[1].c_n.norm() <= w[0].c_n.norm());
        }
        assert!(t.iter().any(|m| m.suppressed));
        assert!(t.iter().filter(|m| m.suppressed).all(|m| m.c_n == Complex64::new(0.0, 0.0)));
        assert!(t.get(t.range().end() + 1).is_err());
    }

    #[test]
    fn table_is_deterministic() {
        let p = params(30.0, 2.5, 1.0);
        assert_eq!(mode_table(&p, None).unwrap(), mode_table(&p, None).unwrap());
    }
}
