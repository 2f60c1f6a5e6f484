use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use vortex_core::amplitudes::{cross_section_curve, AngleGrid, CrossSectionCurve, Method, Units};
use vortex_core::radial::{mode_table, Barrier, Spin, VortexParams};

use crate::error::CliError;
use crate::output::write_curves_csv;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub phi_min: f64,
    pub phi_max: f64,
    pub steps: usize,
}

/// One run: parameters, angles, methods and where to write.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub params: VortexParams,
    /// `None` selects the default 2001-point grid.
    pub grid: Option<GridSpec>,
    /// Sorted, without repeats.
    pub methods: Vec<Method>,
    pub output_path: Option<PathBuf>,
    pub rescale_rc: bool,
}

/// `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("line {}: expected key = value, got '{raw}'", i + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn number(key: &str, v: &str) -> Result<f64, CliError> {
    v.parse::<f64>().map_err(|_| CliError::Input(format!("{key}: '{v}' is not a number")))
}

fn spin(v: &str) -> Result<Spin, CliError> {
    match v.trim() {
        "1" | "+1" | "up" => Ok(Spin::Up),
        "-1" | "down" => Ok(Spin::Down),
        _ => Err(CliError::Input(format!("sigma: '{v}' must be +1 or -1"))),
    }
}

pub(crate) fn methods(v: &str) -> Result<Vec<Method>, CliError> {
    let mut out = v
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Method>().map_err(CliError::Input))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

impl Scenario {
    /// Builds a scenario from `(key, value)` pairs; later pairs win, so
    /// file entries followed by flags gives flags precedence.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, CliError> {
        let mut kr_c = None;
        let (mut mu, mut kappa, mut sigma) = (0.0, 0.0, Spin::Up);
        let (mut phi_min, mut phi_max, mut steps) = (None, None, None);
        let mut method_list = vec![Method::Exact];
        let mut output_path = None;
        let mut units = Units::InverseK;
        for (key, v) in pairs {
            match key.replace('-', "_").as_str() {
                "kr_c" => kr_c = Some(number(key, v)?),
                "mu" => mu = number(key, v)?,
                "kappa" => kappa = number(key, v)?,
                "sigma" => sigma = spin(v)?,
                "phi_min" => phi_min = Some(number(key, v)?),
                "phi_max" => phi_max = Some(number(key, v)?),
                "steps" => steps = Some(v.parse::<usize>().map_err(|_| CliError::Input(format!("steps: '{v}' is not a count")))?),
                "method" | "methods" => method_list = methods(v)?,
                "units" => units = v.parse::<Units>().map_err(CliError::Input)?,
                "out" | "output" => output_path = Some(PathBuf::from(v)),
                _ => return Err(CliError::Input(format!("unknown key '{key}'"))),
            }
        }
        let kr_c = kr_c.ok_or_else(|| CliError::Input("kr_c is required".into()))?;
        let params = VortexParams::new(kr_c, mu, Barrier::from_f64(kappa), sigma)?;
        let grid = match (phi_min, phi_max, steps) {
            (None, None, None) => None,
            (a, b, s) => Some(GridSpec {
                phi_min: a.unwrap_or(-PI * (1.0 - 1e-9)),
                phi_max: b.unwrap_or(PI * (1.0 - 1e-9)),
                steps: s.unwrap_or(2001),
            }),
        };
        let scenario = Scenario { params, grid, methods: method_list, output_path, rescale_rc: units == Units::Rc };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn units(&self) -> Units {
        if self.rescale_rc {
            Units::Rc
        } else {
            Units::InverseK
        }
    }

    pub fn angle_grid(&self) -> Result<AngleGrid, CliError> {
        match self.grid {
            None => Ok(AngleGrid::default()),
            Some(g) => Ok(AngleGrid::uniform(g.phi_min, g.phi_max, g.steps)?),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.methods.is_empty() {
            return Err(CliError::Input("no methods selected".into()));
        }
        let grid = self.angle_grid()?;
        if grid.contains_zero() && self.methods.iter().any(|m| matches!(m, Method::Exact | Method::AB)) {
            return Err(CliError::Input("the grid contains phi = 0, where exact and AB amplitudes are singular".into()));
        }
        Ok(())
    }

    /// Regime violations, one line each, quoting the violated inequality.
    pub fn warnings(&self) -> Vec<String> {
        self.params.warnings().iter().map(|w| w.to_string()).collect()
    }
}

/// Computes every selected curve, sharing one mode table, and writes the
/// CSV to `output_path` when set.
pub fn run_scenario(scenario: &Scenario) -> Result<Vec<CrossSectionCurve>, CliError> {
    scenario.validate()?;
    let grid = scenario.angle_grid()?;
    let table = if scenario.methods.contains(&Method::Exact) {
        Some(mode_table(&scenario.params, None)?)
    } else {
        None
    };
    let curves = scenario
        .methods
        .iter()
        .map(|&m| cross_section_curve(&scenario.params, &grid, m, scenario.units(), table.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &scenario.output_path {
        let shown = path.display().to_string();
        let file = File::create(path).map_err(|e| CliError::io(&shown, e))?;
        write_curves_csv(BufWriter::new(file), &curves).map_err(|e| CliError::io(&shown, e))?;
    }
    Ok(curves)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_parsing() {
        let kv = parse_key_values("# comment\nkr_c = 50\n\nmu=0.3 # trailing\n").unwrap();
        assert_eq!(kv, vec![("kr_c".into(), "50".into()), ("mu".into(), "0.3".into())]);
        assert!(parse_key_values("kr_c 50").is_err());
    }

    #[test]
    fn later_pairs_win_and_inf_parses() {
        let s = Scenario::from_pairs([("kr_c", "50"), ("kappa", "2"), ("kappa", "inf"), ("sigma", "-1")]).unwrap();
        assert_eq!(s.params.barrier, Barrier::Impenetrable);
        assert_eq!(s.params.spin, Spin::Down);
        assert_eq!(s.methods, vec![Method::Exact]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(Scenario::from_pairs([("mu", "1")]), Err(CliError::Input(_))));
        assert!(matches!(Scenario::from_pairs([("kr_c", "50"), ("steps", "1"), ("phi_min", "0.1"), ("phi_max", "0.2")]), Err(CliError::Input(_))));
        assert!(matches!(Scenario::from_pairs([("kr_c", "50"), ("phi_min", "-4")]), Err(CliError::Input(_))));
        assert!(matches!(Scenario::from_pairs([("kr_c", "50"), ("method", "")]), Err(CliError::Input(_))));
        assert!(matches!(Scenario::from_pairs([("kr_c", "50"), ("bogus", "1")]), Err(CliError::Input(_))));
        let zero = [("kr_c", "50"), ("phi_min", "-1"), ("phi_max", "1"), ("steps", "3")];
        assert!(matches!(Scenario::from_pairs(zero), Err(CliError::Input(_))));
        let mut ok = zero.to_vec();
        ok.push(("method", "fraunhofer"));
        assert!(Scenario::from_pairs(ok).is_ok());
    }

    #[test]
    fn warnings_quote_the_inequality() {
        let s = Scenario::from_pairs([("kr_c", "5"), ("mu", "10")]).unwrap();
        let w = s.warnings().join("\n");
        assert!(w.contains("kr_c >> 1"), "{w}");
        assert!(w.contains("<<"), "{w}");
    }
}
