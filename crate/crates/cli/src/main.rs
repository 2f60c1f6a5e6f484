use std::fs;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use vortex_cli::{
    compare_report, fringe_sweep, parse_key_values, run_scenario, write_curves_csv, write_sweep_csv, CliError, Scenario,
    Tolerances,
};

#[derive(Parser)]
#[command(name = "vortex", version, about = "Scattering by a penetrable magnetic vortex: cross-section curves, flux sweeps, comparisons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write cross-section curves as CSV.
    Run(ScenarioArgs),
    /// Compare the exact curve with the selected closed forms.
    Compare {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Largest relative L2 difference allowed per method.
        #[arg(long)]
        tol_l2: Option<f64>,
        /// Largest interference ratio allowed outside the forward peak.
        #[arg(long)]
        tol_interference: Option<f64>,
        /// Largest pointwise spin difference [default: 10·2|mu|/kr_c²].
        #[arg(long)]
        tol_spin: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol_unitarity: f64,
    },
    /// Diffraction peak positions over a flux grid in [0, 3].
    Sweep {
        #[arg(long = "kr-c")]
        kr_c: f64,
        #[arg(long, default_value_t = 0.0)]
        mu_min: f64,
        #[arg(long, default_value_t = 3.0)]
        mu_max: f64,
        #[arg(long, default_value_t = 301)]
        mu_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// key = value file; flags override its entries.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long = "kr-c")]
    kr_c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Barrier strength; `inf` for an impenetrable vortex.
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Spin projection, +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi_max: Option<String>,
    #[arg(long)]
    steps: Option<String>,
    /// Comma-separated: exact, fraunhofer, penetration, rainbow, classical, ab.
    #[arg(long)]
    method: Vec<String>,
    /// `k` for k·dσ/(dz dφ), `rc` for dσ/(dz dφ)/r_c.
    #[arg(long)]
    units: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn build(&self) -> Result<Scenario, CliError> {
        let mut pairs = match &self.scenario {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read scenario {}: {e}", path.display())))?;
                parse_key_values(&text)?
            }
            None => Vec::new(),
        };
        let flags = [
            ("kr_c", &self.kr_c),
            ("mu", &self.mu),
            ("kappa", &self.kappa),
            ("sigma", &self.sigma),
            ("phi_min", &self.phi_min),
            ("phi_max", &self.phi_max),
            ("steps", &self.steps),
            ("units", &self.units),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                pairs.push((k.to_string(), v.clone()));
            }
        }
        if !self.method.is_empty() {
            pairs.push(("method".into(), self.method.join(",")));
        }
        if let Some(p) = &self.out {
            pairs.push(("out".into(), p.display().to_string()));
        }
        let scenario = Scenario::from_pairs(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
        for w in scenario.warnings() {
            eprintln!("warning: {w}");
        }
        Ok(scenario)
    }
}

fn write_to(path: &Option<PathBuf>, f: impl FnOnce(&mut dyn io::Write) -> io::Result<()>) -> Result<(), CliError> {
    let (shown, result) = match path {
        Some(p) => {
            let shown = p.display().to_string();
            match fs::File::create(p) {
                Ok(file) => (shown, f(&mut BufWriter::new(file))),
                Err(e) => (shown, Err(e)),
            }
        }
        None => ("stdout".to_string(), f(&mut io::stdout().lock())),
    };
    result.map_err(|source| CliError::Io { path: shown, source })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => {
            let scenario = args.build()?;
            let curves = run_scenario(&scenario)?;
            if scenario.output_path.is_none() {
                write_to(&None, |w| write_curves_csv(w, &curves))?;
            }
            Ok(())
        }
        Command::Compare { scenario, tol_l2, tol_interference, tol_spin, tol_unitarity } => {
            let s = scenario.build()?;
            let mut tol = Tolerances::for_params(&s.params);
            tol.unitarity = tol_unitarity;
            tol.method_l2 = tol_l2;
            tol.interference = tol_interference;
            if tol_spin.is_some() {
                tol.spin_pointwise = tol_spin;
            }
            let report = compare_report(&s, &tol)?;
            match &s.output_path {
                Some(_) => {
                    write_to(&s.output_path, |w| report.write_csv(w))?;
                    print!("{}", report.summary());
                }
                None => eprint!("{}", report.summary()),
            }
            if s.output_path.is_none() {
                write_to(&None, |w| report.write_csv(w))?;
            }
            if report.failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Tolerance(report.failures.join("; ")))
            }
        }
        Command::Sweep { kr_c, mu_min, mu_max, mu_steps, out } => {
            if mu_steps < 2 || !(mu_min < mu_max) {
                return Err(CliError::Input("sweep needs mu_min < mu_max and at least 2 steps".into()));
            }
            let h = (mu_max - mu_min) / (mu_steps - 1) as f64;
            let grid: Vec<f64> = (0..mu_steps).map(|j| if j + 1 == mu_steps { mu_max } else { mu_min + h * j as f64 }).collect();
            let rows = fringe_sweep(kr_c, &grid)?;
            for r in rows.iter().filter(|r| r.is_flagged()) {
                eprintln!("warning: no diffraction peak found at mu = {}", r.mu);
            }
            write_to(&out, |w| write_sweep_csv(w, &rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
