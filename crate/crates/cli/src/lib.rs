//! Scenario files, CSV curve output, flux sweeps and comparison reports on
//! top of `vortex-core`.

mod error;
mod output;
mod report;
mod scenario;
mod sweep;

pub use error::CliError;
pub use output::{format_number, write_curves_csv, CURVE_HEADER};
pub use report::{compare_report, kappa_scan, relative_l2, spin_scan, CompareReport, KappaScan, MethodSummary, SpinScan, Tolerances};
pub use scenario::{parse_key_values, run_scenario, GridSpec, Scenario};
pub use sweep::{fringe_peaks, fringe_sweep, write_sweep_csv, FringePeak, FringeRow, SWEEP_HEADER};

pub use vortex_core::amplitudes::{Method, Units};
pub use vortex_core::radial::{Barrier, Spin, VortexParams};
