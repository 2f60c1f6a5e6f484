use std::io;

use thiserror::Error;
use vortex_core::amplitudes::AmplitudeError;
use vortex_core::asymptotics::AsymptoticError;
use vortex_core::radial::RadialError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("tolerance exceeded: {0}")]
    Tolerance(String),
}

impl CliError {
    /// 1 tolerance failure, 2 invalid input, 3 compute or i/o error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Input(_) => 2,
            CliError::Io { .. } | CliError::Compute(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<AmplitudeError> for CliError {
    fn from(e: AmplitudeError) -> Self {
        match e {
            AmplitudeError::Grid(m) => CliError::Input(m),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<RadialError> for CliError {
    fn from(e: RadialError) -> Self {
        match e {
            RadialError::Domain(m) => CliError::Input(m),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<AsymptoticError> for CliError {
    fn from(e: AsymptoticError) -> Self {
        CliError::Compute(e.to_string())
    }
}
