use std::fmt;
use std::io;

use accel_model::SimError;
use genomics_filter::FilterError;
use roofline::RooflineError;
use weather_stencils::StencilError;
use workloads_io::WorkloadError;

/// Command failures, split by exit code: input and configuration problems
/// exit 1, failed verification checks exit 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Verification(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<WorkloadError> for CliError {
    fn from(err: WorkloadError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<FilterError> for CliError {
    fn from(err: FilterError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<StencilError> for CliError {
    fn from(err: StencilError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(err: SimError) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<RooflineError> for CliError {
    fn from(err: RooflineError) -> Self {
        CliError::Input(err.to_string())
    }
}
