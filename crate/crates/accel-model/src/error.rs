use thiserror::Error;

use crate::profile::Kernel;

/// Errors from platform lookup, channel assignment, calibration parsing and
/// simulation setup.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("unknown platform `{name}`")]
    UnknownPlatform { name: String },

    #[error("unknown kernel `{name}`")]
    UnknownKernel { name: String },

    #[error("pe_count must be at least 1")]
    ZeroPes,

    #[error("channels_per_pe must be at least 1")]
    ZeroChannelsPerPe,

    #[error("requested {requested} memory channels but only {usable} are usable")]
    ChannelsExhausted { requested: u32, usable: u32 },

    #[error("{kernel} fits at most {cap} PEs on this platform, requested {requested}")]
    PeCapExceeded {
        kernel: Kernel,
        requested: u32,
        cap: u32,
    },

    #[error("calibration line {line_no} is not `key = value`: `{line}`")]
    CalibrationSyntax { line_no: usize, line: String },

    #[error("calibration key `{key}`: {reason}")]
    CalibrationValue { key: String, reason: String },

    #[error("calibration is missing key `{key}`")]
    MissingCalibrationKey { key: String },
}
