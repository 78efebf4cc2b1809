//! Analytical model of a near-memory FPGA accelerator built around a
//! four-stage dataflow: host transfer, device-memory write, PE pipeline,
//! and write-back.
//!
//! The model covers four platforms (HBM or DDR4 device memory behind an
//! OCAPI or CAPI2 host link), per-PE channel assignment, an affine power
//! model, and the derived throughput and efficiency metrics. Workload
//! parameters come from a flat `key = value` calibration file; the crate
//! embeds [`calibration::DEFAULT_CALIBRATION`], and [`trends`] evaluates
//! the reference trend figures the default calibration is fitted against.
//!
//! Everything is a pure function of its inputs: identical configurations
//! produce identical results, and independent sweeps can run concurrently.

mod calibration;
mod channel;
mod error;
mod platform;
mod profile;
mod sim;
mod sweep;
pub mod trends;

pub use calibration::{Calibration, DEFAULT_CALIBRATION};
pub use channel::{assign_channels, ChannelMap, StreamWidthConverter};
pub use error::SimError;
pub use platform::{
    platform_preset, platform_presets, HostLink, MemoryConfig, MemoryKind, PeCaps,
    PlatformConfig, PowerModel,
};
pub use profile::{Kernel, KernelProfile};
pub use sim::{efficiency, power, simulate, EfficiencyUnit, SimResult};
pub use sweep::{sweep, SweepRow};
pub use trends::{run_trend_checks, TrendCheck};
