//! Roofline analysis: where counted kernels sit against a machine's compute
//! and bandwidth ceilings.
//!
//! A [`RooflinePlatform`] holds one flat compute roof and one or more
//! labeled bandwidth roofs. [`attainable_gflops`] evaluates the classic
//! `min(peak, intensity · bandwidth)` curve, and [`place_kernels`] turns
//! instrumented kernel counters into placement rows with a memory- or
//! compute-bound classification at the ridge point.

mod error;
mod place;
mod platform;

pub use error::RooflineError;
pub use place::{
    place_kernels, BoundClass, KernelPlacement, PlacementRow, CALIBRATION_WARNING_MARGIN,
};
pub use platform::{attainable_gflops, roofline_preset, roofline_presets, RooflinePlatform};
