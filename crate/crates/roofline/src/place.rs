use std::fmt;

use weather_stencils::KernelCounters;

use crate::error::RooflineError;
use crate::platform::{attainable_gflops, RooflinePlatform};

/// Measured performance may exceed the model's attainable line by this
/// relative margin before the row is flagged as a calibration warning.
pub const CALIBRATION_WARNING_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundClass {
    Memory,
    Compute,
}

impl BoundClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundClass::Memory => "memory",
            BoundClass::Compute => "compute",
        }
    }
}

impl fmt::Display for BoundClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One kernel to place on the roofline: its counted work and, when a timed
/// run exists, the performance it achieved.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelPlacement {
    pub kernel: String,
    pub counters: KernelCounters,
    pub measured_gflops: Option<f64>,
}

/// One placed kernel: where it sits relative to the roofs.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementRow {
    pub kernel: String,
    pub ai_flops_per_byte: f64,
    pub measured_gflops: Option<f64>,
    pub attainable_gflops: f64,
    pub bound_class: BoundClass,
    pub bandwidth_label: &'static str,
    /// Set when the measured figure beats the attainable line by more than
    /// [`CALIBRATION_WARNING_MARGIN`]: the counters or the platform figures
    /// are then inconsistent with the measurement, which deserves a look
    /// rather than an error.
    pub calibration_warning: bool,
}

/// Places each counted kernel under the labeled bandwidth roof of
/// `platform`. A kernel is memory-bound exactly when its intensity lies
/// left of the ridge point.
pub fn place_kernels(
    placements: &[KernelPlacement],
    platform: &RooflinePlatform,
    label: &str,
) -> Result<Vec<PlacementRow>, RooflineError> {
    platform.validate()?;
    let bandwidth_label = platform
        .bandwidths
        .iter()
        .find(|(name, _)| *name == label)
        .map(|(name, _)| *name)
        .ok_or_else(|| RooflineError::UnknownBandwidthLabel {
            label: label.to_owned(),
        })?;
    let ridge = platform.ridge_flops_per_byte(label)?;

    placements
        .iter()
        .map(|placement| {
            let ai = placement.counters.arithmetic_intensity().ok_or_else(|| {
                RooflineError::ZeroTraffic {
                    kernel: placement.kernel.clone(),
                }
            })?;
            let attainable = attainable_gflops(ai, platform, label)?;
            let bound_class = if ai < ridge {
                BoundClass::Memory
            } else {
                BoundClass::Compute
            };
            let calibration_warning = placement
                .measured_gflops
                .is_some_and(|measured| measured > attainable * (1.0 + CALIBRATION_WARNING_MARGIN));
            Ok(PlacementRow {
                kernel: placement.kernel.clone(),
                ai_flops_per_byte: ai,
                measured_gflops: placement.measured_gflops,
                attainable_gflops: attainable,
                bound_class,
                bandwidth_label,
                calibration_warning,
            })
        })
        .collect()
}
