use std::collections::BTreeMap;

use crate::error::RooflineError;

/// Compute and bandwidth ceilings of one machine, as used on a roofline
/// plot: a flat compute roof and one slanted bandwidth roof per label.
///
/// Preset figures are configuration defaults assembled from public
/// datasheet numbers (core counts, clocks, channel widths), not
/// measurements; callers modeling a specific machine should build their own
/// value.
#[derive(Debug, Clone, PartialEq)]
pub struct RooflinePlatform {
    pub name: &'static str,
    pub peak_compute_gflops: f64,
    /// Labeled bandwidth roofs, primary (DRAM-class) first.
    pub bandwidths: Vec<(&'static str, f64)>,
}

impl RooflinePlatform {
    pub fn validate(&self) -> Result<(), RooflineError> {
        if !(self.peak_compute_gflops.is_finite() && self.peak_compute_gflops > 0.0) {
            return Err(RooflineError::NonPositiveIntensity {
                ai: self.peak_compute_gflops,
            });
        }
        if self.bandwidths.is_empty() {
            return Err(RooflineError::UnknownBandwidthLabel {
                label: String::new(),
            });
        }
        for (label, gbps) in &self.bandwidths {
            if !(gbps.is_finite() && *gbps > 0.0) {
                return Err(RooflineError::UnknownBandwidthLabel {
                    label: (*label).to_owned(),
                });
            }
        }
        Ok(())
    }

    pub fn bandwidth_gbps(&self, label: &str) -> Result<f64, RooflineError> {
        self.bandwidths
            .iter()
            .find(|(name, _)| *name == label)
            .map(|(_, gbps)| *gbps)
            .ok_or_else(|| RooflineError::UnknownBandwidthLabel {
                label: label.to_owned(),
            })
    }

    /// Intensity at which the bandwidth roof meets the compute roof;
    /// kernels below it are memory-bound under that roof.
    pub fn ridge_flops_per_byte(&self, label: &str) -> Result<f64, RooflineError> {
        Ok(self.peak_compute_gflops / self.bandwidth_gbps(label)?)
    }

    /// Label of the primary (DRAM-class) bandwidth roof.
    pub fn primary_bandwidth_label(&self) -> &'static str {
        self.bandwidths[0].0
    }
}

/// Built-in roofline presets.
///
/// * `power9_like`: a one-socket server CPU. 22 cores with two 128-bit FMA
///   pipes near 2.9 GHz peak at roughly 500 double-precision GFLOPS, and
///   eight directly attached DDR4-2666 channels sustain about 140 GB/s.
/// * `hbm_fpga_like`: a large HBM2 FPGA card. 16 pseudo-channels at
///   12.8 GB/s give 204.8 GB/s of device bandwidth; about nine thousand
///   DSP slices at 250 MHz put the multiply-add roof near 4500 GFLOPS. The
///   host link roof is the 22.1 GB/s coherent attach.
/// * `ddr4_fpga_like`: a mid-size FPGA card with one DDR4 channel at
///   25.6 GB/s, about two thousand DSP slices at 200 MHz (roughly
///   800 GFLOPS), and a 13.9 GB/s coherent host link.
pub fn roofline_presets() -> BTreeMap<&'static str, RooflinePlatform> {
    let mut presets = BTreeMap::new();
    presets.insert(
        "power9_like",
        RooflinePlatform {
            name: "power9_like",
            peak_compute_gflops: 500.0,
            bandwidths: vec![("dram", 140.0)],
        },
    );
    presets.insert(
        "hbm_fpga_like",
        RooflinePlatform {
            name: "hbm_fpga_like",
            peak_compute_gflops: 4500.0,
            bandwidths: vec![("hbm", 204.8), ("host_link", 22.1)],
        },
    );
    presets.insert(
        "ddr4_fpga_like",
        RooflinePlatform {
            name: "ddr4_fpga_like",
            peak_compute_gflops: 800.0,
            bandwidths: vec![("ddr4", 25.6), ("host_link", 13.9)],
        },
    );
    presets
}

pub fn roofline_preset(name: &str) -> Result<RooflinePlatform, RooflineError> {
    roofline_presets()
        .remove(name)
        .ok_or_else(|| RooflineError::UnknownPlatform {
            name: name.to_owned(),
        })
}

/// Attainable performance at intensity `ai` under the labeled bandwidth
/// roof: `min(peak_compute, ai · bandwidth)`.
pub fn attainable_gflops(
    ai: f64,
    platform: &RooflinePlatform,
    label: &str,
) -> Result<f64, RooflineError> {
    if !(ai.is_finite() && ai > 0.0) {
        return Err(RooflineError::NonPositiveIntensity { ai });
    }
    let bandwidth = platform.bandwidth_gbps(label)?;
    Ok(platform.peak_compute_gflops.min(ai * bandwidth))
}
