use std::fmt;

use crate::channel::{assign_channels, ChannelMap};
use crate::error::SimError;
use crate::platform::{MemoryKind, PlatformConfig};
use crate::profile::{Kernel, KernelProfile};

/// Unit the `efficiency` field of a [`SimResult`] is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfficiencyUnit {
    MseqPerSecPerWatt,
    GflopsPerWatt,
}

impl fmt::Display for EfficiencyUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EfficiencyUnit::MseqPerSecPerWatt => f.write_str("Mseq/s/W"),
            EfficiencyUnit::GflopsPerWatt => f.write_str("GFLOPS/W"),
        }
    }
}

/// Outcome of evaluating the stage model for one configuration.
///
/// `total_ms` is the bottleneck stage plus a pipeline fill overhead of one
/// work unit's latency through the non-bottleneck stages, so
/// `max(stages) <= total_ms <= sum(stages)` always holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimResult {
    /// Host DRAM to accelerator transfer over the host link.
    pub host_ms: f64,
    /// Device-memory write of the incoming stream across the enabled
    /// channels.
    pub hbmw_ms: f64,
    /// PE pipeline: the slowest of channel reads, compute, and channel
    /// writes across all PEs.
    pub pipe_ms: f64,
    /// Result write-back to the host.
    pub wb_ms: f64,
    pub total_ms: f64,
    pub throughput_units_per_s: f64,
    pub power_w: f64,
    pub efficiency: f64,
    pub efficiency_unit: EfficiencyUnit,
}

impl SimResult {
    pub fn stage_times_ms(&self) -> [f64; 4] {
        [self.host_ms, self.hbmw_ms, self.pipe_ms, self.wb_ms]
    }
}

/// Card power for a configuration: `static_w + channels·per_channel_w +
/// pes·per_pe_w`, with channels counted per [`ChannelMap::enabled_channels`].
pub fn power(
    platform: &PlatformConfig,
    pe_count: u32,
    channels_per_pe: u32,
) -> Result<f64, SimError> {
    if pe_count == 0 {
        return Err(SimError::ZeroPes);
    }
    if channels_per_pe == 0 {
        return Err(SimError::ZeroChannelsPerPe);
    }
    let enabled = match platform.memory.kind {
        MemoryKind::Hbm => {
            let requested = pe_count * channels_per_pe;
            if requested > platform.memory.usable_channels {
                return Err(SimError::ChannelsExhausted {
                    requested,
                    usable: platform.memory.usable_channels,
                });
            }
            requested
        }
        MemoryKind::Ddr4 => 1,
    };
    Ok(power_of(platform, pe_count, enabled))
}

fn power_of(platform: &PlatformConfig, pe_count: u32, enabled_channels: u32) -> f64 {
    platform.power.static_w
        + f64::from(enabled_channels) * platform.power.per_channel_w
        + f64::from(pe_count) * platform.power.per_pe_w
}

/// Converts model throughput into the kernel's efficiency metric:
/// Mseq/s/W for the filter, GFLOPS/W for the stencils.
pub fn efficiency(
    kernel: Kernel,
    throughput_units_per_s: f64,
    flops_per_unit: f64,
    power_w: f64,
) -> (f64, EfficiencyUnit) {
    match kernel {
        Kernel::SneakySnake => (
            throughput_units_per_s / 1e6 / power_w,
            EfficiencyUnit::MseqPerSecPerWatt,
        ),
        Kernel::Vadvc | Kernel::Hdiff => (
            throughput_units_per_s * flops_per_unit / 1e9 / power_w,
            EfficiencyUnit::GflopsPerWatt,
        ),
    }
}

/// Evaluates the four-stage dataflow model for one configuration.
///
/// Stage times:
/// * host transfer: total input bytes over the host-link read bandwidth;
/// * device-memory write: the same bytes over the enabled channels;
/// * PE pipeline: per-PE work over the slowest of channel-read bandwidth,
///   `clock / compute_cycles_per_unit`, and channel-write bandwidth. Each
///   HBM PE owns `channels_per_pe` channels; DDR4 PEs contend for the
///   single channel, so its bandwidth is shared `pe_count` ways;
/// * write-back: total output bytes over the slower of the host-link write
///   bandwidth and the enabled channels.
///
/// The stages stream concurrently: total time is the bottleneck stage plus
/// one unit's fill latency through the remaining stages.
pub fn simulate(
    profile: &KernelProfile,
    platform: &PlatformConfig,
    pe_count: u32,
    channels_per_pe: u32,
) -> Result<SimResult, SimError> {
    profile.validate()?;
    platform.validate()?;
    let map = assign_channels(platform, profile.kernel, pe_count, channels_per_pe)?;

    let power_w = power_of(platform, pe_count, map.enabled_channels());
    if profile.work_units == 0 {
        return Ok(SimResult {
            host_ms: 0.0,
            hbmw_ms: 0.0,
            pipe_ms: 0.0,
            wb_ms: 0.0,
            total_ms: 0.0,
            throughput_units_per_s: 0.0,
            power_w,
            efficiency: 0.0,
            efficiency_unit: efficiency(profile.kernel, 0.0, profile.flops_per_unit, power_w).1,
        });
    }

    let work_units = profile.work_units as f64;
    let enabled = f64::from(map.enabled_channels());
    let channel_bw = platform.memory.channel_bw_gbps;

    let bytes_in = work_units * profile.bytes_in_per_unit;
    let bytes_out = work_units * profile.bytes_out_per_unit;
    // GB/s moves 1e6 bytes per ms.
    let host_ms = bytes_in / (platform.host_link.read_bw_gbps * 1e6);
    let hbmw_ms = bytes_in / (enabled * channel_bw * 1e6);
    let wb_ms = bytes_out
        / (platform
            .host_link
            .write_bw_gbps
            .min(enabled * channel_bw)
            * 1e6);

    let pipe_ms = pipeline_ms(profile, platform, &map);

    let stages = [host_ms, hbmw_ms, pipe_ms, wb_ms];
    let max_ms = stages.iter().fold(0.0_f64, |acc, s| acc.max(*s));
    let sum_ms: f64 = stages.iter().sum();
    let total_ms = max_ms + (sum_ms - max_ms) / work_units;
    let throughput_units_per_s = work_units * 1e3 / total_ms;

    let (eff, efficiency_unit) = efficiency(
        profile.kernel,
        throughput_units_per_s,
        profile.flops_per_unit,
        power_w,
    );
    Ok(SimResult {
        host_ms,
        hbmw_ms,
        pipe_ms,
        wb_ms,
        total_ms,
        throughput_units_per_s,
        power_w,
        efficiency: eff,
        efficiency_unit,
    })
}

/// PE pipeline stage time.
///
/// Rates are aggregated across PEs before the bottleneck `min` so that the
/// shared DDR4 channel divides out exactly: the aggregate read rate on DDR4
/// is independent of the PE count, which keeps a bandwidth-limited pipeline
/// bit-identical as PEs are added.
fn pipeline_ms(profile: &KernelProfile, platform: &PlatformConfig, map: &ChannelMap) -> f64 {
    let pe_count = f64::from(map.pe_count());
    let work_units = profile.work_units as f64;
    // Divisible work splits exactly; indivisible work pads the last PE's
    // share up to a whole unit.
    let effective_units = if profile.divisible {
        work_units
    } else {
        (work_units / pe_count).ceil() * pe_count
    };

    let channel_bytes_per_s = platform.memory.channel_bw_gbps * 1e9;
    let (agg_read_bytes, agg_write_bytes) = match platform.memory.kind {
        MemoryKind::Hbm => {
            let total = f64::from(map.enabled_channels()) * channel_bytes_per_s;
            (total, total)
        }
        MemoryKind::Ddr4 => (channel_bytes_per_s, channel_bytes_per_s),
    };
    let read_rate = agg_read_bytes / profile.pe_bytes_in_per_unit;
    let write_rate = agg_write_bytes / profile.pe_bytes_out_per_unit;
    let compute_rate = pe_count * platform.clock_mhz * 1e6 / profile.compute_cycles_per_unit;

    let agg_rate = read_rate.min(compute_rate).min(write_rate);
    effective_units / agg_rate * 1e3
}
