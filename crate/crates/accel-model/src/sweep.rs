use std::ops::RangeInclusive;

use crate::error::SimError;
use crate::platform::PlatformConfig;
use crate::profile::{Kernel, KernelProfile};
use crate::sim::{simulate, SimResult};

/// One sweep configuration and its outcome. Invalid configurations keep
/// their identity fields and carry the error instead of a result.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub kernel: Kernel,
    pub platform: &'static str,
    pub pe_count: u32,
    pub channels_per_pe: u32,
    pub outcome: Result<SimResult, SimError>,
}

/// Evaluates `profile` on every platform for every PE count in `pe_range`,
/// in platform order then ascending PE count.
///
/// `channels_per_pe` of `None` uses each platform's default. Configurations
/// that fail (over the channel budget or the kernel's PE cap) become error
/// rows and the sweep continues.
pub fn sweep(
    profile: &KernelProfile,
    platforms: &[PlatformConfig],
    pe_range: RangeInclusive<u32>,
    channels_per_pe: Option<u32>,
) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for platform in platforms {
        let cpp = channels_per_pe.unwrap_or(platform.default_channels_per_pe);
        for pe_count in pe_range.clone() {
            rows.push(SweepRow {
                kernel: profile.kernel,
                platform: platform.name,
                pe_count,
                channels_per_pe: cpp,
                outcome: simulate(profile, platform, pe_count, cpp),
            });
        }
    }
    rows
}
