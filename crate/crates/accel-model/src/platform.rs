use std::collections::BTreeMap;

use crate::error::SimError;
use crate::profile::Kernel;

/// Coherent host link between CPU memory and the accelerator card.
#[derive(Debug, Clone, PartialEq)]
pub struct HostLink {
    pub name: &'static str,
    pub bitwidth_bits: u32,
    pub read_bw_gbps: f64,
    pub write_bw_gbps: f64,
}

/// Device memory technology of a platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemoryKind {
    Hbm,
    Ddr4,
}

/// Device-side memory system.
#[derive(Debug, Clone, PartialEq)]
pub struct MemoryConfig {
    pub kind: MemoryKind,
    pub usable_channels: u32,
    pub channel_bitwidth_bits: u32,
    pub channel_bw_gbps: f64,
    /// Datasheet transfer-rate range, informational only; the model works
    /// entirely in effective GB/s.
    pub transfer_rate_note: &'static str,
}

/// Affine power model: a card baseline plus a cost per enabled memory
/// channel and per instantiated PE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerModel {
    pub static_w: f64,
    pub per_channel_w: f64,
    pub per_pe_w: f64,
}

/// Largest PE count that fits per kernel, encoding place-and-route limits
/// as data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeCaps {
    pub sneakysnake: u32,
    pub vadvc: u32,
    pub hdiff: u32,
}

impl PeCaps {
    pub fn for_kernel(self, kernel: Kernel) -> u32 {
        match kernel {
            Kernel::SneakySnake => self.sneakysnake,
            Kernel::Vadvc => self.vadvc,
            Kernel::Hdiff => self.hdiff,
        }
    }
}

/// One accelerator platform: host link, device memory, clock, power model
/// and per-kernel PE caps.
#[derive(Debug, Clone, PartialEq)]
pub struct PlatformConfig {
    pub name: &'static str,
    pub host_link: HostLink,
    pub memory: MemoryConfig,
    pub clock_mhz: f64,
    pub power: PowerModel,
    pub pe_caps: PeCaps,
    /// Channels fetched in parallel by one PE unless overridden per run.
    pub default_channels_per_pe: u32,
}

impl PlatformConfig {
    /// Checks the positivity invariants the stage model divides by.
    pub fn validate(&self) -> Result<(), SimError> {
        let positives = [
            ("host_read_bw_gbps", self.host_link.read_bw_gbps),
            ("host_write_bw_gbps", self.host_link.write_bw_gbps),
            ("channel_bw_gbps", self.memory.channel_bw_gbps),
            ("clock_mhz", self.clock_mhz),
        ];
        for (field, value) in positives {
            if !(value.is_finite() && value > 0.0) {
                return Err(SimError::CalibrationValue {
                    key: format!("platform.{}.{field}", self.name),
                    reason: format!("must be finite and positive, got {value}"),
                });
            }
        }
        if self.memory.usable_channels == 0 {
            return Err(SimError::CalibrationValue {
                key: format!("platform.{}.usable_channels", self.name),
                reason: "must be at least 1".to_string(),
            });
        }
        Ok(())
    }
}

const DEFAULT_POWER: PowerModel = PowerModel {
    static_w: 2.0,
    per_channel_w: 1.0,
    per_pe_w: 0.75,
};

const HBM_MEMORY: MemoryConfig = MemoryConfig {
    kind: MemoryKind::Hbm,
    usable_channels: 16,
    channel_bitwidth_bits: 256,
    channel_bw_gbps: 12.8,
    transfer_rate_note: "0.8-2.1 GT/s",
};

const DDR4_MEMORY: MemoryConfig = MemoryConfig {
    kind: MemoryKind::Ddr4,
    usable_channels: 1,
    channel_bitwidth_bits: 512,
    channel_bw_gbps: 25.6,
    transfer_rate_note: "2.1-4.3 GT/s",
};

const OCAPI: HostLink = HostLink {
    name: "OCAPI",
    bitwidth_bits: 1024,
    read_bw_gbps: 22.1,
    write_bw_gbps: 22.0,
};

const CAPI2: HostLink = HostLink {
    name: "CAPI2",
    bitwidth_bits: 512,
    read_bw_gbps: 13.9,
    write_bw_gbps: 14.0,
};

/// The four modeled platforms, keyed by name.
pub fn platform_presets() -> BTreeMap<&'static str, PlatformConfig> {
    let hbm_ocapi = PlatformConfig {
        name: "HBM+OCAPI",
        host_link: OCAPI,
        memory: HBM_MEMORY,
        clock_mhz: 250.0,
        power: DEFAULT_POWER,
        pe_caps: PeCaps {
            sneakysnake: 12,
            vadvc: 14,
            hdiff: 16,
        },
        default_channels_per_pe: 1,
    };
    let hbm_capi2 = PlatformConfig {
        name: "HBM+CAPI2",
        host_link: CAPI2,
        clock_mhz: 200.0,
        memory: HBM_MEMORY,
        power: DEFAULT_POWER,
        pe_caps: hbm_ocapi.pe_caps,
        default_channels_per_pe: 1,
    };
    let ddr4_capi2 = PlatformConfig {
        name: "DDR4+CAPI2",
        host_link: CAPI2,
        memory: DDR4_MEMORY,
        clock_mhz: 200.0,
        power: DEFAULT_POWER,
        pe_caps: PeCaps {
            sneakysnake: 4,
            vadvc: 4,
            hdiff: 8,
        },
        default_channels_per_pe: 1,
    };
    let hbm_multi_ocapi = PlatformConfig {
        name: "HBM_multi+OCAPI",
        pe_caps: PeCaps {
            sneakysnake: 3,
            vadvc: 3,
            hdiff: 3,
        },
        default_channels_per_pe: 4,
        ..hbm_ocapi.clone()
    };
    [hbm_ocapi, hbm_capi2, ddr4_capi2, hbm_multi_ocapi]
        .into_iter()
        .map(|p| (p.name, p))
        .collect()
}

/// Looks up one preset by name.
pub fn platform_preset(name: &str) -> Result<PlatformConfig, SimError> {
    platform_presets()
        .remove(name)
        .ok_or_else(|| SimError::UnknownPlatform {
            name: name.to_string(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_carry_the_reference_figures() {
        let presets = platform_presets();
        assert_eq!(presets.len(), 4);

        let hbm = &presets["HBM+OCAPI"];
        assert_eq!(hbm.host_link.read_bw_gbps, 22.1);
        assert_eq!(hbm.host_link.write_bw_gbps, 22.0);
        assert_eq!(hbm.host_link.bitwidth_bits, 1024);
        assert_eq!(hbm.clock_mhz, 250.0);
        assert_eq!(hbm.memory.usable_channels, 16);
        assert_eq!(hbm.memory.channel_bitwidth_bits, 256);
        assert_eq!(hbm.memory.channel_bw_gbps, 12.8);
        assert_eq!(hbm.memory.transfer_rate_note, "0.8-2.1 GT/s");
        assert_eq!(hbm.pe_caps.for_kernel(Kernel::SneakySnake), 12);
        assert_eq!(hbm.pe_caps.for_kernel(Kernel::Vadvc), 14);
        assert_eq!(hbm.pe_caps.for_kernel(Kernel::Hdiff), 16);

        let capi2 = &presets["HBM+CAPI2"];
        assert_eq!(capi2.host_link.read_bw_gbps, 13.9);
        assert_eq!(capi2.host_link.write_bw_gbps, 14.0);
        assert_eq!(capi2.host_link.bitwidth_bits, 512);
        assert_eq!(capi2.clock_mhz, 200.0);

        let ddr4 = &presets["DDR4+CAPI2"];
        assert_eq!(ddr4.memory.channel_bw_gbps, 25.6);
        assert_eq!(ddr4.memory.usable_channels, 1);
        assert_eq!(ddr4.memory.channel_bitwidth_bits, 512);
        assert_eq!(ddr4.memory.transfer_rate_note, "2.1-4.3 GT/s");
        assert_eq!(ddr4.pe_caps.for_kernel(Kernel::SneakySnake), 4);
        assert_eq!(ddr4.pe_caps.for_kernel(Kernel::Vadvc), 4);
        assert_eq!(ddr4.pe_caps.for_kernel(Kernel::Hdiff), 8);

        let multi = &presets["HBM_multi+OCAPI"];
        assert_eq!(multi.default_channels_per_pe, 4);
        assert_eq!(multi.pe_caps.for_kernel(Kernel::Hdiff), 3);
        assert_eq!(multi.clock_mhz, 250.0);

        for platform in presets.values() {
            platform.validate().unwrap();
        }
    }

    #[test]
    fn per_channel_power_step_is_one_watt() {
        for platform in platform_presets().values() {
            assert_eq!(platform.power.per_channel_w, 1.0);
        }
    }

    #[test]
    fn unknown_preset_is_an_error() {
        assert!(matches!(
            platform_preset("HBM3+PCIE"),
            Err(SimError::UnknownPlatform { name }) if name == "HBM3+PCIE"
        ));
    }
}
