use std::collections::BTreeMap;

use crate::error::SimError;
use crate::platform::{platform_preset, platform_presets, PlatformConfig};
use crate::profile::{Kernel, KernelProfile};

/// The calibration text compiled into the crate; `Calibration::default_calibration`
/// parses exactly this file.
pub const DEFAULT_CALIBRATION: &str = include_str!("../default.cal");

const KERNEL_FIELDS: [&str; 8] = [
    "work_units",
    "bytes_in_per_unit",
    "bytes_out_per_unit",
    "pe_bytes_in_per_unit",
    "pe_bytes_out_per_unit",
    "compute_cycles_per_unit",
    "flops_per_unit",
    "divisible",
];

const PLATFORM_FIELDS: [&str; 7] = [
    "host_read_bw_gbps",
    "host_write_bw_gbps",
    "channel_bw_gbps",
    "clock_mhz",
    "static_w",
    "per_channel_w",
    "per_pe_w",
];

/// Parsed flat `key = value` calibration: kernel profiles plus optional
/// platform overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    entries: BTreeMap<String, String>,
}

impl Calibration {
    /// Parses calibration text: `#` comments, blank lines, and one
    /// `key = value` entry per line. Keys must be known, and duplicates are
    /// rejected.
    pub fn parse(text: &str) -> Result<Self, SimError> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let line_no = idx + 1;
            let Some((key, value)) = line.split_once('=') else {
                return Err(SimError::CalibrationSyntax {
                    line_no,
                    line: line.to_string(),
                });
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(SimError::CalibrationSyntax {
                    line_no,
                    line: line.to_string(),
                });
            }
            check_known_key(&key)?;
            if entries.insert(key.clone(), value).is_some() {
                return Err(SimError::CalibrationValue {
                    key,
                    reason: format!("duplicated on line {line_no}"),
                });
            }
        }
        Ok(Self { entries })
    }

    /// The calibration shipped with the crate.
    pub fn default_calibration() -> Self {
        Self::parse(DEFAULT_CALIBRATION).expect("embedded calibration parses")
    }

    fn require(&self, key: &str) -> Result<&str, SimError> {
        self.entries
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| SimError::MissingCalibrationKey {
                key: key.to_string(),
            })
    }

    fn require_f64(&self, key: &str) -> Result<f64, SimError> {
        let raw = self.require(key)?;
        raw.parse().map_err(|_| SimError::CalibrationValue {
            key: key.to_string(),
            reason: format!("`{raw}` is not a number"),
        })
    }

    fn require_u64(&self, key: &str) -> Result<u64, SimError> {
        let raw = self.require(key)?;
        raw.parse().map_err(|_| SimError::CalibrationValue {
            key: key.to_string(),
            reason: format!("`{raw}` is not a non-negative integer"),
        })
    }

    fn require_bool(&self, key: &str) -> Result<bool, SimError> {
        match self.require(key)? {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(SimError::CalibrationValue {
                key: key.to_string(),
                reason: format!("`{other}` is not `true` or `false`"),
            }),
        }
    }

    fn optional_f64(&self, key: &str) -> Result<Option<f64>, SimError> {
        if self.entries.contains_key(key) {
            self.require_f64(key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Builds the profile of `kernel` from this calibration.
    pub fn kernel_profile(&self, kernel: Kernel) -> Result<KernelProfile, SimError> {
        let key = |field: &str| format!("{kernel}.{field}");
        let profile = KernelProfile {
            kernel,
            work_units: self.require_u64(&key("work_units"))?,
            bytes_in_per_unit: self.require_f64(&key("bytes_in_per_unit"))?,
            bytes_out_per_unit: self.require_f64(&key("bytes_out_per_unit"))?,
            pe_bytes_in_per_unit: self.require_f64(&key("pe_bytes_in_per_unit"))?,
            pe_bytes_out_per_unit: self.require_f64(&key("pe_bytes_out_per_unit"))?,
            compute_cycles_per_unit: self.require_f64(&key("compute_cycles_per_unit"))?,
            flops_per_unit: self.require_f64(&key("flops_per_unit"))?,
            divisible: self.require_bool(&key("divisible"))?,
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Looks up a platform preset and applies any overrides from this
    /// calibration.
    pub fn platform(&self, name: &str) -> Result<PlatformConfig, SimError> {
        let mut platform = platform_preset(name)?;
        let key = |field: &str| format!("platform.{name}.{field}");
        if let Some(v) = self.optional_f64(&key("host_read_bw_gbps"))? {
            platform.host_link.read_bw_gbps = v;
        }
        if let Some(v) = self.optional_f64(&key("host_write_bw_gbps"))? {
            platform.host_link.write_bw_gbps = v;
        }
        if let Some(v) = self.optional_f64(&key("channel_bw_gbps"))? {
            platform.memory.channel_bw_gbps = v;
        }
        if let Some(v) = self.optional_f64(&key("clock_mhz"))? {
            platform.clock_mhz = v;
        }
        if let Some(v) = self.optional_f64(&key("static_w"))? {
            platform.power.static_w = v;
        }
        if let Some(v) = self.optional_f64(&key("per_channel_w"))? {
            platform.power.per_channel_w = v;
        }
        if let Some(v) = self.optional_f64(&key("per_pe_w"))? {
            platform.power.per_pe_w = v;
        }
        platform.validate()?;
        Ok(platform)
    }

    /// All platform presets with this calibration's overrides applied.
    pub fn platforms(&self) -> Result<BTreeMap<&'static str, PlatformConfig>, SimError> {
        platform_presets()
            .into_keys()
            .map(|name| Ok((name, self.platform(name)?)))
            .collect()
    }
}

fn check_known_key(key: &str) -> Result<(), SimError> {
    let unknown = || SimError::CalibrationValue {
        key: key.to_string(),
        reason: "unrecognized key".to_string(),
    };
    if let Some(rest) = key.strip_prefix("platform.") {
        let Some((name, field)) = rest.rsplit_once('.') else {
            return Err(unknown());
        };
        platform_preset(name)?;
        if PLATFORM_FIELDS.contains(&field) {
            return Ok(());
        }
        return Err(unknown());
    }
    let Some((kernel, field)) = key.split_once('.') else {
        return Err(unknown());
    };
    kernel.parse::<Kernel>()?;
    if KERNEL_FIELDS.contains(&field) {
        Ok(())
    } else {
        Err(unknown())
    }
}
