use crate::calibration::Calibration;
use crate::error::SimError;
use crate::profile::Kernel;
use crate::sim::{power, simulate};

/// Reported single-PE speedups of the 4-channel configuration over one
/// channel, per kernel, which the default calibration is fitted against.
const MULTI_CHANNEL_TARGETS: [(Kernel, f64); 3] = [
    (Kernel::SneakySnake, 1.4),
    (Kernel::Vadvc, 1.2),
    (Kernel::Hdiff, 1.8),
];
const MULTI_CHANNEL_TOLERANCE: f64 = 0.25;
const DDR4_CONSTANT_TOLERANCE: f64 = 0.05;
const LINEAR_SCALING_TOLERANCE: f64 = 0.10;
/// Reported PE count where the hdiff efficiency curve saturates.
const EFFICIENCY_PEAK_EXPECTED_PES: u32 = 8;
const EFFICIENCY_PEAK_SLACK_PES: u32 = 2;

/// One evaluated trend assertion: what was expected, what the model
/// measured, and whether it passed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrendCheck {
    pub id: String,
    pub description: &'static str,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
}

fn total_ms(
    cal: &Calibration,
    kernel: Kernel,
    platform: &str,
    pes: u32,
    cpp: u32,
) -> Result<f64, SimError> {
    let profile = cal.kernel_profile(kernel)?;
    let platform = cal.platform(platform)?;
    Ok(simulate(&profile, &platform, pes, cpp)?.total_ms)
}

/// At one PE, the DDR4 design beats the HBM design on the same host link:
/// the wider DDR4 channel outruns a single HBM channel.
pub fn ddr4_faster_at_one_pe(cal: &Calibration, kernel: Kernel) -> Result<TrendCheck, SimError> {
    let ddr4 = total_ms(cal, kernel, "DDR4+CAPI2", 1, 1)?;
    let hbm = total_ms(cal, kernel, "HBM+CAPI2", 1, 1)?;
    Ok(TrendCheck {
        id: format!("ddr4-faster-1pe-{kernel}"),
        description: "1-PE DDR4+CAPI2 is faster than 1-PE HBM+CAPI2",
        expected: "DDR4 total < HBM total".to_string(),
        measured: format!("{ddr4:.4} ms vs {hbm:.4} ms"),
        pass: ddr4 < hbm,
    })
}

/// The filter on DDR4 runs in constant time as PEs are added: the shared
/// channel saturates at one PE.
pub fn sneakysnake_ddr4_constant(cal: &Calibration) -> Result<TrendCheck, SimError> {
    let totals: Vec<f64> = (1..=4)
        .map(|pes| total_ms(cal, Kernel::SneakySnake, "DDR4+CAPI2", pes, 1))
        .collect::<Result<_, _>>()?;
    let max = totals.iter().fold(f64::MIN, |a, t| a.max(*t));
    let min = totals.iter().fold(f64::MAX, |a, t| a.min(*t));
    let spread = max / min - 1.0;
    Ok(TrendCheck {
        id: "sneakysnake-ddr4-constant".to_string(),
        description: "sneakysnake on DDR4 is constant across 1-4 PEs",
        expected: format!("spread <= {DDR4_CONSTANT_TOLERANCE:.4}"),
        measured: format!("spread {spread:.6}"),
        pass: spread <= DDR4_CONSTANT_TOLERANCE,
    })
}

/// Stencils scale linearly on HBM with one channel per PE, all the way to
/// the platform's PE cap.
pub fn hbm_linear_scaling(cal: &Calibration, kernel: Kernel) -> Result<TrendCheck, SimError> {
    let platform = cal.platform("HBM+OCAPI")?;
    let cap = platform.pe_caps.for_kernel(kernel);
    let base = total_ms(cal, kernel, "HBM+OCAPI", 1, 1)?;
    let mut worst = 0.0_f64;
    for pes in 1..=cap {
        let total = total_ms(cal, kernel, "HBM+OCAPI", pes, 1)?;
        let deviation = (total * f64::from(pes) / base - 1.0).abs();
        worst = worst.max(deviation);
    }
    Ok(TrendCheck {
        id: format!("hbm-linear-scaling-{kernel}"),
        description: "HBM single-channel time stays within 10% of 1/N scaling",
        expected: format!("worst deviation <= {LINEAR_SCALING_TOLERANCE:.4} up to {cap} PEs"),
        measured: format!("worst deviation {worst:.6}"),
        pass: worst <= LINEAR_SCALING_TOLERANCE,
    })
}

/// Four channels on a single PE speed it up by the reported per-kernel
/// factor, within 25%.
pub fn multi_channel_speedup(cal: &Calibration, kernel: Kernel) -> Result<TrendCheck, SimError> {
    let target = MULTI_CHANNEL_TARGETS
        .iter()
        .find(|(k, _)| *k == kernel)
        .map(|(_, t)| *t)
        .expect("every kernel has a target");
    let single = total_ms(cal, kernel, "HBM+OCAPI", 1, 1)?;
    let multi = total_ms(cal, kernel, "HBM_multi+OCAPI", 1, 4)?;
    let speedup = single / multi;
    let pass = (speedup / target - 1.0).abs() <= MULTI_CHANNEL_TOLERANCE;
    Ok(TrendCheck {
        id: format!("multi-channel-speedup-{kernel}"),
        description: "4-channel single-PE speedup over 1-channel single-PE",
        expected: format!("{target:.2}x within 25%"),
        measured: format!("{speedup:.4}x"),
        pass,
    })
}

/// The best single-channel configuration outperforms the 3-PE x 12-channel
/// configuration: more PEs on dedicated channels beat wider PEs.
pub fn single_channel_beats_multi(
    cal: &Calibration,
    kernel: Kernel,
) -> Result<TrendCheck, SimError> {
    let platform = cal.platform("HBM+OCAPI")?;
    let cap = platform.pe_caps.for_kernel(kernel);
    let mut best_single = f64::MAX;
    for pes in 1..=cap {
        best_single = best_single.min(total_ms(cal, kernel, "HBM+OCAPI", pes, 1)?);
    }
    let multi = total_ms(cal, kernel, "HBM_multi+OCAPI", 3, 4)?;
    Ok(TrendCheck {
        id: format!("single-channel-beats-multi-{kernel}"),
        description: "best single-channel config beats 3 PEs x 12 channels",
        expected: "best single-channel total < multi-channel total".to_string(),
        measured: format!(
            "{best_single:.4} ms vs {multi:.4} ms ({:.2}x)",
            multi / best_single
        ),
        pass: best_single < multi,
    })
}

/// Every enabled HBM channel adds exactly `per_channel_w` to the modeled
/// power, and every PE exactly `per_pe_w`.
pub fn power_step_exact(cal: &Calibration) -> Result<TrendCheck, SimError> {
    let platform = cal.platform("HBM+OCAPI")?;
    let mut exact = true;
    for pes in 1..=4_u32 {
        for cpp in 1..=3_u32 {
            let step = power(&platform, pes, cpp + 1)? - power(&platform, pes, cpp)?;
            if step != f64::from(pes) * platform.power.per_channel_w {
                exact = false;
            }
        }
        let pe_step = power(&platform, pes + 1, 1)?
            - power(&platform, pes, 1)?
            - platform.power.per_channel_w;
        if pe_step != platform.power.per_pe_w {
            exact = false;
        }
    }
    Ok(TrendCheck {
        id: "power-step-exact".to_string(),
        description: "power grows by exactly per_channel_w per enabled channel",
        expected: format!("{:.2} W per channel, exactly", platform.power.per_channel_w),
        measured: if exact {
            "exact".to_string()
        } else {
            "inexact".to_string()
        },
        pass: exact,
    })
}

/// The hdiff efficiency curve on HBM+OCAPI is unimodal with its peak at the
/// reported saturation point.
///
/// Under the default calibration the modeled curve is unimodal but peaks at
/// the 16-PE cap: with the affine power model and the near-linear
/// throughput scaling required by the other trend checks, efficiency is
/// proportional to `P / (static + 1.75 P)`, which increases monotonically.
/// The reported 8-PE saturation implies power terms that grow faster than
/// the per-channel model captures, so this check fails and documents the
/// model's limit.
pub fn hdiff_efficiency_peak(cal: &Calibration) -> Result<TrendCheck, SimError> {
    let profile = cal.kernel_profile(Kernel::Hdiff)?;
    let platform = cal.platform("HBM+OCAPI")?;
    let cap = platform.pe_caps.for_kernel(Kernel::Hdiff);
    let efficiencies: Vec<f64> = (1..=cap)
        .map(|pes| Ok(simulate(&profile, &platform, pes, 1)?.efficiency))
        .collect::<Result<_, SimError>>()?;
    let peak_idx = efficiencies
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("efficiencies are finite"))
        .map(|(idx, _)| idx)
        .expect("cap is at least 1");
    let unimodal = efficiencies.windows(2).enumerate().all(|(idx, pair)| {
        if idx < peak_idx {
            pair[1] >= pair[0]
        } else {
            pair[1] <= pair[0]
        }
    });
    let peak_pes = peak_idx as u32 + 1;
    let pass = unimodal && peak_pes.abs_diff(EFFICIENCY_PEAK_EXPECTED_PES) <= EFFICIENCY_PEAK_SLACK_PES;
    Ok(TrendCheck {
        id: "hdiff-efficiency-peak".to_string(),
        description: "hdiff HBM+OCAPI efficiency is unimodal, peaking at the saturation point",
        expected: format!(
            "unimodal, peak at {EFFICIENCY_PEAK_EXPECTED_PES}±{EFFICIENCY_PEAK_SLACK_PES} PEs"
        ),
        measured: format!(
            "{}, peak at {peak_pes} PEs",
            if unimodal { "unimodal" } else { "not unimodal" }
        ),
        pass,
    })
}

/// Runs the whole trend suite in a fixed order.
pub fn run_trend_checks(cal: &Calibration) -> Result<Vec<TrendCheck>, SimError> {
    let mut checks = Vec::new();
    for kernel in Kernel::ALL {
        checks.push(ddr4_faster_at_one_pe(cal, kernel)?);
    }
    checks.push(sneakysnake_ddr4_constant(cal)?);
    for kernel in [Kernel::Vadvc, Kernel::Hdiff] {
        checks.push(hbm_linear_scaling(cal, kernel)?);
    }
    for kernel in Kernel::ALL {
        checks.push(multi_channel_speedup(cal, kernel)?);
    }
    for kernel in [Kernel::Vadvc, Kernel::Hdiff] {
        checks.push(single_channel_beats_multi(cal, kernel)?);
    }
    checks.push(power_step_exact(cal)?);
    checks.push(hdiff_efficiency_peak(cal)?);
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_calibration_passes_every_trend_but_the_efficiency_peak() {
        let cal = Calibration::default_calibration();
        let checks = run_trend_checks(&cal).unwrap();
        assert_eq!(checks.len(), 13);
        for check in &checks {
            if check.id == "hdiff-efficiency-peak" {
                assert!(!check.pass, "{}: {}", check.id, check.measured);
            } else {
                assert!(check.pass, "{}: {}", check.id, check.measured);
            }
        }
    }

    #[test]
    fn efficiency_peak_sits_at_the_pe_cap() {
        let cal = Calibration::default_calibration();
        let check = hdiff_efficiency_peak(&cal).unwrap();
        assert_eq!(check.measured, "unimodal, peak at 16 PEs");
    }

    #[test]
    fn multi_channel_speedups_are_near_their_targets() {
        let cal = Calibration::default_calibration();
        for (kernel, target) in MULTI_CHANNEL_TARGETS {
            let check = multi_channel_speedup(&cal, kernel).unwrap();
            assert!(check.pass, "{kernel}: {} (target {target})", check.measured);
        }
    }

    #[test]
    fn moving_the_peak_into_range_breaks_linear_scaling() {
        // A host link slow enough to saturate hdiff throughput around 8 PEs
        // puts the efficiency peak in the expected window, but the same
        // saturation destroys the linear-scaling trend. With affine power,
        // the two expectations cannot hold at once, which is why the
        // efficiency-peak check fails under the default calibration.
        let text = format!(
            "{}\nplatform.HBM+OCAPI.host_read_bw_gbps = 5.85\n",
            crate::calibration::DEFAULT_CALIBRATION
        );
        let cal = Calibration::parse(&text).unwrap();
        let peak = hdiff_efficiency_peak(&cal).unwrap();
        assert!(peak.pass, "peak check: {}", peak.measured);
        let scaling = hbm_linear_scaling(&cal, Kernel::Hdiff).unwrap();
        assert!(!scaling.pass, "scaling check: {}", scaling.measured);
    }
}
