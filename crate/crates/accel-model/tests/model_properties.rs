use accel_model::{
    platform_preset, power, simulate, Kernel, KernelProfile, StreamWidthConverter,
};
use proptest::prelude::*;

fn arb_profile() -> impl Strategy<Value = KernelProfile> {
    (
        1..200_000u64,
        1..2048u32,
        1..2048u32,
        1..2048u32,
        1..2048u32,
        1..10_000u32,
        any::<bool>(),
    )
        .prop_map(|(work, b_in, b_out, pe_in, pe_out, centicycles, divisible)| {
            KernelProfile {
                kernel: Kernel::Hdiff,
                work_units: work,
                bytes_in_per_unit: f64::from(b_in),
                bytes_out_per_unit: f64::from(b_out),
                pe_bytes_in_per_unit: f64::from(pe_in),
                pe_bytes_out_per_unit: f64::from(pe_out),
                compute_cycles_per_unit: f64::from(centicycles) / 100.0,
                flops_per_unit: 46.0,
                divisible,
            }
        })
}

fn arb_preset_name() -> impl Strategy<Value = &'static str> {
    prop_oneof![
        Just("HBM+OCAPI"),
        Just("HBM+CAPI2"),
        Just("DDR4+CAPI2"),
        Just("HBM_multi+OCAPI"),
    ]
}

proptest! {
    #[test]
    fn simulate_is_deterministic(
        profile in arb_profile(),
        name in arb_preset_name(),
        pes in 1..=3u32,
    ) {
        let platform = platform_preset(name).unwrap();
        let cpp = platform.default_channels_per_pe;
        let first = simulate(&profile, &platform, pes, cpp).unwrap();
        let second = simulate(&profile, &platform, pes, cpp).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn total_time_sits_between_bottleneck_and_serial_sum(
        profile in arb_profile(),
        name in arb_preset_name(),
        pes in 1..=3u32,
    ) {
        let platform = platform_preset(name).unwrap();
        let result = simulate(&profile, &platform, pes, 1).unwrap();
        let stages = result.stage_times_ms();
        let max = stages.iter().fold(0.0_f64, |a, s| a.max(*s));
        let sum: f64 = stages.iter().sum();
        prop_assert!(result.total_ms >= max);
        prop_assert!(result.total_ms <= sum * (1.0 + 1e-12));
    }

    #[test]
    fn hbm_total_time_never_increases_with_more_pes(
        mut profile in arb_profile(),
    ) {
        profile.divisible = true;
        let platform = platform_preset("HBM+OCAPI").unwrap();
        let totals: Vec<f64> = (1..=16u32)
            .map(|pes| simulate(&profile, &platform, pes, 1).unwrap().total_ms)
            .collect();
        for window in totals.windows(2) {
            prop_assert!(
                window[1] <= window[0] * (1.0 + 1e-12),
                "total went up: {} -> {}",
                window[0],
                window[1]
            );
        }
    }

    #[test]
    fn ddr4_bandwidth_bound_kernels_see_zero_gain_from_extra_pes(
        mut profile in arb_profile(),
        pe_in in 13_000..100_000u32,
    ) {
        // With this much traffic per unit the single shared channel is the
        // pipeline bottleneck at every PE count, so each stage time must be
        // bit-identical from 1 PE through the cap.
        profile.divisible = true;
        profile.pe_bytes_in_per_unit = f64::from(pe_in);
        let platform = platform_preset("DDR4+CAPI2").unwrap();
        let base = simulate(&profile, &platform, 1, 1).unwrap();
        for pes in 2..=8u32 {
            let result = simulate(&profile, &platform, pes, 1).unwrap();
            prop_assert_eq!(result.stage_times_ms(), base.stage_times_ms());
            prop_assert_eq!(result.total_ms, base.total_ms);
            prop_assert_eq!(result.throughput_units_per_s, base.throughput_units_per_s);
        }
    }

    #[test]
    fn power_strictly_increases_with_pes_and_channels(
        name in arb_preset_name(),
        pes in 1..=7u32,
        cpp in 1..=2u32,
    ) {
        let platform = platform_preset(name).unwrap();
        if let (Ok(base), Ok(more_pes)) = (
            power(&platform, pes, cpp),
            power(&platform, pes + 1, cpp),
        ) {
            prop_assert!(more_pes > base);
        }
        if let (Ok(base), Ok(more_channels)) = (
            power(&platform, pes, cpp),
            power(&platform, pes, cpp + 1),
        ) {
            match platform.memory.kind {
                accel_model::MemoryKind::Hbm => prop_assert!(more_channels > base),
                accel_model::MemoryKind::Ddr4 => prop_assert_eq!(more_channels, base),
            }
        }
    }

    #[test]
    fn width_conversion_conserves_bytes(chunks in prop::collection::vec(0..5_000u64, 0..40)) {
        let mut converter = StreamWidthConverter::new(256, 1024);
        let mut emitted = 0;
        for chunk in &chunks {
            emitted += converter.push(*chunk);
            prop_assert_eq!(emitted % 128, 0);
        }
        emitted += converter.finish();
        let pushed: u64 = chunks.iter().sum();
        prop_assert_eq!(emitted, pushed);
        prop_assert_eq!(converter.bytes_in(), converter.bytes_out());
        prop_assert_eq!(converter.bytes_in(), pushed);
    }
}
