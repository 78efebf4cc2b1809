use proptest::prelude::*;
use roofline::{
    attainable_gflops, place_kernels, roofline_preset, BoundClass, KernelPlacement,
    RooflinePlatform,
};
use weather_stencils::{
    hdiff_reference_instrumented, vadvc_instrumented, Grid3D, GridDims, KernelCounters,
};
use workloads_io::generate_vadvc_fields;

fn instrumented_placements() -> Vec<KernelPlacement> {
    let hdiff_dims = GridDims::new(16, 16, 8, 2);
    let input = Grid3D::from_fn(hdiff_dims, |i, j, k| {
        ((i * 7 + j * 13 + k * 3) % 29) as f32 * 0.25 - 3.0
    })
    .unwrap();
    let coeff = Grid3D::from_fn(hdiff_dims, |i, j, k| {
        0.05 + ((i + 2 * j + 5 * k) % 11) as f32 * 0.01
    })
    .unwrap();
    let (_, hdiff_counters) = hdiff_reference_instrumented(&input, &coeff).unwrap();

    let fields = generate_vadvc_fields(GridDims::new(12, 12, 16, 1), 11).unwrap();
    let (_, vadvc_counters) = vadvc_instrumented(&fields).unwrap();

    // A pre-alignment pass over 512 pairs of length 100: roughly one symbol
    // comparison per base, reading both sequences once.
    let filter_counters = KernelCounters {
        flops: 512 * 100,
        bytes_read: 2 * 512 * 100,
        bytes_written: 512,
    };

    vec![
        KernelPlacement {
            kernel: "hdiff".to_owned(),
            counters: hdiff_counters,
            measured_gflops: None,
        },
        KernelPlacement {
            kernel: "vadvc".to_owned(),
            counters: vadvc_counters,
            measured_gflops: None,
        },
        KernelPlacement {
            kernel: "sneakysnake".to_owned(),
            counters: filter_counters,
            measured_gflops: None,
        },
    ]
}

#[test]
fn counted_kernels_land_memory_bound_on_the_cpu_preset() {
    let platform = roofline_preset("power9_like").unwrap();
    let placements = instrumented_placements();
    let rows = place_kernels(&placements, &platform, "dram").unwrap();
    assert_eq!(rows.len(), 3);
    let ridge = platform.ridge_flops_per_byte("dram").unwrap();
    for row in &rows {
        assert_eq!(
            row.bound_class,
            BoundClass::Memory,
            "{} has intensity {} against ridge {ridge}",
            row.kernel,
            row.ai_flops_per_byte
        );
        assert!(row.ai_flops_per_byte < 1.0, "stencil streams stay lean");
        assert!(!row.calibration_warning);
    }
}

#[test]
fn placement_rows_match_an_independent_recomputation() {
    let platform = roofline_preset("power9_like").unwrap();
    let placements = instrumented_placements();
    let rows = place_kernels(&placements, &platform, "dram").unwrap();
    for (row, placement) in rows.iter().zip(&placements) {
        let bytes = placement.counters.bytes_read + placement.counters.bytes_written;
        let ai = placement.counters.flops as f64 / bytes as f64;
        assert_eq!(row.ai_flops_per_byte, ai);
        let line = ai * 140.0;
        let expected = if line < 500.0 { line } else { 500.0 };
        assert_eq!(row.attainable_gflops, expected);
        assert_eq!(
            row.attainable_gflops,
            attainable_gflops(ai, &platform, "dram").unwrap()
        );
    }
}

fn arb_platform() -> impl Strategy<Value = RooflinePlatform> {
    (1..10_000u32, 1..20_000u32).prop_map(|(peak, deci_bw)| RooflinePlatform {
        name: "generated",
        peak_compute_gflops: f64::from(peak),
        bandwidths: vec![("mem", f64::from(deci_bw) / 10.0)],
    })
}

proptest! {
    #[test]
    fn attainable_is_monotone_and_capped(
        platform in arb_platform(),
        lo in 1e-6..1e6f64,
        factor in 1.0..1e6f64,
    ) {
        let hi = lo * factor;
        let at_lo = attainable_gflops(lo, &platform, "mem").unwrap();
        let at_hi = attainable_gflops(hi, &platform, "mem").unwrap();
        prop_assert!(at_lo <= at_hi);
        prop_assert!(at_hi <= platform.peak_compute_gflops);
        prop_assert!(at_lo > 0.0);
    }

    #[test]
    fn below_the_ridge_the_bandwidth_roof_binds(
        platform in arb_platform(),
        ai in 1e-6..1e6f64,
    ) {
        let ridge = platform.ridge_flops_per_byte("mem").unwrap();
        let attainable = attainable_gflops(ai, &platform, "mem").unwrap();
        let bandwidth = platform.bandwidth_gbps("mem").unwrap();
        if ai < ridge {
            prop_assert_eq!(attainable, ai * bandwidth);
        } else {
            prop_assert_eq!(attainable, platform.peak_compute_gflops);
        }
    }
}
