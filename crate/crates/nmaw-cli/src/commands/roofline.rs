use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use genomics_filter::{filter_pair_instrumented, FilterCounters};
use roofline::{place_kernels, roofline_preset, KernelPlacement, PlacementRow};
use weather_stencils::{
    hdiff_reference_instrumented, vadvc_instrumented, GridDims, KernelCounters,
};
use workloads_io::{
    generate_grid, generate_pairs, generate_vadvc_fields, write_csv, EditProfile, Field,
    UniformValues,
};

use crate::args::resolve_seed;
use crate::error::CliError;

pub const ROOFLINE_FILE: &str = "roofline.csv";
pub const ROOFLINE_HEADER: [&str; 6] = [
    "kernel",
    "ai_flops_per_byte",
    "measured_gflops",
    "attainable_gflops",
    "bound_class",
    "bandwidth_label",
];

#[derive(Args, Debug)]
pub struct RooflineArgs {
    /// Roofline platform preset.
    #[arg(long, default_value = "power9_like", value_name = "NAME")]
    platform: String,
    /// Directory the CSV outputs are written into.
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

pub fn execute(args: &RooflineArgs) -> Result<(), CliError> {
    let seed = resolve_seed(None)?;
    let rows = run_roofline(&args.platform, seed, &args.out)?;
    for row in &rows {
        println!(
            "{}: ai {:.4} flops/B, attainable {:.1} GFLOPS, {}-bound under the {} roof",
            row.kernel,
            row.ai_flops_per_byte,
            row.attainable_gflops,
            row.bound_class,
            row.bandwidth_label,
        );
        if row.calibration_warning {
            eprintln!(
                "warning: {} measured above the attainable line; counters or platform figures look off",
                row.kernel
            );
        }
    }
    Ok(())
}

/// Instruments all three kernels at desk scale, places them under the named
/// preset's primary bandwidth roof, and writes the placement CSV.
pub fn run_roofline(
    platform_name: &str,
    seed: u64,
    out: &Path,
) -> Result<Vec<PlacementRow>, CliError> {
    let platform = roofline_preset(platform_name)?;
    let placements = desk_scale_placements(seed)?;
    let rows = place_kernels(&placements, &platform, platform.primary_bandwidth_label())?;

    fs::create_dir_all(out)?;
    let csv_rows: Vec<Vec<Field>> = rows
        .iter()
        .map(|row| {
            vec![
                Field::Str(row.kernel.clone()),
                Field::Float(row.ai_flops_per_byte),
                match row.measured_gflops {
                    Some(gflops) => Field::Float(gflops),
                    None => Field::Empty,
                },
                Field::Float(row.attainable_gflops),
                Field::Str(row.bound_class.as_str().into()),
                Field::Str(row.bandwidth_label.into()),
            ]
        })
        .collect();
    write_csv(&out.join(ROOFLINE_FILE), &ROOFLINE_HEADER, &csv_rows)?;
    Ok(rows)
}

/// Counts each kernel's work on a small fixed workload. Measured GFLOPS are
/// left unset: wall-clock figures would vary run to run, and the placement
/// needs only the counted intensity.
fn desk_scale_placements(seed: u64) -> Result<Vec<KernelPlacement>, CliError> {
    let pairs = generate_pairs(512, 100, &EditProfile::mixed(2), seed.wrapping_add(3));
    let mut filter_counters = FilterCounters::default();
    for pair in pairs.pairs() {
        let (_, counters) = filter_pair_instrumented(pair, 2)?;
        filter_counters.add(&counters);
    }

    let hdiff_dims = GridDims::new(16, 16, 8, 2);
    let input = generate_grid(hdiff_dims, seed, UniformValues::new(-3.0, 3.0)?)?;
    let coeff = generate_grid(
        hdiff_dims,
        seed.wrapping_add(1),
        UniformValues::new(0.05, 0.25)?,
    )?;
    let (_, hdiff_counters) = hdiff_reference_instrumented(&input, &coeff)?;

    let fields = generate_vadvc_fields(GridDims::new(12, 12, 16, 1), seed.wrapping_add(2))?;
    let (_, vadvc_counters) = vadvc_instrumented(&fields)?;

    Ok(vec![
        KernelPlacement {
            kernel: "sneakysnake".into(),
            counters: KernelCounters {
                flops: filter_counters.symbol_compares,
                bytes_read: filter_counters.bytes_read,
                bytes_written: filter_counters.bytes_written,
            },
            measured_gflops: None,
        },
        KernelPlacement {
            kernel: "vadvc".into(),
            counters: vadvc_counters,
            measured_gflops: None,
        },
        KernelPlacement {
            kernel: "hdiff".into(),
            counters: hdiff_counters,
            measured_gflops: None,
        },
    ])
}
