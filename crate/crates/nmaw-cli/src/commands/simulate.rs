use std::fs;
use std::path::{Path, PathBuf};

use accel_model::{sweep, Calibration, Kernel, SweepRow, TrendCheck};
use clap::Args;
use workloads_io::{write_csv, Field};

use crate::args::parse_pe_range;
use crate::error::CliError;

pub const SWEEP_HEADER: [&str; 12] = [
    "kernel",
    "platform",
    "pe_count",
    "channels_per_pe",
    "host_ms",
    "hbmw_ms",
    "pipe_ms",
    "wb_ms",
    "total_ms",
    "throughput",
    "power_w",
    "efficiency",
];

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Kernel to sweep: sneakysnake, vadvc, or hdiff.
    #[arg(long, value_name = "KERNEL")]
    kernel: String,
    /// Restrict the sweep to one platform preset; default is all of them.
    #[arg(long, value_name = "NAME")]
    platform: Option<String>,
    /// Inclusive PE range, e.g. 1..14, or a single count.
    #[arg(long, default_value = "1..16", value_name = "LO..HI")]
    pes: String,
    /// Channels per PE; defaults to each platform's own figure.
    #[arg(long, value_name = "N")]
    channels_per_pe: Option<u32>,
    /// Calibration file overriding the built-in profiles and platforms.
    #[arg(long, value_name = "PATH")]
    calibration: Option<PathBuf>,
    /// Directory the CSV outputs are written into.
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

pub fn load_calibration(path: Option<&Path>) -> Result<Calibration, CliError> {
    match path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|err| {
                CliError::Input(format!("cannot read {}: {err}", path.display()))
            })?;
            Ok(Calibration::parse(&text)?)
        }
        None => Ok(Calibration::default_calibration()),
    }
}

pub fn execute(args: &SimulateArgs) -> Result<(), CliError> {
    let kernel: Kernel = args
        .kernel
        .parse()
        .map_err(|err: accel_model::SimError| CliError::Input(err.to_string()))?;
    let range = parse_pe_range(&args.pes)?;
    let cal = load_calibration(args.calibration.as_deref())?;

    let platforms = match &args.platform {
        Some(name) => vec![cal.platform(name)?],
        None => cal.platforms()?.into_values().collect(),
    };

    let profile = cal.kernel_profile(kernel)?;
    let rows = sweep(&profile, &platforms, range, args.channels_per_pe);

    fs::create_dir_all(&args.out)?;
    let path = args.out.join(sweep_file_name(kernel));
    write_csv(&path, &SWEEP_HEADER, &sweep_rows_to_csv(&rows))?;
    println!("wrote {} sweep rows to {}", rows.len(), path.display());

    let checks = accel_model::run_trend_checks(&cal)?;
    print_trend_checks(&checks);
    Ok(())
}

pub fn sweep_file_name(kernel: Kernel) -> String {
    format!("sweep_{}.csv", kernel.name())
}

pub fn sweep_rows_to_csv(rows: &[SweepRow]) -> Vec<Vec<Field>> {
    rows.iter()
        .map(|row| {
            let mut cells = vec![
                Field::Str(row.kernel.name().into()),
                Field::Str(row.platform.into()),
                Field::UInt(u64::from(row.pe_count)),
                Field::UInt(u64::from(row.channels_per_pe)),
            ];
            match &row.outcome {
                Ok(result) => {
                    cells.extend([
                        Field::Float(result.host_ms),
                        Field::Float(result.hbmw_ms),
                        Field::Float(result.pipe_ms),
                        Field::Float(result.wb_ms),
                        Field::Float(result.total_ms),
                        Field::Float(result.throughput_units_per_s),
                        Field::Float(result.power_w),
                        Field::Float(result.efficiency),
                    ]);
                }
                Err(_) => cells.extend(std::iter::repeat(Field::Empty).take(8)),
            }
            cells
        })
        .collect()
}

pub fn print_trend_checks(checks: &[TrendCheck]) {
    for check in checks {
        println!(
            "trend {}: {} measured {} (expected {})",
            check.id,
            if check.pass { "PASS" } else { "FAIL" },
            check.measured,
            check.expected,
        );
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!("{passed}/{} trend checks passed", checks.len());
}
