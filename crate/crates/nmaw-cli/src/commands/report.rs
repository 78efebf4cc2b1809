use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use accel_model::{sweep, Kernel, TrendCheck};
use clap::Args;
use roofline::BoundClass;
use weather_stencils::GridDims;
use workloads_io::{generate_pairs, write_csv, EditProfile, Field};

use crate::args::resolve_seed;
use crate::commands::{filter, roofline as roofline_cmd, simulate, stencil};
use crate::error::CliError;

pub const REPORT_FILE: &str = "report.md";
pub const TRENDS_FILE: &str = "trends.csv";

const FILTER_PAIRS: usize = 2000;
const FILTER_LENGTH: usize = 100;
const FILTER_EDITS: usize = 5;
const FILTER_THRESHOLD: usize = 5;
const REPORT_WORKERS: usize = 2;

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Directory the report and its CSV bundle are written into.
    #[arg(long, default_value = "report", value_name = "DIR")]
    out: PathBuf,
    /// Calibration file overriding the built-in profiles and platforms.
    #[arg(long, value_name = "PATH")]
    calibration: Option<PathBuf>,
}

struct ReportCheck {
    name: String,
    passed: bool,
    detail: String,
}

pub fn execute(args: &ReportArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let seed = resolve_seed(None)?;
    fs::create_dir_all(&args.out)?;
    let mut checks: Vec<ReportCheck> = Vec::new();
    let mut md = String::new();

    let _ = writeln!(md, "# Near-memory workloads report\n");
    let _ = writeln!(
        md,
        "Seed {seed}; calibration {}.\n",
        match &args.calibration {
            Some(path) => format!("from {}", path.display()),
            None => "built-in defaults".to_string(),
        }
    );

    println!("running filter sample ({FILTER_PAIRS} pairs)");
    let batch = generate_pairs(
        FILTER_PAIRS,
        FILTER_LENGTH,
        &EditProfile::mixed(FILTER_EDITS),
        seed,
    );
    let filter_outcome = filter::run_filter(&batch, FILTER_THRESHOLD, REPORT_WORKERS, &args.out)?;
    checks.push(ReportCheck {
        name: "filter-clean-run".into(),
        passed: filter_outcome.errors == 0,
        detail: format!("{} per-pair errors", filter_outcome.errors),
    });
    let _ = writeln!(md, "## Pre-alignment filter\n");
    let _ = writeln!(
        md,
        "{} pairs of length {FILTER_LENGTH} at edit threshold {FILTER_THRESHOLD} with \
         {REPORT_WORKERS} workers: {} accepted ({:.1}%), {} rejected, {} errors.",
        filter_outcome.pairs,
        filter_outcome.accepted,
        filter_outcome.accept_rate * 100.0,
        filter_outcome.rejected,
        filter_outcome.errors,
    );
    let _ = writeln!(
        md,
        "Wall time {:.1} ms ({:.3} Mseq/s). Outputs: `{}`, `{}`.\n",
        filter_outcome.wall_ms,
        filter_outcome.mseq_per_s,
        filter::DECISIONS_FILE,
        filter::STATS_FILE,
    );

    println!("running stencil equivalence checks");
    let hdiff = stencil::run_stencil(
        stencil::StencilKernel::Hdiff,
        GridDims::new(64, 64, 16, 2),
        seed,
        REPORT_WORKERS,
    )?;
    let vadvc = stencil::run_stencil(
        stencil::StencilKernel::Vadvc,
        GridDims::new(32, 32, 32, 1),
        seed,
        REPORT_WORKERS,
    )?;
    write_csv(
        &args.out.join(stencil::COUNTERS_FILE),
        &stencil::COUNTERS_HEADER,
        &[hdiff.counters_row(), vadvc.counters_row()],
    )?;
    let _ = writeln!(md, "## Stencil equivalence\n");
    let _ = writeln!(
        md,
        "| kernel | grid | check | result | reference ms | optimized ms |\n|---|---|---|---|---|---|"
    );
    for outcome in [&hdiff, &vadvc] {
        let _ = writeln!(
            md,
            "| {} | {}x{}x{} halo {} | {} | {} | {:.1} | {:.1} |",
            outcome.kernel.name(),
            outcome.dims.i,
            outcome.dims.j,
            outcome.dims.k,
            outcome.dims.halo,
            outcome.check,
            match &outcome.failure {
                None => "pass".to_string(),
                Some(reason) => format!("FAIL: {reason}"),
            },
            outcome.reference_ms,
            outcome.optimized_ms,
        );
        checks.push(ReportCheck {
            name: format!("{}-equivalence", outcome.kernel.name()),
            passed: outcome.failure.is_none(),
            detail: outcome
                .failure
                .clone()
                .unwrap_or_else(|| "variants agree".into()),
        });
    }
    let _ = writeln!(md, "\nCounters: `{}`.\n", stencil::COUNTERS_FILE);

    println!("running simulator sweeps");
    let cal = simulate::load_calibration(args.calibration.as_deref())?;
    let platforms: Vec<_> = cal.platforms()?.into_values().collect();
    let _ = writeln!(md, "## Simulator sweeps\n");
    let _ = writeln!(md, "| kernel | rows | file |\n|---|---|---|");
    for kernel in Kernel::ALL {
        let profile = cal.kernel_profile(kernel)?;
        let rows = sweep(&profile, &platforms, 1..=16, None);
        let name = simulate::sweep_file_name(kernel);
        write_csv(
            &args.out.join(&name),
            &simulate::SWEEP_HEADER,
            &simulate::sweep_rows_to_csv(&rows),
        )?;
        let _ = writeln!(md, "| {} | {} | `{name}` |", kernel.name(), rows.len());
    }
    let _ = writeln!(
        md,
        "\nEach sweep covers every platform preset at 1 through 16 PEs with the \
         platform's default channels per PE; configurations past a hard PE cap or \
         the channel budget keep their identity columns and leave the numeric \
         cells empty.\n"
    );

    println!("running trend checks");
    let trend_checks = accel_model::run_trend_checks(&cal)?;
    write_trends_csv(&args.out.join(TRENDS_FILE), &trend_checks)?;
    let _ = writeln!(md, "## Trend checks\n");
    let _ = writeln!(
        md,
        "| check | expected | measured | result |\n|---|---|---|---|"
    );
    for check in &trend_checks {
        let _ = writeln!(
            md,
            "| {} | {} | {} | {} |",
            check.id,
            check.expected,
            check.measured,
            if check.pass { "pass" } else { "FAIL" },
        );
        checks.push(ReportCheck {
            name: format!("trend-{}", check.id),
            passed: check.pass,
            detail: format!("measured {} (expected {})", check.measured, check.expected),
        });
    }
    let _ = writeln!(md, "\nFull table: `{TRENDS_FILE}`.\n");

    println!("placing kernels on the roofline");
    let roofline_rows = roofline_cmd::run_roofline("power9_like", seed, &args.out)?;
    let _ = writeln!(md, "## Roofline (power9_like)\n");
    let _ = writeln!(
        md,
        "| kernel | ai flops/B | attainable GFLOPS | bound |\n|---|---|---|---|"
    );
    for row in &roofline_rows {
        let _ = writeln!(
            md,
            "| {} | {:.4} | {:.1} | {} |",
            row.kernel, row.ai_flops_per_byte, row.attainable_gflops, row.bound_class,
        );
    }
    let all_memory_bound = roofline_rows
        .iter()
        .all(|row| row.bound_class == BoundClass::Memory);
    checks.push(ReportCheck {
        name: "roofline-memory-bound".into(),
        passed: all_memory_bound,
        detail: "all kernels sit left of the ridge on the CPU preset".into(),
    });
    let _ = writeln!(md, "\nFull table: `{}`.\n", roofline_cmd::ROOFLINE_FILE);

    let passed = checks.iter().filter(|c| c.passed).count();
    let failing: Vec<&ReportCheck> = checks.iter().filter(|c| !c.passed).collect();
    let _ = writeln!(md, "## Verdict\n");
    let _ = writeln!(md, "{passed} of {} checks passed.", checks.len());
    for check in &failing {
        let _ = writeln!(md, "- FAIL {}: {}", check.name, check.detail);
    }
    let _ = writeln!(
        md,
        "\nTotal runtime {:.1} s.",
        started.elapsed().as_secs_f64()
    );
    fs::write(args.out.join(REPORT_FILE), md)?;

    println!(
        "report: {passed}/{} checks passed; see {}",
        checks.len(),
        args.out.join(REPORT_FILE).display()
    );
    if failing.is_empty() {
        Ok(())
    } else {
        let names: Vec<&str> = failing.iter().map(|c| c.name.as_str()).collect();
        Err(CliError::Verification(format!(
            "{} of {} report checks failed: {}",
            failing.len(),
            checks.len(),
            names.join(", ")
        )))
    }
}

fn write_trends_csv(path: &std::path::Path, checks: &[TrendCheck]) -> Result<(), CliError> {
    let rows: Vec<Vec<Field>> = checks
        .iter()
        .map(|check| {
            vec![
                Field::Str(check.id.clone()),
                Field::Str(check.description.into()),
                Field::Str(check.expected.clone()),
                Field::Str(check.measured.clone()),
                Field::Str(check.pass.to_string()),
            ]
        })
        .collect();
    write_csv(
        path,
        &["id", "description", "expected", "measured", "pass"],
        &rows,
    )?;
    Ok(())
}
