use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use weather_stencils::{
    hdiff_optimized_instrumented, hdiff_reference_instrumented, tridiagonal_residual,
    vadvc_instrumented, vadvc_parallel_instrumented, Element, Grid3D, GridDims, KernelCounters,
    VadvcFields,
};
use workloads_io::{generate_grid, generate_vadvc_fields, write_csv, Field, UniformValues};

use crate::args::{parse_grid, resolve_seed};
use crate::error::CliError;

pub const COUNTERS_FILE: &str = "stencil_counters.csv";
pub const TIMINGS_FILE: &str = "stencil_timings.csv";
pub const COUNTERS_HEADER: [&str; 10] = [
    "kernel",
    "i",
    "j",
    "k",
    "halo",
    "workers",
    "flops",
    "bytes_read",
    "bytes_written",
    "check",
];

/// Test hook: when set to `1`, one interior cell of the optimized output is
/// perturbed before the equivalence check, which must then fail.
pub const CORRUPT_ENV: &str = "NMAW_TEST_CORRUPT_OPTIMIZED";

/// Largest relative residual a solved vertical-advection column may leave.
pub const RESIDUAL_BOUND: f64 = 1e-10;

#[derive(Args, Debug)]
pub struct StencilArgs {
    /// Stencil to run.
    #[arg(long, value_enum)]
    kernel: StencilKernel,
    /// Grid spec: I,J,K,halo[,seed].
    #[arg(long, default_value = "64,64,16,2", value_name = "SPEC")]
    grid: String,
    /// Worker threads for the optimized variant.
    #[arg(long, default_value_t = 2)]
    workers: usize,
    /// Directory the CSV outputs are written into.
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StencilKernel {
    Hdiff,
    Vadvc,
}

impl StencilKernel {
    pub fn name(&self) -> &'static str {
        match self {
            StencilKernel::Hdiff => "hdiff",
            StencilKernel::Vadvc => "vadvc",
        }
    }
}

pub struct StencilOutcome {
    pub kernel: StencilKernel,
    pub dims: GridDims,
    pub workers: usize,
    pub counters: KernelCounters,
    pub reference_ms: f64,
    pub optimized_ms: f64,
    pub check: &'static str,
    pub failure: Option<String>,
}

impl StencilOutcome {
    pub fn counters_row(&self) -> Vec<Field> {
        vec![
            Field::Str(self.kernel.name().into()),
            Field::UInt(self.dims.i as u64),
            Field::UInt(self.dims.j as u64),
            Field::UInt(self.dims.k as u64),
            Field::UInt(self.dims.halo as u64),
            Field::UInt(self.workers as u64),
            Field::UInt(self.counters.flops),
            Field::UInt(self.counters.bytes_read),
            Field::UInt(self.counters.bytes_written),
            Field::Str(self.check.into()),
        ]
    }
}

pub fn execute(args: &StencilArgs) -> Result<(), CliError> {
    let spec = parse_grid(&args.grid)?;
    let seed = resolve_seed(spec.seed)?;
    let outcome = run_stencil(args.kernel, spec.dims, seed, args.workers)?;

    fs::create_dir_all(&args.out)?;
    write_csv(
        &args.out.join(COUNTERS_FILE),
        &COUNTERS_HEADER,
        &[outcome.counters_row()],
    )?;
    write_timings(&args.out, &[&outcome])?;

    println!(
        "{} on {}x{}x{} (halo {}): reference {:.1} ms, optimized {:.1} ms with {} workers",
        outcome.kernel.name(),
        outcome.dims.i,
        outcome.dims.j,
        outcome.dims.k,
        outcome.dims.halo,
        outcome.reference_ms,
        outcome.optimized_ms,
        outcome.workers,
    );
    match &outcome.failure {
        None => {
            println!("equivalence check ({}) passed", outcome.check);
            Ok(())
        }
        Some(reason) => Err(CliError::Verification(reason.clone())),
    }
}

pub fn write_timings(out: &Path, outcomes: &[&StencilOutcome]) -> Result<(), CliError> {
    let rows: Vec<Vec<Field>> = outcomes
        .iter()
        .flat_map(|outcome| {
            [
                vec![
                    Field::Str(outcome.kernel.name().into()),
                    Field::Str("reference".into()),
                    Field::Float(outcome.reference_ms),
                ],
                vec![
                    Field::Str(outcome.kernel.name().into()),
                    Field::Str("optimized".into()),
                    Field::Float(outcome.optimized_ms),
                ],
            ]
        })
        .collect();
    write_csv(&out.join(TIMINGS_FILE), &["kernel", "variant", "wall_ms"], &rows)?;
    Ok(())
}

/// Runs the reference and optimized variants of one stencil on seeded
/// inputs and checks that they agree: bitwise for both kernels, plus a
/// per-column residual bound for vertical advection.
pub fn run_stencil(
    kernel: StencilKernel,
    dims: GridDims,
    seed: u64,
    workers: usize,
) -> Result<StencilOutcome, CliError> {
    match kernel {
        StencilKernel::Hdiff => run_hdiff(dims, seed, workers),
        StencilKernel::Vadvc => run_vadvc(dims, seed, workers),
    }
}

fn run_hdiff(dims: GridDims, seed: u64, workers: usize) -> Result<StencilOutcome, CliError> {
    let input = generate_grid(dims, seed, UniformValues::new(-3.0, 3.0)?)?;
    let coeff = generate_grid(dims, seed.wrapping_add(1), UniformValues::new(0.05, 0.25)?)?;

    let started = Instant::now();
    let (reference, counters) = hdiff_reference_instrumented(&input, &coeff)?;
    let reference_ms = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let (mut optimized, _) = hdiff_optimized_instrumented(&input, &coeff, workers)?;
    let optimized_ms = started.elapsed().as_secs_f64() * 1e3;

    corrupt_if_requested(&mut optimized, 1.0);
    let failure = first_divergence(&reference, &optimized).map(|(i, j, k)| {
        format!("optimized hdiff diverges from the reference at ({i}, {j}, {k})")
    });

    Ok(StencilOutcome {
        kernel: StencilKernel::Hdiff,
        dims,
        workers,
        counters,
        reference_ms,
        optimized_ms,
        check: "bitwise",
        failure,
    })
}

fn run_vadvc(dims: GridDims, seed: u64, workers: usize) -> Result<StencilOutcome, CliError> {
    let fields = generate_vadvc_fields(dims, seed)?;

    let started = Instant::now();
    let (reference, counters) = vadvc_instrumented(&fields)?;
    let reference_ms = started.elapsed().as_secs_f64() * 1e3;

    let started = Instant::now();
    let (mut optimized, _) = vadvc_parallel_instrumented(&fields, workers)?;
    let optimized_ms = started.elapsed().as_secs_f64() * 1e3;

    corrupt_if_requested(&mut optimized, 1.0);
    let failure = first_divergence(&reference, &optimized)
        .map(|(i, j, k)| {
            format!("parallel vadvc diverges from the serial run at ({i}, {j}, {k})")
        })
        .or_else(|| worst_column_residual(&fields, &optimized));

    Ok(StencilOutcome {
        kernel: StencilKernel::Vadvc,
        dims,
        workers,
        counters,
        reference_ms,
        optimized_ms,
        check: "bitwise+residual",
        failure,
    })
}

fn corrupt_if_requested<T: Element>(grid: &mut Grid3D<T>, delta: T) {
    if env::var(CORRUPT_ENV).as_deref() == Ok("1") {
        let dims = grid.dims();
        let (i, j) = (dims.halo, dims.halo);
        grid.set(i, j, 0, grid.get(i, j, 0) + delta);
    }
}

fn first_divergence<T: Element>(
    reference: &Grid3D<T>,
    optimized: &Grid3D<T>,
) -> Option<(usize, usize, usize)> {
    let dims = reference.dims();
    for k in 0..dims.k {
        for i in 0..dims.i {
            for j in 0..dims.j {
                if reference.get(i, j, k) != optimized.get(i, j, k) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Checks every interior column of a solved vertical-advection grid against
/// its own tridiagonal system; reports the first column whose scaled
/// residual exceeds [`RESIDUAL_BOUND`].
fn worst_column_residual(fields: &VadvcFields, solved: &Grid3D<f64>) -> Option<String> {
    let dims = fields.dims();
    for i in dims.interior_i() {
        for j in dims.interior_j() {
            let (a, b, c, d) = fields.column_system(i, j);
            let x: Vec<f64> = (0..dims.k).map(|k| solved.get(i, j, k)).collect();
            let residual = tridiagonal_residual(&a, &b, &c, &d, &x);
            let scale = d.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
            let relative = residual / scale;
            if relative > RESIDUAL_BOUND {
                return Some(format!(
                    "vadvc column ({i}, {j}) leaves relative residual {relative:.3e}, \
                     over the {RESIDUAL_BOUND:.0e} bound"
                ));
            }
        }
    }
    None
}
