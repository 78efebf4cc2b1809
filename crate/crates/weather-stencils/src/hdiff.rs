use rayon::prelude::*;

use crate::counters::KernelCounters;
use crate::error::StencilError;
use crate::grid::{Element, Grid3D};

/// The flux limiter looks one point past the Laplacian neighborhood.
const REQUIRED_HALO: usize = 2;

/// Rows per block in the optimized plane traversal.
const BLOCK_ROWS: usize = 32;

#[inline]
fn read<T: Element>(g: &Grid3D<T>, i: usize, j: usize, k: usize, n: &mut KernelCounters) -> T {
    n.bytes_read += T::WIDTH;
    g.get(i, j, k)
}

/// Five-point Laplacian: 5 flops, 5 element reads.
#[inline]
fn laplacian<T: Element>(g: &Grid3D<T>, i: usize, j: usize, k: usize, n: &mut KernelCounters) -> T {
    n.flops += 5;
    T::FOUR * read(g, i, j, k, n)
        - (read(g, i - 1, j, k, n)
            + read(g, i + 1, j, k, n)
            + read(g, i, j - 1, k, n)
            + read(g, i, j + 1, k, n))
}

/// Laplacian difference with the monotonic limiter: the flux is zeroed when
/// it points up the local gradient. 4 flops including the compare-select.
#[inline]
fn limited_flux<T: Element>(lap_hi: T, lap_lo: T, val_hi: T, val_lo: T, n: &mut KernelCounters) -> T {
    n.flops += 4;
    let flux = lap_hi - lap_lo;
    if flux * (val_hi - val_lo) > T::ZERO {
        T::ZERO
    } else {
        flux
    }
}

/// Diffused value at one interior point. Every run variant funnels through
/// this single expression order, which is what makes reference and
/// optimized outputs bitwise identical.
#[inline]
fn point_update<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
    i: usize,
    j: usize,
    k: usize,
    n: &mut KernelCounters,
) -> T {
    let lap_c = laplacian(input, i, j, k, n);
    let lap_im = laplacian(input, i - 1, j, k, n);
    let lap_ip = laplacian(input, i + 1, j, k, n);
    let lap_jm = laplacian(input, i, j - 1, k, n);
    let lap_jp = laplacian(input, i, j + 1, k, n);

    let flx_c = limited_flux(
        lap_ip,
        lap_c,
        read(input, i + 1, j, k, n),
        read(input, i, j, k, n),
        n,
    );
    let flx_m = limited_flux(
        lap_c,
        lap_im,
        read(input, i, j, k, n),
        read(input, i - 1, j, k, n),
        n,
    );
    let fly_c = limited_flux(
        lap_jp,
        lap_c,
        read(input, i, j + 1, k, n),
        read(input, i, j, k, n),
        n,
    );
    let fly_m = limited_flux(
        lap_c,
        lap_jm,
        read(input, i, j, k, n),
        read(input, i, j - 1, k, n),
        n,
    );

    n.flops += 5;
    let divergence = ((flx_c - flx_m) + fly_c) - fly_m;
    read(input, i, j, k, n) - read(coeff, i, j, k, n) * divergence
}

fn check_inputs<T: Element>(input: &Grid3D<T>, coeff: &Grid3D<T>) -> Result<(), StencilError> {
    if input.dims() != coeff.dims() {
        return Err(StencilError::DimsMismatch {
            left: input.dims(),
            right: coeff.dims(),
        });
    }
    if input.dims().halo < REQUIRED_HALO {
        return Err(StencilError::HaloTooSmall {
            halo: input.dims().halo,
            required: REQUIRED_HALO,
        });
    }
    Ok(())
}

fn diffuse_plane<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
    k: usize,
    out_plane: &mut [T],
    n: &mut KernelCounters,
) {
    let dims = input.dims();
    for i in dims.interior_i() {
        for j in dims.interior_j() {
            let v = point_update(input, coeff, i, j, k, n);
            n.bytes_written += T::WIDTH;
            out_plane[i * dims.j + j] = v;
        }
    }
}

fn diffuse_plane_blocked<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
    k: usize,
    out_plane: &mut [T],
    n: &mut KernelCounters,
) {
    let dims = input.dims();
    let rows = dims.interior_i();
    let mut block_start = rows.start;
    while block_start < rows.end {
        let block_end = (block_start + BLOCK_ROWS).min(rows.end);
        for i in block_start..block_end {
            for j in dims.interior_j() {
                let v = point_update(input, coeff, i, j, k, n);
                n.bytes_written += T::WIDTH;
                out_plane[i * dims.j + j] = v;
            }
        }
        block_start = block_end;
    }
}

/// Horizontal diffusion, straightforward serial evaluation.
///
/// Applies the limited Laplacian-flux update to every interior point of
/// every depth level; the output halo is copied from the input.
pub fn hdiff_reference<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
) -> Result<Grid3D<T>, StencilError> {
    hdiff_reference_instrumented(input, coeff).map(|(out, _)| out)
}

/// Serial horizontal diffusion with work counters.
pub fn hdiff_reference_instrumented<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
) -> Result<(Grid3D<T>, KernelCounters), StencilError> {
    check_inputs(input, coeff)?;
    let mut out = input.clone();
    let plane_len = input.plane_len();
    let mut counters = KernelCounters::default();
    for (k, plane) in out.data_mut().chunks_mut(plane_len).enumerate() {
        diffuse_plane(input, coeff, k, plane, &mut counters);
    }
    Ok((out, counters))
}

/// Horizontal diffusion parallelized over depth levels, row-blocked within
/// each level. Bitwise identical to [`hdiff_reference`] for any worker
/// count because both run the same per-point expression.
pub fn hdiff_optimized<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
    workers: usize,
) -> Result<Grid3D<T>, StencilError> {
    hdiff_optimized_instrumented(input, coeff, workers).map(|(out, _)| out)
}

/// Parallel horizontal diffusion with work counters. The counters equal the
/// reference run's exactly: blocking and scheduling change traversal order,
/// not the work done per point.
pub fn hdiff_optimized_instrumented<T: Element>(
    input: &Grid3D<T>,
    coeff: &Grid3D<T>,
    workers: usize,
) -> Result<(Grid3D<T>, KernelCounters), StencilError> {
    check_inputs(input, coeff)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build stencil thread pool");

    let mut out = input.clone();
    let plane_len = input.plane_len();
    let counters = pool.install(|| {
        out.data_mut()
            .par_chunks_mut(plane_len)
            .enumerate()
            .map(|(k, plane)| {
                let mut local = KernelCounters::default();
                diffuse_plane_blocked(input, coeff, k, plane, &mut local);
                local
            })
            .reduce(KernelCounters::default, |mut acc, c| {
                acc.add(&c);
                acc
            })
    });
    Ok((out, counters))
}
