//! Compound weather-model kernels on structured 3D grids.
//!
//! Two kernels with opposite data-movement characters:
//!
//! * [`hdiff_reference`] / [`hdiff_optimized`] apply horizontal diffusion
//!   (a five-point Laplacian with a monotonic flux limiter) independently
//!   per depth level, so the optimized form parallelizes freely over
//!   levels and row blocks while staying bitwise equal to the reference.
//! * [`vadvc`] / [`vadvc_parallel`] perform an implicit vertical advection
//!   step: each column yields a diagonally dominant tridiagonal system,
//!   assembled in double precision and solved with [`thomas_solve`].
//!
//! Every kernel has an instrumented variant reporting [`KernelCounters`]:
//! flops, bytes read and bytes written under a flat per-access cost model,
//! the quantities performance models downstream consume.

mod counters;
mod error;
mod grid;
mod hdiff;
mod thomas;
mod vadvc;

pub use counters::KernelCounters;
pub use error::StencilError;
pub use grid::{Element, Grid3D, GridDims};
pub use hdiff::{
    hdiff_optimized, hdiff_optimized_instrumented, hdiff_reference, hdiff_reference_instrumented,
};
pub use thomas::{thomas_solve, thomas_solve_instrumented, tridiagonal_residual};
pub use vadvc::{
    vadvc, vadvc_instrumented, vadvc_parallel, vadvc_parallel_instrumented, VadvcFields,
};
