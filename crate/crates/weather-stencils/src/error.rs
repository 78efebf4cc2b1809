use crate::grid::GridDims;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum StencilError {
    #[error("grid {dims} has an empty interior: I and J must exceed 2*halo and all dims must be positive")]
    InteriorEmpty { dims: GridDims },
    #[error("data length {got} does not match grid {dims} ({expected} values)")]
    DataLenMismatch {
        dims: GridDims,
        expected: usize,
        got: usize,
    },
    #[error("non-finite value at ({i}, {j}, {k})")]
    NonFinite { i: usize, j: usize, k: usize },
    #[error("halo {halo} too small: the stencil reaches {required} points outward")]
    HaloTooSmall { halo: usize, required: usize },
    #[error("grid dims differ: {left} vs {right}")]
    DimsMismatch { left: GridDims, right: GridDims },
    #[error("near-zero pivot at level {level} (column {column:?})")]
    SingularPivot {
        level: usize,
        column: Option<(usize, usize)>,
    },
    #[error("system at column {column:?} is not strictly diagonally dominant at level {level}")]
    NotDiagonallyDominant { column: (usize, usize), level: usize },
    #[error("inverse time step must be positive and finite, got {value}")]
    NonPositiveTimeStep { value: f64 },
}
