use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Range, Sub};

use crate::error::StencilError;

/// Scalar element a grid can hold. Implemented for `f32` and `f64`.
pub trait Element:
    Copy
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Element width in bytes, the unit the byte counters use.
    const WIDTH: u64;
    const ZERO: Self;
    const FOUR: Self;

    fn finite(self) -> bool;
    fn to_f64(self) -> f64;
    fn from_f64(v: f64) -> Self;
}

impl Element for f32 {
    const WIDTH: u64 = 4;
    const ZERO: Self = 0.0;
    const FOUR: Self = 4.0;

    fn finite(self) -> bool {
        self.is_finite()
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

impl Element for f64 {
    const WIDTH: u64 = 8;
    const ZERO: Self = 0.0;
    const FOUR: Self = 4.0;

    fn finite(self) -> bool {
        self.is_finite()
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn from_f64(v: f64) -> Self {
        v
    }
}

/// Grid extents: `i` rows, `j` columns, `k` depth levels, plus the halo
/// width applied to the row and column dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridDims {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub halo: usize,
}

impl GridDims {
    pub fn new(i: usize, j: usize, k: usize, halo: usize) -> Self {
        Self { i, j, k, halo }
    }

    pub fn point_count(&self) -> usize {
        self.i * self.j * self.k
    }

    /// Row range of the interior (halo excluded).
    pub fn interior_i(&self) -> Range<usize> {
        self.halo..self.i - self.halo
    }

    /// Column range of the interior (halo excluded).
    pub fn interior_j(&self) -> Range<usize> {
        self.halo..self.j - self.halo
    }

    pub fn interior_point_count(&self) -> usize {
        (self.i - 2 * self.halo) * (self.j - 2 * self.halo) * self.k
    }

    fn validate(&self) -> Result<(), StencilError> {
        let ok = self.k >= 1 && self.i > 2 * self.halo && self.j > 2 * self.halo;
        if ok {
            Ok(())
        } else {
            Err(StencilError::InteriorEmpty { dims: *self })
        }
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{} halo {}", self.i, self.j, self.k, self.halo)
    }
}

/// Dense 3D grid of finite floating values.
///
/// Storage is k-major: depth planes are contiguous, each laid out row-major
/// in (i, j), so `idx = (k * I + i) * J + j`. The halo applies to the row
/// and column dimensions only; every depth level is fully owned.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid3D<T> {
    dims: GridDims,
    data: Vec<T>,
}

impl<T: Element> Grid3D<T> {
    /// Grid filled with one value.
    pub fn filled(dims: GridDims, value: T) -> Result<Self, StencilError> {
        dims.validate()?;
        if !value.finite() {
            return Err(StencilError::NonFinite { i: 0, j: 0, k: 0 });
        }
        Ok(Self {
            dims,
            data: vec![value; dims.point_count()],
        })
    }

    /// Grid built point by point in storage order.
    pub fn from_fn(
        dims: GridDims,
        mut f: impl FnMut(usize, usize, usize) -> T,
    ) -> Result<Self, StencilError> {
        dims.validate()?;
        let mut data = Vec::with_capacity(dims.point_count());
        for k in 0..dims.k {
            for i in 0..dims.i {
                for j in 0..dims.j {
                    let v = f(i, j, k);
                    if !v.finite() {
                        return Err(StencilError::NonFinite { i, j, k });
                    }
                    data.push(v);
                }
            }
        }
        Ok(Self { dims, data })
    }

    /// Grid adopting a raw value buffer already in storage order.
    pub fn from_raw(dims: GridDims, data: Vec<T>) -> Result<Self, StencilError> {
        dims.validate()?;
        if data.len() != dims.point_count() {
            return Err(StencilError::DataLenMismatch {
                dims,
                expected: dims.point_count(),
                got: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|v| !v.finite()) {
            let j = pos % dims.j;
            let i = (pos / dims.j) % dims.i;
            let k = pos / (dims.i * dims.j);
            return Err(StencilError::NonFinite { i, j, k });
        }
        Ok(Self { dims, data })
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dims.i && j < self.dims.j && k < self.dims.k);
        (k * self.dims.i + i) * self.dims.j + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> T {
        self.data[self.idx(i, j, k)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: T) {
        let idx = self.idx(i, j, k);
        self.data[idx] = value;
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    /// Backing values in storage order.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    /// Number of values in one depth plane.
    pub fn plane_len(&self) -> usize {
        self.dims.i * self.dims.j
    }
}

impl Grid3D<f32> {
    /// Lossless copy widened to 64-bit elements.
    pub fn widened(&self) -> Grid3D<f64> {
        Grid3D {
            dims: self.dims,
            data: self.data.iter().map(|&v| v as f64).collect(),
        }
    }
}
