use std::fs;
use std::path::Path;

use weather_stencils::{Element, Grid3D, GridDims};

use crate::error::WorkloadError;

const MAGIC: &[u8; 6] = b"NMAWG1";
const HEADER_LEN: usize = 6 + 5 * 4;

/// Grid element that can cross the file boundary losslessly.
pub trait GridValue: Element {
    fn push_le(self, buf: &mut Vec<u8>);
    fn read_le(bytes: &[u8]) -> Self;
}

impl GridValue for f32 {
    fn push_le(self, buf: &mut Vec<u8>) {
        buf.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        f32::from_le_bytes(bytes.try_into().unwrap())
    }
}

impl GridValue for f64 {
    fn push_le(self, buf: &mut Vec<u8>) {
        buf.extend_from_slice(&self.to_le_bytes());
    }

    fn read_le(bytes: &[u8]) -> Self {
        f64::from_le_bytes(bytes.try_into().unwrap())
    }
}

/// A grid read back from a file, tagged by element width.
#[derive(Debug, Clone, PartialEq)]
pub enum GridData {
    F32(Grid3D<f32>),
    F64(Grid3D<f64>),
}

impl GridData {
    pub fn dims(&self) -> GridDims {
        match self {
            GridData::F32(g) => g.dims(),
            GridData::F64(g) => g.dims(),
        }
    }
}

/// Writes a grid: `NMAWG1` magic, five little-endian u32 header words
/// (I, J, K, halo, element width in bytes), then raw little-endian values
/// in storage order.
pub fn write_grid<T: GridValue>(grid: &Grid3D<T>, path: &Path) -> Result<(), WorkloadError> {
    let dims = grid.dims();
    let mut buf = Vec::with_capacity(HEADER_LEN + grid.data().len() * T::WIDTH as usize);
    buf.extend_from_slice(MAGIC);
    for word in [
        dims.i as u32,
        dims.j as u32,
        dims.k as u32,
        dims.halo as u32,
        T::WIDTH as u32,
    ] {
        buf.extend_from_slice(&word.to_le_bytes());
    }
    for &v in grid.data() {
        v.push_le(&mut buf);
    }
    fs::write(path, buf)?;
    Ok(())
}

/// Reads a grid written by [`write_grid`], dispatching on the recorded
/// element width.
pub fn read_grid(path: &Path) -> Result<GridData, WorkloadError> {
    let bad = |reason: &str| WorkloadError::BadGridFile {
        path: path.display().to_string(),
        reason: reason.to_string(),
    };
    let bytes = fs::read(path)?;
    if bytes.len() < HEADER_LEN || &bytes[..6] != MAGIC {
        return Err(bad("missing NMAWG1 header"));
    }
    let word = |idx: usize| -> usize {
        let at = 6 + 4 * idx;
        u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap()) as usize
    };
    let dims = GridDims::new(word(0), word(1), word(2), word(3));
    let width = word(4);
    let payload = &bytes[HEADER_LEN..];
    let expected = dims.point_count().checked_mul(width);
    if expected != Some(payload.len()) {
        return Err(bad("payload length does not match declared dims"));
    }
    match width {
        4 => {
            let values = payload.chunks_exact(4).map(f32::read_le).collect();
            Ok(GridData::F32(Grid3D::from_raw(dims, values)?))
        }
        8 => {
            let values = payload.chunks_exact(8).map(f64::read_le).collect();
            Ok(GridData::F64(Grid3D::from_raw(dims, values)?))
        }
        _ => Err(bad("element width must be 4 or 8")),
    }
}
