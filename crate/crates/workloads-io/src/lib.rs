//! Workload ingestion and synthesis shared by the filter, stencil and
//! model layers: pair-file parsing, seeded pair generation with planted
//! edits, seeded grid and field generation, the `NMAWG1` binary grid
//! format, and deterministic CSV emission.
//!
//! All generators draw from ChaCha8 seeded through the u64 expansion, so
//! any batch or grid is reproducible from its parameters and seed alone.

mod csv;
mod error;
mod grid_file;
mod grids;
mod pairs;

pub use csv::{format_float, write_csv, Field};
pub use error::WorkloadError;
pub use grid_file::{read_grid, write_grid, GridData, GridValue};
pub use grids::{generate_grid, generate_vadvc_fields, UniformValues, DEFAULT_DTR_INV};
pub use pairs::{
    generate_pairs, parse_pairs, parse_pairs_reader, write_pairs, EditProfile,
};

pub use genomics_filter::{DnaSequence, SequencePair, SequencePairBatch};
