//! Pre-alignment filter for equal-length DNA sequence pairs.
//!
//! Given a reference/query pair and an edit threshold `E`, the filter
//! builds a binary obstacle maze over the `2E + 1` alignment diagonals and
//! walks it greedily ([`snake_search`]), counting the obstacles it must
//! cross. A pair is rejected only when that count exceeds `E`; because the
//! count never overstates the true edit distance, rejection is exact while
//! acceptance still needs verification (see [`edit_distance_banded`]).
//!
//! The filter is exhaustive over the batch and embarrassingly parallel:
//! [`filter_batch`] fans pairs out over a thread pool and returns decisions
//! in input order. [`filter_pair_instrumented`] additionally reports the
//! symbol comparisons and byte traffic a pair cost, which downstream
//! performance models consume.

mod banded;
mod error;
mod filter;
mod maze;
mod search;
mod sequence;

pub use banded::edit_distance_banded;
pub use error::FilterError;
pub use filter::{filter_batch, filter_pair, filter_pair_instrumented, BatchStats, FilterCounters};
pub use maze::{build_chip_maze, ChipMaze};
pub use search::{snake_search, FilterDecision, Verdict};
pub use sequence::{DnaSequence, SequencePair, SequencePairBatch};
