use rayon::prelude::*;

use crate::error::FilterError;
use crate::maze::{build_chip_maze, build_chip_maze_counted};
use crate::search::{snake_search, FilterDecision, Verdict};
use crate::sequence::{SequencePair, SequencePairBatch};

/// Work done while filtering, in units the memory model understands.
///
/// Every in-range maze entry costs one symbol comparison and two byte
/// reads (one query symbol, one reference symbol); each filtered pair
/// writes one decision byte.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FilterCounters {
    pub symbol_compares: u64,
    pub bytes_read: u64,
    pub bytes_written: u64,
}

impl FilterCounters {
    pub fn add(&mut self, other: &FilterCounters) {
        self.symbol_compares += other.symbol_compares;
        self.bytes_read += other.bytes_read;
        self.bytes_written += other.bytes_written;
    }
}

/// Aggregate statistics over one filtered batch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BatchStats {
    pub total: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub errors: usize,
}

impl BatchStats {
    /// Fraction of successfully filtered pairs that were accepted.
    pub fn accept_rate(&self) -> f64 {
        let decided = self.accepted + self.rejected;
        if decided == 0 {
            0.0
        } else {
            self.accepted as f64 / decided as f64
        }
    }
}

/// Filters one pair: builds its maze and runs the snake search.
pub fn filter_pair(pair: &SequencePair, threshold: usize) -> Result<FilterDecision, FilterError> {
    let maze = build_chip_maze(&pair.reference, &pair.query, threshold)?;
    Ok(snake_search(&maze))
}

/// Filters one pair and reports the work it cost.
pub fn filter_pair_instrumented(
    pair: &SequencePair,
    threshold: usize,
) -> Result<(FilterDecision, FilterCounters), FilterError> {
    let mut counters = FilterCounters::default();
    let maze = build_chip_maze_counted(&pair.reference, &pair.query, threshold, &mut counters)?;
    let decision = snake_search(&maze);
    counters.bytes_written += 1;
    Ok((decision, counters))
}

/// Filters a batch in parallel over `workers` threads, preserving order.
///
/// Per-pair failures are reported in place rather than aborting the batch.
pub fn filter_batch(
    batch: &SequencePairBatch,
    threshold: usize,
    workers: usize,
) -> (Vec<Result<FilterDecision, FilterError>>, BatchStats) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build filter thread pool");

    let decisions: Vec<Result<FilterDecision, FilterError>> = pool.install(|| {
        batch
            .pairs()
            .par_iter()
            .map(|pair| filter_pair(pair, threshold))
            .collect()
    });

    let mut stats = BatchStats {
        total: decisions.len(),
        ..BatchStats::default()
    };
    for decision in &decisions {
        match decision {
            Ok(d) if d.verdict == Verdict::Accept => stats.accepted += 1,
            Ok(_) => stats.rejected += 1,
            Err(_) => stats.errors += 1,
        }
    }
    (decisions, stats)
}
