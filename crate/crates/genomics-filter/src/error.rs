use thiserror::Error;

/// Errors produced while validating sequences or running the filter.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("sequence is empty")]
    EmptySequence,

    #[error("invalid symbol {symbol:?} at position {pos} (expected A, C, G, T or N)")]
    InvalidSymbol { symbol: char, pos: usize },

    #[error("reference length {ref_len} != query length {query_len}")]
    LengthMismatch { ref_len: usize, query_len: usize },

    #[error("edit threshold {threshold} too large: band width {band} exceeds sequence length {len}")]
    ThresholdTooLarge {
        threshold: usize,
        band: usize,
        len: usize,
    },
}
