use std::fmt;

use crate::error::FilterError;

const ALPHABET: &[u8] = b"ACGTN";

/// A validated upper-case DNA sequence over the alphabet {A, C, G, T, N}.
///
/// `N` is an explicit unknown-base symbol: it matches only another `N`,
/// never a concrete base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DnaSequence {
    bases: Vec<u8>,
}

impl DnaSequence {
    /// Validates and wraps a byte string of upper-case bases.
    pub fn new(bases: impl Into<Vec<u8>>) -> Result<Self, FilterError> {
        let bases = bases.into();
        if bases.is_empty() {
            return Err(FilterError::EmptySequence);
        }
        if let Some(pos) = bases.iter().position(|b| !ALPHABET.contains(b)) {
            return Err(FilterError::InvalidSymbol {
                symbol: bases[pos] as char,
                pos,
            });
        }
        Ok(Self { bases })
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bases
    }
}

impl fmt::Display for DnaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.bases).expect("validated ASCII"))
    }
}

impl std::str::FromStr for DnaSequence {
    type Err = FilterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s.as_bytes().to_vec())
    }
}

/// A reference/query pair of equal length, the filter's unit of work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePair {
    pub reference: DnaSequence,
    pub query: DnaSequence,
}

impl SequencePair {
    pub fn new(reference: DnaSequence, query: DnaSequence) -> Result<Self, FilterError> {
        if reference.len() != query.len() {
            return Err(FilterError::LengthMismatch {
                ref_len: reference.len(),
                query_len: query.len(),
            });
        }
        Ok(Self { reference, query })
    }

    pub fn len(&self) -> usize {
        self.reference.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reference.is_empty()
    }
}

/// A batch of sequence pairs sharing one uniform length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePairBatch {
    pairs: Vec<SequencePair>,
    pair_len: usize,
}

impl SequencePairBatch {
    /// Builds a batch, enforcing that every pair shares the same length.
    ///
    /// An empty batch is valid and has `pair_len() == 0`.
    pub fn new(pairs: Vec<SequencePair>) -> Result<Self, FilterError> {
        let pair_len = pairs.first().map_or(0, SequencePair::len);
        for pair in &pairs {
            if pair.len() != pair_len {
                return Err(FilterError::LengthMismatch {
                    ref_len: pair_len,
                    query_len: pair.len(),
                });
            }
        }
        Ok(Self { pairs, pair_len })
    }

    pub fn pairs(&self) -> &[SequencePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Uniform sequence length shared by all pairs (0 for an empty batch).
    pub fn pair_len(&self) -> usize {
        self.pair_len
    }
}
