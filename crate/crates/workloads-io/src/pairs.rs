use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use genomics_filter::{DnaSequence, SequencePair, SequencePairBatch};
use rand::{seq::SliceRandom as _, Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;

use crate::error::WorkloadError;

/// How queries are derived from their references during generation.
///
/// Each pair receives exactly `edits` units of planted change. A
/// substitution consumes one unit; an insertion or deletion consumes two,
/// because keeping lengths equal realizes it as a shift of the suffix plus
/// a random fill at the far end (an indel pair). The probabilities select
/// the operation kind and must sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditProfile {
    edits: usize,
    substitution_p: f64,
    insertion_p: f64,
    deletion_p: f64,
}

impl EditProfile {
    pub fn new(
        edits: usize,
        substitution_p: f64,
        insertion_p: f64,
        deletion_p: f64,
    ) -> Result<Self, WorkloadError> {
        let ps = [substitution_p, insertion_p, deletion_p];
        if ps.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(WorkloadError::BadEditProfile {
                reason: "probabilities must be finite and non-negative".into(),
            });
        }
        let sum: f64 = ps.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(WorkloadError::BadEditProfile {
                reason: format!("probabilities sum to {sum}, expected 1"),
            });
        }
        Ok(Self {
            edits,
            substitution_p,
            insertion_p,
            deletion_p,
        })
    }

    /// Profile planting only substitutions.
    pub fn substitutions_only(edits: usize) -> Self {
        Self {
            edits,
            substitution_p: 1.0,
            insertion_p: 0.0,
            deletion_p: 0.0,
        }
    }

    /// Half substitutions, one quarter insertions, one quarter deletions.
    pub fn mixed(edits: usize) -> Self {
        Self {
            edits,
            substitution_p: 0.5,
            insertion_p: 0.25,
            deletion_p: 0.25,
        }
    }

    pub fn edits(&self) -> usize {
        self.edits
    }
}

const BASES: &[u8; 4] = b"ACGT";

enum EditKind {
    Substitution,
    Insertion,
    Deletion,
}

/// Generates `n` reference/query pairs of length `m` with planted edits.
///
/// Deterministic for a fixed seed: the generator is ChaCha8 seeded with
/// `seed` via the u64 expansion, so batches are reproducible from the
/// parameters alone. Every pair satisfies
/// `levenshtein(reference, query) <= profile.edits()`.
pub fn generate_pairs(n: usize, m: usize, profile: &EditProfile, seed: u64) -> SequencePairBatch {
    assert!(n > 0 && m > 0, "batch and pair sizes must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n);
    for _ in 0..n {
        let reference: Vec<u8> = (0..m).map(|_| *BASES.choose(&mut rng).unwrap()).collect();
        let mut query = reference.clone();
        let mut remaining = profile.edits;
        while remaining > 0 {
            let kind = if remaining == 1 {
                EditKind::Substitution
            } else {
                let roll: f64 = rng.gen();
                if roll < profile.substitution_p {
                    EditKind::Substitution
                } else if roll < profile.substitution_p + profile.insertion_p {
                    EditKind::Insertion
                } else {
                    EditKind::Deletion
                }
            };
            match kind {
                EditKind::Substitution => {
                    let pos = rng.gen_range(0..m);
                    let others: Vec<u8> =
                        BASES.iter().copied().filter(|&b| b != query[pos]).collect();
                    query[pos] = *others.choose(&mut rng).unwrap();
                    remaining -= 1;
                }
                EditKind::Insertion => {
                    let pos = rng.gen_range(0..m);
                    query.copy_within(pos..m - 1, pos + 1);
                    query[pos] = *BASES.choose(&mut rng).unwrap();
                    remaining -= 2;
                }
                EditKind::Deletion => {
                    let pos = rng.gen_range(0..m);
                    query.copy_within(pos + 1..m, pos);
                    query[m - 1] = *BASES.choose(&mut rng).unwrap();
                    remaining -= 2;
                }
            }
        }
        let pair = SequencePair::new(
            DnaSequence::new(reference).unwrap(),
            DnaSequence::new(query).unwrap(),
        )
        .unwrap();
        pairs.push(pair);
    }
    SequencePairBatch::new(pairs).expect("generated pairs share one length")
}

/// Parses a pair file: one `reference<TAB>query` per line, uppercase
/// ACGTN, equal lengths, `#` lines ignored. Line numbers are 1-based and
/// count skipped lines.
pub fn parse_pairs(path: &Path) -> Result<SequencePairBatch, WorkloadError> {
    parse_pairs_reader(BufReader::new(File::open(path)?))
}

pub fn parse_pairs_reader(reader: impl BufRead) -> Result<SequencePairBatch, WorkloadError> {
    let mut pairs = Vec::new();
    let mut expected_len: Option<usize> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.starts_with('#') {
            continue;
        }
        let malformed = || WorkloadError::MalformedLine {
            line_no,
            content: line.clone(),
        };
        let (reference, query) = line.split_once('\t').ok_or_else(malformed)?;
        let reference: DnaSequence = reference.parse().map_err(|_| malformed())?;
        let query: DnaSequence = query.parse().map_err(|_| malformed())?;
        if reference.len() != query.len() {
            return Err(WorkloadError::LengthMismatch { line_no });
        }
        if *expected_len.get_or_insert(reference.len()) != reference.len() {
            return Err(WorkloadError::LengthMismatch { line_no });
        }
        pairs.push(SequencePair::new(reference, query).expect("lengths checked above"));
    }
    Ok(SequencePairBatch::new(pairs).expect("uniform length checked above"))
}

/// Writes a batch in the format [`parse_pairs`] reads.
pub fn write_pairs(batch: &SequencePairBatch, path: &Path) -> Result<(), WorkloadError> {
    let mut out = BufWriter::new(File::create(path)?);
    for pair in batch.pairs() {
        writeln!(out, "{}\t{}", pair.reference, pair.query)?;
    }
    out.flush()?;
    Ok(())
}
