use crate::error::FilterError;
use crate::filter::FilterCounters;
use crate::sequence::DnaSequence;

const WORD_BITS: usize = 64;

/// The binary obstacle matrix the snake search walks through.
///
/// For a pair of length `m` and edit threshold `E` the maze has `2E + 1`
/// rows and `m` columns. Row `r` (0-based) holds the comparison diagonal
/// with query offset `offset(r)`:
///
/// * `r < E`: query position `j - (r + 1)` vs reference position `j`
/// * `r == E`: query position `j` vs reference position `j` (main diagonal)
/// * `r > E`: query position `j + (r - E)` vs reference position `j`
///
/// An entry is 0 (open path) when the two symbols match and 1 (obstacle)
/// otherwise. Comparisons whose query index falls outside the sequence are
/// obstacles, which keeps the obstacle count conservative at the edges.
///
/// Rows are stored as packed 64-bit words (obstacle = set bit) so the
/// search can count open entries a word at a time.
#[derive(Debug, Clone)]
pub struct ChipMaze {
    rows: Vec<Vec<u64>>,
    cols: usize,
    threshold: usize,
}

impl ChipMaze {
    /// Number of rows, always `2 * threshold + 1`.
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns, equal to the pair length.
    pub fn col_count(&self) -> usize {
        self.cols
    }

    /// Edit threshold the maze was built for.
    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Entry at (row, col): 0 for an open path entry, 1 for an obstacle.
    pub fn entry(&self, row: usize, col: usize) -> u8 {
        assert!(row < self.rows.len() && col < self.cols, "maze index out of range");
        ((self.rows[row][col / WORD_BITS] >> (col % WORD_BITS)) & 1) as u8
    }

    /// Signed query offset of a row relative to the reference position.
    pub fn row_offset(&self, row: usize) -> isize {
        let e = self.threshold as isize;
        let r = row as isize;
        if r < e {
            -(r + 1)
        } else {
            r - e
        }
    }

    /// Length of the run of open entries in `row` starting at `col`.
    ///
    /// Counts zeros until the first obstacle or the end of the row.
    pub(crate) fn open_run(&self, row: usize, col: usize) -> usize {
        let words = &self.rows[row];
        let mut word_idx = col / WORD_BITS;
        let bit = col % WORD_BITS;
        let mut run = 0usize;

        let first = words[word_idx] >> bit;
        if first != 0 {
            run = first.trailing_zeros() as usize;
            return run.min(self.cols - col);
        }
        run += WORD_BITS - bit;
        word_idx += 1;
        while word_idx < words.len() {
            let w = words[word_idx];
            if w != 0 {
                run += w.trailing_zeros() as usize;
                return run.min(self.cols - col);
            }
            run += WORD_BITS;
            word_idx += 1;
        }
        run.min(self.cols - col)
    }
}

/// Builds the obstacle maze for one pair under edit threshold `threshold`.
///
/// Fails when the lengths differ or when the band `2 * threshold + 1`
/// exceeds the pair length.
pub fn build_chip_maze(
    reference: &DnaSequence,
    query: &DnaSequence,
    threshold: usize,
) -> Result<ChipMaze, FilterError> {
    build_chip_maze_counted(reference, query, threshold, &mut FilterCounters::default())
}

/// Maze construction with per-comparison counting for instrumentation.
pub(crate) fn build_chip_maze_counted(
    reference: &DnaSequence,
    query: &DnaSequence,
    threshold: usize,
    counters: &mut FilterCounters,
) -> Result<ChipMaze, FilterError> {
    if reference.len() != query.len() {
        return Err(FilterError::LengthMismatch {
            ref_len: reference.len(),
            query_len: query.len(),
        });
    }
    let m = reference.len();
    let band = 2 * threshold + 1;
    if band > m {
        return Err(FilterError::ThresholdTooLarge {
            threshold,
            band,
            len: m,
        });
    }

    let r = reference.as_bytes();
    let q = query.as_bytes();
    let words_per_row = m.div_ceil(WORD_BITS);
    let mut rows = Vec::with_capacity(band);

    for row in 0..band {
        let offset = if row < threshold {
            -((row + 1) as isize)
        } else {
            (row - threshold) as isize
        };
        let mut words = vec![0u64; words_per_row];
        for col in 0..m {
            let qi = col as isize + offset;
            let obstacle = if qi < 0 || qi >= m as isize {
                true
            } else {
                counters.symbol_compares += 1;
                counters.bytes_read += 2;
                q[qi as usize] != r[col]
            };
            if obstacle {
                words[col / WORD_BITS] |= 1u64 << (col % WORD_BITS);
            }
        }
        rows.push(words);
    }

    Ok(ChipMaze {
        rows,
        cols: m,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> DnaSequence {
        s.parse().unwrap()
    }

    #[test]
    fn identical_pair_threshold_zero_is_all_open() {
        let maze = build_chip_maze(&seq("ACGTACGT"), &seq("ACGTACGT"), 0).unwrap();
        assert_eq!(maze.row_count(), 1);
        assert_eq!(maze.col_count(), 8);
        for col in 0..8 {
            assert_eq!(maze.entry(0, col), 0);
        }
    }

    #[test]
    fn main_diagonal_row_marks_mismatches() {
        // GGTG matches, then the fifth symbol differs.
        let maze = build_chip_maze(&seq("GGTGCAGAGCTC"), &seq("GGTGAGAGTTGT"), 3).unwrap();
        assert_eq!(maze.row_count(), 7);
        let main = maze.threshold();
        let got: Vec<u8> = (0..5).map(|c| maze.entry(main, c)).collect();
        assert_eq!(got, [0, 0, 0, 0, 1]);
    }

    #[test]
    fn out_of_range_comparisons_are_obstacles() {
        let maze = build_chip_maze(&seq("AAAA"), &seq("AAAA"), 1).unwrap();
        // Row 0 shifts the query back by one, so column 0 has no query symbol.
        assert_eq!(maze.entry(0, 0), 1);
        // Row 2 shifts the query forward by one, so the last column runs off the end.
        assert_eq!(maze.entry(2, 3), 1);
        // In-range entries on those rows compare equal symbols.
        assert_eq!(maze.entry(0, 1), 0);
        assert_eq!(maze.entry(2, 0), 0);
    }

    #[test]
    fn n_matches_only_n() {
        let maze = build_chip_maze(&seq("ANA"), &seq("ANA"), 0).unwrap();
        assert_eq!(maze.entry(0, 1), 0);
        let maze = build_chip_maze(&seq("ANA"), &seq("AAA"), 0).unwrap();
        assert_eq!(maze.entry(0, 1), 1);
    }

    #[test]
    fn band_wider_than_pair_is_rejected() {
        let err = build_chip_maze(&seq("ACG"), &seq("ACG"), 2).unwrap_err();
        assert_eq!(
            err,
            FilterError::ThresholdTooLarge {
                threshold: 2,
                band: 5,
                len: 3
            }
        );
    }

    #[test]
    fn open_run_spans_word_boundaries() {
        // 100 identical symbols: the main diagonal is open across both words.
        let s = "A".repeat(100);
        let maze = build_chip_maze(&seq(&s), &seq(&s), 2).unwrap();
        assert_eq!(maze.open_run(2, 0), 100);
        assert_eq!(maze.open_run(2, 70), 30);
    }
}
