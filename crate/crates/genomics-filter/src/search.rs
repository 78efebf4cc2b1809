use crate::maze::ChipMaze;

/// Outcome of running the snake search over one maze.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The pair may be within the edit threshold and needs full alignment.
    Accept,
    /// The pair is guaranteed to exceed the edit threshold.
    Reject,
}

/// Decision returned by the filter for a single pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterDecision {
    pub verdict: Verdict,
    /// Obstacles crossed before the search ended. On an early exit this is
    /// exactly `threshold + 1`.
    pub obstacle_count: usize,
    /// True when the search stopped as soon as the count exceeded the
    /// threshold, without reaching the last column.
    pub early_exit: bool,
}

/// Walks the maze greedily from left to right and counts crossed obstacles.
///
/// At each checkpoint column the search takes the row with the longest run
/// of open entries, crosses one obstacle to move past the run, and repeats.
/// Runs are compared over all rows; ties prefer the row closest to the main
/// diagonal (and the upper row on equal distance), which only affects which
/// run is taken, never its length. The search exits early once the count
/// exceeds the threshold, since the verdict can no longer change.
pub fn snake_search(maze: &ChipMaze) -> FilterDecision {
    let m = maze.col_count();
    let e = maze.threshold();
    let mut checkpoint = 0usize;
    let mut count = 0usize;

    while checkpoint < m {
        let best = longest_open_run(maze, checkpoint);
        if checkpoint + best >= m {
            return FilterDecision {
                verdict: Verdict::Accept,
                obstacle_count: count,
                early_exit: false,
            };
        }
        checkpoint += best + 1;
        count += 1;
        if count > e {
            return FilterDecision {
                verdict: Verdict::Reject,
                obstacle_count: count,
                early_exit: true,
            };
        }
    }

    FilterDecision {
        verdict: Verdict::Accept,
        obstacle_count: count,
        early_exit: false,
    }
}

/// Longest run of open entries over all rows starting at `col`, scanning
/// rows from the main diagonal outwards so ties resolve to the nearest one.
fn longest_open_run(maze: &ChipMaze, col: usize) -> usize {
    let e = maze.threshold();
    let mut best = 0usize;
    for dist in 0..=e {
        let candidates = if dist == 0 {
            [Some(e), None]
        } else {
            [Some(e - dist), Some(e + dist)]
        };
        for row in candidates.into_iter().flatten() {
            let run = maze.open_run(row, col);
            if run > best {
                best = run;
            }
        }
    }
    best
}
