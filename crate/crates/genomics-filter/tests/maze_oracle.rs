use genomics_filter::{build_chip_maze, DnaSequence};
use proptest::prelude::*;

/// Direct per-entry evaluation of the maze definition, written 1-based and
/// case by case so it shares nothing with the packed implementation.
fn oracle_entry(r: &[u8], q: &[u8], e: usize, i: usize, j: usize) -> u8 {
    assert!((1..=2 * e + 1).contains(&i) && (1..=r.len()).contains(&j));
    let qpos = if i == e + 1 {
        Some(j)
    } else if i <= e {
        j.checked_sub(i).filter(|&p| p >= 1)
    } else {
        let p = j + i - e - 1;
        (p <= q.len()).then_some(p)
    };
    match qpos {
        Some(p) if q[p - 1] == r[j - 1] => 0,
        _ => 1,
    }
}

fn assert_maze_matches_oracle(reference: &str, query: &str, e: usize) {
    let r: DnaSequence = reference.parse().unwrap();
    let q: DnaSequence = query.parse().unwrap();
    let maze = build_chip_maze(&r, &q, e).unwrap();
    assert_eq!(maze.row_count(), 2 * e + 1);
    assert_eq!(maze.col_count(), reference.len());
    for i in 1..=2 * e + 1 {
        for j in 1..=reference.len() {
            assert_eq!(
                maze.entry(i - 1, j - 1),
                oracle_entry(reference.as_bytes(), query.as_bytes(), e, i, j),
                "mismatch at row {i}, col {j} (1-based), E={e}"
            );
        }
    }
}

#[test]
fn matches_oracle_on_known_pair() {
    assert_maze_matches_oracle("GGTGCAGAGCTC", "GGTGAGAGTTGT", 3);
}

#[test]
fn matches_oracle_at_threshold_zero() {
    assert_maze_matches_oracle("ACGTN", "ACGTA", 0);
}

#[test]
fn matches_oracle_when_band_equals_length() {
    assert_maze_matches_oracle("ACGTA", "TACGT", 2);
}

fn dna(len: std::ops::Range<usize>) -> impl Strategy<Value = String> {
    proptest::collection::vec(proptest::sample::select(b"ACGTN".to_vec()), len)
        .prop_map(|v| String::from_utf8(v).unwrap())
}

proptest! {
    #[test]
    fn matches_oracle_on_random_pairs(
        reference in dna(7..48),
        seed_query in dna(7..48),
        e in 0usize..4,
    ) {
        let m = reference.len();
        prop_assume!(2 * e + 1 <= m);
        // Recycle the generated symbols to a query of matching length.
        let query: String = seed_query.chars().cycle().take(m).collect();
        assert_maze_matches_oracle(&reference, &query, e);
    }
}
