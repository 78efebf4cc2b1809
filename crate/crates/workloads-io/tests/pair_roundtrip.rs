use genomics_filter::edit_distance_banded;
use proptest::prelude::*;
use workloads_io::{generate_pairs, parse_pairs, write_pairs, EditProfile};

#[test]
fn generated_batches_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.txt");
    let batch = generate_pairs(50, 100, &EditProfile::mixed(5), 12345);
    write_pairs(&batch, &path).unwrap();
    let parsed = parse_pairs(&path).unwrap();
    assert_eq!(batch, parsed);
}

#[test]
fn planted_edit_bound_holds_on_a_large_batch() {
    let profile = EditProfile::mixed(6);
    let batch = generate_pairs(500, 100, &profile, 777);
    for pair in batch.pairs() {
        let dist = edit_distance_banded(pair, profile.edits());
        assert!(
            dist.is_some(),
            "planted distance exceeded the edit budget for {}",
            pair.reference
        );
    }
}

proptest! {
    #[test]
    fn planted_edit_bound_holds(
        m in 4usize..96,
        edits in 0usize..8,
        sub_weight in 0u32..=4,
        seed in any::<u64>(),
    ) {
        // Skew the mix between substitution-heavy and indel-heavy.
        let sub_p = f64::from(sub_weight) / 4.0;
        let rest = (1.0 - sub_p) / 2.0;
        let profile = EditProfile::new(edits, sub_p, rest, rest).unwrap();
        let batch = generate_pairs(8, m, &profile, seed);
        for pair in batch.pairs() {
            prop_assert!(edit_distance_banded(pair, edits).is_some());
        }
    }

    #[test]
    fn generation_is_reproducible(seed in any::<u64>(), edits in 0usize..6) {
        let profile = EditProfile::mixed(edits);
        let a = generate_pairs(6, 40, &profile, seed);
        let b = generate_pairs(6, 40, &profile, seed);
        prop_assert_eq!(a, b);
    }
}
