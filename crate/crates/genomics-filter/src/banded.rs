use crate::sequence::SequencePair;

/// Levenshtein distance restricted to a diagonal band of width
/// `2 * threshold + 1`, the verification step run on accepted pairs.
///
/// Returns `Some(distance)` when the pair is within `threshold` edits and
/// `None` when the true distance exceeds it. Unit costs for substitution,
/// insertion and deletion.
pub fn edit_distance_banded(pair: &SequencePair, threshold: usize) -> Option<usize> {
    let a = pair.reference.as_bytes();
    let b = pair.query.as_bytes();
    let n = a.len();
    let t = threshold as isize;
    const INF: usize = usize::MAX / 2;

    // prev[d] holds the cost on diagonal offset d - threshold.
    let width = 2 * threshold + 1;
    let mut prev = vec![INF; width];
    let mut curr = vec![INF; width];

    // Row 0: matching i leading symbols of b against nothing costs i.
    for (d, slot) in prev.iter_mut().enumerate() {
        let j = d as isize - t;
        if j >= 0 && j as usize <= n {
            *slot = j as usize;
        }
    }

    for i in 1..=n {
        for d in 0..width {
            let j = i as isize + d as isize - t;
            curr[d] = if j < 0 || j as usize > n {
                INF
            } else if j == 0 {
                i
            } else {
                let j = j as usize;
                let sub = prev[d] + usize::from(a[i - 1] != b[j - 1]);
                let del = if d + 1 < width { prev[d + 1] + 1 } else { INF };
                let ins = if d > 0 { curr[d - 1] + 1 } else { INF };
                sub.min(del).min(ins)
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }

    let dist = prev[threshold];
    (dist <= threshold).then_some(dist)
}
