use crate::counters::KernelCounters;
use crate::error::StencilError;

/// Pivots smaller than this are treated as singular.
const PIVOT_MIN: f64 = 1e-300;

/// Solves the tridiagonal system T·x = d by the Thomas algorithm: a
/// normalized forward sweep followed by backward substitution.
///
/// `a` is the sub-diagonal, `b` the main diagonal, `c` the super-diagonal;
/// all four slices share length `n ≥ 1`, with `a[0]` and `c[n-1]` as
/// ignored placeholders. The sweep is stable for diagonally dominant
/// systems; other systems may fail with [`StencilError::SingularPivot`].
pub fn thomas_solve(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Result<Vec<f64>, StencilError> {
    let mut n = KernelCounters::default();
    solve_counted(a, b, c, d, &mut n, None)
}

/// Thomas solve with work counters: 8n−7 flops, 4n−2 element reads (2 at
/// n = 1) and n element writes, all at 8-byte width.
pub fn thomas_solve_instrumented(
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
) -> Result<(Vec<f64>, KernelCounters), StencilError> {
    let mut n = KernelCounters::default();
    let x = solve_counted(a, b, c, d, &mut n, None)?;
    Ok((x, n))
}

const F64_WIDTH: u64 = 8;

#[inline]
fn read(slice: &[f64], idx: usize, n: &mut KernelCounters) -> f64 {
    n.bytes_read += F64_WIDTH;
    slice[idx]
}

pub(crate) fn solve_counted(
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
    n: &mut KernelCounters,
    column: Option<(usize, usize)>,
) -> Result<Vec<f64>, StencilError> {
    let len = b.len();
    assert!(
        a.len() == len && c.len() == len && d.len() == len,
        "diagonal slices must share one length"
    );
    assert!(len >= 1, "system must have at least one equation");

    let mut cp = vec![0.0; len];
    let mut dp = vec![0.0; len];

    let b0 = read(b, 0, n);
    if b0.abs() < PIVOT_MIN {
        return Err(StencilError::SingularPivot { level: 0, column });
    }
    if len > 1 {
        n.flops += 1;
        cp[0] = read(c, 0, n) / b0;
    }
    n.flops += 1;
    dp[0] = read(d, 0, n) / b0;

    for k in 1..len {
        n.flops += 2;
        let w = read(b, k, n) - read(a, k, n) * cp[k - 1];
        if w.abs() < PIVOT_MIN {
            return Err(StencilError::SingularPivot { level: k, column });
        }
        if k < len - 1 {
            n.flops += 1;
            cp[k] = read(c, k, n) / w;
        }
        n.flops += 3;
        dp[k] = (read(d, k, n) - a[k] * dp[k - 1]) / w;
    }

    let mut x = vec![0.0; len];
    n.bytes_written += F64_WIDTH;
    x[len - 1] = dp[len - 1];
    for k in (0..len - 1).rev() {
        n.flops += 2;
        n.bytes_written += F64_WIDTH;
        x[k] = dp[k] - cp[k] * x[k + 1];
    }
    Ok(x)
}

/// Normalized residual ‖T·x − d‖∞ / max(1, ‖d‖∞) of a candidate solution.
pub fn tridiagonal_residual(a: &[f64], b: &[f64], c: &[f64], d: &[f64], x: &[f64]) -> f64 {
    let len = b.len();
    assert!(a.len() == len && c.len() == len && d.len() == len && x.len() == len);
    let mut worst = 0.0f64;
    let mut d_norm = 0.0f64;
    for k in 0..len {
        let mut row = b[k] * x[k];
        if k > 0 {
            row += a[k] * x[k - 1];
        }
        if k < len - 1 {
            row += c[k] * x[k + 1];
        }
        worst = worst.max((row - d[k]).abs());
        d_norm = d_norm.max(d[k].abs());
    }
    worst / d_norm.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_equation() {
        let x = thomas_solve(&[0.0], &[2.0], &[0.0], &[6.0]).unwrap();
        assert_eq!(x, vec![3.0]);
    }

    #[test]
    fn identity_matrix_returns_rhs() {
        let d = [4.0, -1.5, 0.25, 9.0];
        let x = thomas_solve(&[0.0; 4], &[1.0; 4], &[0.0; 4], &d).unwrap();
        assert_eq!(x, d.to_vec());
    }

    #[test]
    fn known_three_by_three_system() {
        // [2 1 0; 1 3 1; 0 1 2] · [1, 2, 3] = [4, 10, 8]
        let a = [0.0, 1.0, 1.0];
        let b = [2.0, 3.0, 2.0];
        let c = [1.0, 1.0, 0.0];
        let d = [4.0, 10.0, 8.0];
        let x = thomas_solve(&a, &b, &c, &d).unwrap();
        for (got, want) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
        assert!(tridiagonal_residual(&a, &b, &c, &d, &x) < 1e-15);
    }

    #[test]
    fn zero_pivot_is_reported_with_level() {
        let err = thomas_solve(&[0.0, 1.0], &[0.0, 1.0], &[1.0, 0.0], &[1.0, 1.0]).unwrap_err();
        assert_eq!(err, StencilError::SingularPivot { level: 0, column: None });

        // Elimination drives the second pivot to exactly zero.
        let err = thomas_solve(&[0.0, 1.0], &[1.0, 1.0], &[1.0, 0.0], &[1.0, 1.0]).unwrap_err();
        assert_eq!(err, StencilError::SingularPivot { level: 1, column: None });
    }

    #[test]
    fn placeholder_entries_are_never_read() {
        let x1 = thomas_solve(&[0.0, 1.0, 1.0], &[3.0; 3], &[1.0, 1.0, 0.0], &[1.0; 3]).unwrap();
        let x2 =
            thomas_solve(&[999.0, 1.0, 1.0], &[3.0; 3], &[1.0, 1.0, -999.0], &[1.0; 3]).unwrap();
        assert_eq!(x1, x2);
    }

    #[test]
    fn counters_follow_closed_forms() {
        for n in [1usize, 2, 3, 5, 17, 64] {
            let a = vec![-1.0; n];
            let b = vec![4.0; n];
            let c = vec![-1.0; n];
            let d = vec![1.0; n];
            let (_, counters) = thomas_solve_instrumented(&a, &b, &c, &d).unwrap();
            let n64 = n as u64;
            assert_eq!(counters.flops, 8 * n64 - 7, "flops at n={n}");
            let reads = if n == 1 { 2 } else { 4 * n64 - 2 };
            assert_eq!(counters.bytes_read, 8 * reads, "reads at n={n}");
            assert_eq!(counters.bytes_written, 8 * n64, "writes at n={n}");
        }
    }
}
