use rayon::prelude::*;

use crate::counters::KernelCounters;
use crate::error::StencilError;
use crate::grid::{Grid3D, GridDims};
use crate::thomas::solve_counted;

/// Inputs of the implicit vertical advection step.
///
/// All four field grids share one shape. Construction checks that the
/// coefficient builder yields strictly diagonally dominant systems
/// (|b| > |a| + |c| at every level of every interior column), which
/// guarantees the per-column solves cannot hit a singular pivot.
#[derive(Debug, Clone)]
pub struct VadvcFields {
    u: Grid3D<f32>,
    u_stage: Grid3D<f32>,
    u_pos: Grid3D<f32>,
    wcon: Grid3D<f32>,
    dtr_inv: f64,
}

impl VadvcFields {
    pub fn new(
        u: Grid3D<f32>,
        u_stage: Grid3D<f32>,
        u_pos: Grid3D<f32>,
        wcon: Grid3D<f32>,
        dtr_inv: f64,
    ) -> Result<Self, StencilError> {
        for other in [&u_stage, &u_pos, &wcon] {
            if other.dims() != u.dims() {
                return Err(StencilError::DimsMismatch {
                    left: u.dims(),
                    right: other.dims(),
                });
            }
        }
        if !(dtr_inv.is_finite() && dtr_inv > 0.0) {
            return Err(StencilError::NonPositiveTimeStep { value: dtr_inv });
        }
        let fields = Self {
            u,
            u_stage,
            u_pos,
            wcon,
            dtr_inv,
        };
        fields.check_dominance()?;
        Ok(fields)
    }

    pub fn dims(&self) -> GridDims {
        self.u.dims()
    }

    pub fn u(&self) -> &Grid3D<f32> {
        &self.u
    }

    pub fn u_stage(&self) -> &Grid3D<f32> {
        &self.u_stage
    }

    pub fn u_pos(&self) -> &Grid3D<f32> {
        &self.u_pos
    }

    pub fn wcon(&self) -> &Grid3D<f32> {
        &self.wcon
    }

    pub fn dtr_inv(&self) -> f64 {
        self.dtr_inv
    }

    /// Assembles the tridiagonal system of column (i, j) and returns it as
    /// `(a, b, c, d)` vectors, e.g. for residual checks of a solved column.
    ///
    /// `a[0]` and `c[K−1]` are placeholders outside the matrix.
    pub fn column_system(&self, i: usize, j: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut sys = ColumnSystem::new(self.dims().k);
        let mut unused = KernelCounters::default();
        self.assemble_column(i, j, &mut sys, &mut unused);
        (sys.a, sys.b, sys.c, sys.d)
    }

    fn check_dominance(&self) -> Result<(), StencilError> {
        let dims = self.dims();
        let mut scratch = ColumnSystem::new(dims.k);
        let mut unused = KernelCounters::default();
        for i in dims.interior_i() {
            for j in dims.interior_j() {
                self.assemble_column(i, j, &mut scratch, &mut unused);
                for k in 0..dims.k {
                    let dominant =
                        scratch.b[k].abs() > scratch.sub(k).abs() + scratch.sup(k).abs();
                    if !dominant {
                        return Err(StencilError::NotDiagonallyDominant {
                            column: (i, j),
                            level: k,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds the K-level tridiagonal system of column (i, j) in double
    /// precision:
    ///
    /// * `a_k = −0.25·wcon(i,j,k)`
    /// * `c_k = +0.25·wcon(i,j,k+1)`, zero at the top level
    /// * `b_k = dtr_inv − a_k − c_k`
    /// * `d_k = dtr_inv·u_pos(k) − a_k·(u_stage(k−1) − u_stage(k))
    ///   − c_k·(u_stage(k+1) − u_stage(k))`, dropping the missing-neighbor
    ///   term at the bottom and top levels
    ///
    /// `a_0` still enters `b_0` but is a placeholder in sub-diagonal
    /// position; the solver never reads it there.
    fn assemble_column(&self, i: usize, j: usize, sys: &mut ColumnSystem, n: &mut KernelCounters) {
        let depth = self.dims().k;
        for k in 0..depth {
            n.flops += 1;
            let a_k = -0.25 * read(&self.wcon, i, j, k, n);
            let c_k = if k + 1 < depth {
                n.flops += 1;
                0.25 * read(&self.wcon, i, j, k + 1, n)
            } else {
                0.0
            };
            n.flops += 2;
            let b_k = self.dtr_inv - a_k - c_k;

            n.flops += 1;
            let mut d_k = self.dtr_inv * read(&self.u_pos, i, j, k, n);
            if depth > 1 {
                let stage = read(&self.u_stage, i, j, k, n);
                if k > 0 {
                    n.flops += 3;
                    d_k -= a_k * (read(&self.u_stage, i, j, k - 1, n) - stage);
                }
                if k + 1 < depth {
                    n.flops += 3;
                    d_k -= c_k * (read(&self.u_stage, i, j, k + 1, n) - stage);
                }
            }

            sys.a[k] = a_k;
            sys.b[k] = b_k;
            sys.c[k] = c_k;
            sys.d[k] = d_k;
        }
    }
}

#[inline]
fn read(g: &Grid3D<f32>, i: usize, j: usize, k: usize, n: &mut KernelCounters) -> f64 {
    n.bytes_read += 4;
    g.get(i, j, k) as f64
}

/// One column's assembled diagonals and right-hand side.
#[derive(Debug, Clone)]
struct ColumnSystem {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
    d: Vec<f64>,
}

impl ColumnSystem {
    fn new(depth: usize) -> Self {
        Self {
            a: vec![0.0; depth],
            b: vec![0.0; depth],
            c: vec![0.0; depth],
            d: vec![0.0; depth],
        }
    }

    /// Sub-diagonal coefficient of row k as the matrix uses it.
    fn sub(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.a[k]
        }
    }

    /// Super-diagonal coefficient of row k as the matrix uses it.
    fn sup(&self, k: usize) -> f64 {
        if k + 1 == self.b.len() {
            0.0
        } else {
            self.c[k]
        }
    }
}

fn solve_column(
    fields: &VadvcFields,
    i: usize,
    j: usize,
    sys: &mut ColumnSystem,
    n: &mut KernelCounters,
) -> Result<Vec<f64>, StencilError> {
    fields.assemble_column(i, j, sys, n);
    let mut solver_n = KernelCounters::default();
    let x = solve_counted(&sys.a, &sys.b, &sys.c, &sys.d, &mut solver_n, Some((i, j)))?;
    // Sweep scratch traffic stays local; only its arithmetic and the
    // solution column written out count toward the kernel totals.
    n.flops += solver_n.flops;
    n.bytes_written += 8 * fields.dims().k as u64;
    Ok(x)
}

/// Implicit vertical advection: solves one tridiagonal system per interior
/// column and writes the solution column into the output grid.
///
/// The output starts as the advected field `u` widened to f64 (so halo
/// columns carry their input values) and interior columns are overwritten
/// with the solved update. Columns are mutually independent.
pub fn vadvc(fields: &VadvcFields) -> Result<Grid3D<f64>, StencilError> {
    vadvc_instrumented(fields).map(|(out, _)| out)
}

/// Serial vertical advection with work counters.
pub fn vadvc_instrumented(
    fields: &VadvcFields,
) -> Result<(Grid3D<f64>, KernelCounters), StencilError> {
    let dims = fields.dims();
    let mut out = fields.u.widened();
    let mut counters = KernelCounters::default();
    let mut sys = ColumnSystem::new(dims.k);
    for i in dims.interior_i() {
        for j in dims.interior_j() {
            let x = solve_column(fields, i, j, &mut sys, &mut counters)?;
            for (k, v) in x.into_iter().enumerate() {
                out.set(i, j, k, v);
            }
        }
    }
    Ok((out, counters))
}

/// Vertical advection parallelized over columns, bitwise identical to the
/// serial run.
pub fn vadvc_parallel(fields: &VadvcFields, workers: usize) -> Result<Grid3D<f64>, StencilError> {
    vadvc_parallel_instrumented(fields, workers).map(|(out, _)| out)
}

/// Parallel vertical advection with work counters; counters equal the
/// serial run's exactly.
pub fn vadvc_parallel_instrumented(
    fields: &VadvcFields,
    workers: usize,
) -> Result<(Grid3D<f64>, KernelCounters), StencilError> {
    let dims = fields.dims();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to build stencil thread pool");

    let columns: Vec<(usize, usize)> = dims
        .interior_i()
        .flat_map(|i| dims.interior_j().map(move |j| (i, j)))
        .collect();

    let solved: Vec<Result<(Vec<f64>, KernelCounters), StencilError>> = pool.install(|| {
        columns
            .par_iter()
            .map(|&(i, j)| {
                let mut sys = ColumnSystem::new(dims.k);
                let mut local = KernelCounters::default();
                let x = solve_column(fields, i, j, &mut sys, &mut local)?;
                Ok((x, local))
            })
            .collect()
    });

    let mut out = fields.u.widened();
    let mut counters = KernelCounters::default();
    for ((i, j), result) in columns.into_iter().zip(solved) {
        let (x, local) = result?;
        counters.add(&local);
        for (k, v) in x.into_iter().enumerate() {
            out.set(i, j, k, v);
        }
    }
    Ok((out, counters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDims;

    fn dims(i: usize, j: usize, k: usize, halo: usize) -> GridDims {
        GridDims::new(i, j, k, halo)
    }

    fn fields_from_fn(
        d: GridDims,
        f: impl Fn(usize, usize, usize) -> f32 + Copy,
        dtr_inv: f64,
    ) -> VadvcFields {
        VadvcFields::new(
            Grid3D::filled(d, 0.5).unwrap(),
            Grid3D::from_fn(d, f).unwrap(),
            Grid3D::from_fn(d, |i, j, k| f(i, j, k).abs() + 0.25).unwrap(),
            Grid3D::from_fn(d, |i, j, k| f(i, j, k).sin()).unwrap(),
            dtr_inv,
        )
        .unwrap()
    }

    #[test]
    fn mismatched_field_dims_are_rejected() {
        let d = dims(4, 4, 3, 1);
        let other = dims(4, 4, 2, 1);
        let err = VadvcFields::new(
            Grid3D::filled(d, 0.0).unwrap(),
            Grid3D::filled(d, 0.0).unwrap(),
            Grid3D::filled(other, 0.0).unwrap(),
            Grid3D::filled(d, 0.0).unwrap(),
            2.0,
        )
        .unwrap_err();
        assert!(matches!(err, StencilError::DimsMismatch { .. }));
    }

    #[test]
    fn non_positive_time_step_is_rejected() {
        let d = dims(4, 4, 2, 1);
        let g = || Grid3D::filled(d, 0.0).unwrap();
        let err = VadvcFields::new(g(), g(), g(), g(), 0.0).unwrap_err();
        assert_eq!(err, StencilError::NonPositiveTimeStep { value: 0.0 });
    }

    #[test]
    fn dominance_violation_is_caught_at_construction() {
        // wcon = 100 with dtr_inv = 2 gives |a| + |c| = 50 but b = 2.
        let d = dims(4, 4, 3, 1);
        let g = || Grid3D::filled(d, 0.0).unwrap();
        let err = VadvcFields::new(g(), g(), g(), Grid3D::filled(d, 100.0).unwrap(), 2.0)
            .unwrap_err();
        assert_eq!(
            err,
            StencilError::NotDiagonallyDominant {
                column: (1, 1),
                level: 0
            }
        );
    }

    #[test]
    fn single_level_column_solves_directly() {
        // K = 1: the system degenerates to b_0 x = d_0 with
        // b_0 = dtr_inv - a_0 and d_0 = dtr_inv * u_pos.
        let d = dims(3, 3, 1, 1);
        let fields = VadvcFields::new(
            Grid3D::filled(d, 7.0).unwrap(),
            Grid3D::filled(d, 9.0).unwrap(),
            Grid3D::filled(d, 3.0).unwrap(),
            Grid3D::filled(d, 1.0).unwrap(),
            2.0,
        )
        .unwrap();
        let out = vadvc(&fields).unwrap();
        let expected = (2.0 * 3.0) / (2.0 - (-0.25));
        assert_eq!(out.get(1, 1, 0), expected);
        // Halo columns keep the widened input field.
        assert_eq!(out.get(0, 0, 0), 7.0);
    }

    #[test]
    fn halo_columns_carry_the_advected_field() {
        let d = dims(5, 4, 3, 1);
        let fields = fields_from_fn(d, |i, j, k| (i + 2 * j + 3 * k) as f32 * 0.1, 2.0);
        let out = vadvc(&fields).unwrap();
        for k in 0..3 {
            for i in 0..5 {
                for j in 0..4 {
                    let interior = (1..4).contains(&i) && (1..3).contains(&j);
                    if !interior {
                        assert_eq!(out.get(i, j, k), fields.u().get(i, j, k) as f64);
                    }
                }
            }
        }
    }

    #[test]
    fn counters_follow_closed_forms() {
        // Per column of depth K: 11K-7 assembly flops plus 8K-7 solver
        // flops, (6K-3) four-byte field reads, 8K bytes written.
        let d = dims(4, 5, 16, 1);
        let fields = fields_from_fn(d, |i, j, k| ((i + j + k) % 7) as f32 * 0.2 - 0.5, 2.0);
        let (_, n) = vadvc_instrumented(&fields).unwrap();
        let columns = (2 * 3) as u64;
        let depth = 16u64;
        assert_eq!(n.flops, columns * (19 * depth - 14));
        assert_eq!(n.bytes_read, columns * 4 * (6 * depth - 3));
        assert_eq!(n.bytes_written, columns * 8 * depth);
    }

    #[test]
    fn single_level_counters() {
        let d = dims(3, 3, 1, 1);
        let g = |v: f32| Grid3D::filled(d, v).unwrap();
        let fields = VadvcFields::new(g(1.0), g(2.0), g(3.0), g(0.5), 2.0).unwrap();
        let (_, n) = vadvc_instrumented(&fields).unwrap();
        assert_eq!(n.flops, 5);
        assert_eq!(n.bytes_read, 8);
        assert_eq!(n.bytes_written, 8);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let d = dims(6, 7, 9, 2);
        let fields = fields_from_fn(d, |i, j, k| ((3 * i + 5 * j + 7 * k) % 11) as f32 * 0.09, 2.0);
        let (serial, n_serial) = vadvc_instrumented(&fields).unwrap();
        for workers in [1, 2, 4] {
            let (parallel, n_par) = vadvc_parallel_instrumented(&fields, workers).unwrap();
            assert_eq!(n_par, n_serial);
            assert!(serial
                .data()
                .iter()
                .zip(parallel.data())
                .all(|(a, b)| a.to_bits() == b.to_bits()));
        }
    }
}
