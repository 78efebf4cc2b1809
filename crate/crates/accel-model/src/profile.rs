use std::fmt;
use std::str::FromStr;

use crate::error::SimError;

/// The three accelerated workloads the model knows how to describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kernel {
    SneakySnake,
    Vadvc,
    Hdiff,
}

impl Kernel {
    pub const ALL: [Kernel; 3] = [Kernel::SneakySnake, Kernel::Vadvc, Kernel::Hdiff];

    pub fn name(self) -> &'static str {
        match self {
            Kernel::SneakySnake => "sneakysnake",
            Kernel::Vadvc => "vadvc",
            Kernel::Hdiff => "hdiff",
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kernel::ALL
            .into_iter()
            .find(|k| s.eq_ignore_ascii_case(k.name()))
            .ok_or_else(|| SimError::UnknownKernel {
                name: s.to_string(),
            })
    }
}

/// Workload description driving the dataflow stage model.
///
/// Byte figures are split into two views. The host view
/// (`bytes_in_per_unit`, `bytes_out_per_unit`) counts each element once, as
/// it crosses the host link and device memory. The PE view
/// (`pe_bytes_in_per_unit`, `pe_bytes_out_per_unit`) counts element traffic
/// at the processing element, which revisits stencil neighborhoods and
/// streams solver coefficients, so it can be much larger than the host view.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelProfile {
    pub kernel: Kernel,
    /// Work items in one run: sequence pairs for the filter, grid points for
    /// the stencils.
    pub work_units: u64,
    pub bytes_in_per_unit: f64,
    pub bytes_out_per_unit: f64,
    pub pe_bytes_in_per_unit: f64,
    pub pe_bytes_out_per_unit: f64,
    /// PE cycles consumed per work unit when compute is the bottleneck.
    pub compute_cycles_per_unit: f64,
    /// Floating-point operations per work unit, used for GFLOPS conversion;
    /// zero for kernels whose throughput is reported in units/s.
    pub flops_per_unit: f64,
    /// Whether work splits evenly across PEs (block or pair partitioning);
    /// indivisible work rounds the per-PE share up to whole units.
    pub divisible: bool,
}

impl KernelProfile {
    /// Checks the rate fields the stage model divides by.
    pub fn validate(&self) -> Result<(), SimError> {
        let positives = [
            ("bytes_in_per_unit", self.bytes_in_per_unit),
            ("bytes_out_per_unit", self.bytes_out_per_unit),
            ("pe_bytes_in_per_unit", self.pe_bytes_in_per_unit),
            ("pe_bytes_out_per_unit", self.pe_bytes_out_per_unit),
            ("compute_cycles_per_unit", self.compute_cycles_per_unit),
        ];
        for (field, value) in positives {
            if !(value.is_finite() && value > 0.0) {
                return Err(SimError::CalibrationValue {
                    key: format!("{}.{field}", self.kernel),
                    reason: format!("must be finite and positive, got {value}"),
                });
            }
        }
        if !(self.flops_per_unit.is_finite() && self.flops_per_unit >= 0.0) {
            return Err(SimError::CalibrationValue {
                key: format!("{}.flops_per_unit", self.kernel),
                reason: format!("must be finite and non-negative, got {}", self.flops_per_unit),
            });
        }
        Ok(())
    }
}
