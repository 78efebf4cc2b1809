/// Work performed by one kernel run.
///
/// Flops count every add, subtract, multiply, divide and compare-select on
/// grid values; bytes count every grid-element access at the element's
/// width, with no credit for caching or reuse across points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KernelCounters {
    pub flops: u64,
    pub bytes_read: u64,
    pub bytes_written: u64,
}

impl KernelCounters {
    pub fn add(&mut self, other: &KernelCounters) {
        self.flops += other.flops;
        self.bytes_read += other.bytes_read;
        self.bytes_written += other.bytes_written;
    }

    /// Flops per byte moved, or `None` when no bytes moved.
    pub fn arithmetic_intensity(&self) -> Option<f64> {
        let bytes = self.bytes_read + self.bytes_written;
        (bytes > 0).then(|| self.flops as f64 / bytes as f64)
    }
}
