use crate::error::SimError;
use crate::platform::{MemoryKind, PlatformConfig};
use crate::profile::Kernel;

/// Mapping of device memory channels onto processing elements.
///
/// HBM assigns each PE its own block of `channels_per_pe` channels; DDR4 has
/// a single channel every PE shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelMap {
    kind: MemoryKind,
    pe_count: u32,
    channels_per_pe: u32,
    assignments: Vec<Vec<u32>>,
}

impl ChannelMap {
    pub fn pe_count(&self) -> u32 {
        self.pe_count
    }

    pub fn channels_per_pe(&self) -> u32 {
        self.channels_per_pe
    }

    pub fn kind(&self) -> MemoryKind {
        self.kind
    }

    /// Channel ids PE `pe` reads and writes through.
    pub fn channels_for(&self, pe: u32) -> &[u32] {
        &self.assignments[pe as usize]
    }

    /// Distinct channels powered on by this mapping.
    pub fn enabled_channels(&self) -> u32 {
        match self.kind {
            MemoryKind::Hbm => self.pe_count * self.channels_per_pe,
            MemoryKind::Ddr4 => 1,
        }
    }
}

/// Assigns memory channels to `pe_count` PEs running `kernel`.
///
/// HBM gives every PE `channels_per_pe` exclusive channels; DDR4 shares its
/// single channel across all PEs. Channel capacity is checked before the
/// per-kernel PE cap.
pub fn assign_channels(
    platform: &PlatformConfig,
    kernel: Kernel,
    pe_count: u32,
    channels_per_pe: u32,
) -> Result<ChannelMap, SimError> {
    if pe_count == 0 {
        return Err(SimError::ZeroPes);
    }
    if channels_per_pe == 0 {
        return Err(SimError::ZeroChannelsPerPe);
    }

    let usable = platform.memory.usable_channels;
    let assignments = match platform.memory.kind {
        MemoryKind::Hbm => {
            let requested = pe_count * channels_per_pe;
            if requested > usable {
                return Err(SimError::ChannelsExhausted { requested, usable });
            }
            (0..pe_count)
                .map(|pe| (pe * channels_per_pe..(pe + 1) * channels_per_pe).collect())
                .collect()
        }
        MemoryKind::Ddr4 => {
            if channels_per_pe > usable {
                return Err(SimError::ChannelsExhausted {
                    requested: channels_per_pe,
                    usable,
                });
            }
            vec![vec![0]; pe_count as usize]
        }
    };

    let cap = platform.pe_caps.for_kernel(kernel);
    if pe_count > cap {
        return Err(SimError::PeCapExceeded {
            kernel,
            requested: pe_count,
            cap,
        });
    }

    Ok(ChannelMap {
        kind: platform.memory.kind,
        pe_count,
        channels_per_pe,
        assignments,
    })
}

/// Bus-width adapter between a memory-channel stream and the host-link
/// stream (e.g. four 256-bit channel words repacked into one 1024-bit host
/// word).
///
/// `push` emits only whole output words; `finish` drains the remainder, so
/// every byte pushed in comes back out.
#[derive(Debug, Clone)]
pub struct StreamWidthConverter {
    out_bytes: u64,
    buffered: u64,
    bytes_in: u64,
    bytes_out: u64,
}

impl StreamWidthConverter {
    /// `in_bits` and `out_bits` are the two bus widths; both must be
    /// positive multiples of 8.
    pub fn new(in_bits: u32, out_bits: u32) -> Self {
        assert!(in_bits > 0 && in_bits % 8 == 0, "in_bits: {in_bits}");
        assert!(out_bits > 0 && out_bits % 8 == 0, "out_bits: {out_bits}");
        Self {
            out_bytes: u64::from(out_bits) / 8,
            buffered: 0,
            bytes_in: 0,
            bytes_out: 0,
        }
    }

    /// Accepts `bytes` from the input stream and returns how many bytes of
    /// whole output words became available.
    pub fn push(&mut self, bytes: u64) -> u64 {
        self.bytes_in += bytes;
        self.buffered += bytes;
        let emitted = (self.buffered / self.out_bytes) * self.out_bytes;
        self.buffered -= emitted;
        self.bytes_out += emitted;
        emitted
    }

    /// Drains the partial trailing word at end of stream.
    pub fn finish(&mut self) -> u64 {
        let emitted = self.buffered;
        self.buffered = 0;
        self.bytes_out += emitted;
        emitted
    }

    pub fn bytes_in(&self) -> u64 {
        self.bytes_in
    }

    pub fn bytes_out(&self) -> u64 {
        self.bytes_out
    }
}
