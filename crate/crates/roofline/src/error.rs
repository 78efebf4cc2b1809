use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RooflineError {
    #[error("unknown roofline platform '{name}'")]
    UnknownPlatform { name: String },
    #[error("platform has no bandwidth labeled '{label}'")]
    UnknownBandwidthLabel { label: String },
    #[error("arithmetic intensity must be positive and finite, got {ai}")]
    NonPositiveIntensity { ai: f64 },
    #[error("kernel '{kernel}' moved no bytes, so its intensity is undefined")]
    ZeroTraffic { kernel: String },
}
