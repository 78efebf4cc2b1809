use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkloadError {
    #[error("line {line_no}: malformed pair line: {content:?}")]
    MalformedLine { line_no: usize, content: String },
    #[error("line {line_no}: sequence lengths differ")]
    LengthMismatch { line_no: usize },
    #[error("invalid edit profile: {reason}")]
    BadEditProfile { reason: String },
    #[error("invalid value range [{lo}, {hi}]")]
    BadValueRange { lo: f32, hi: f32 },
    #[error("grid file {path:?}: {reason}")]
    BadGridFile { path: String, reason: String },
    #[error("csv row {row} has {got} fields, header has {expected}")]
    RowShape {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Grid(#[from] weather_stencils::StencilError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
