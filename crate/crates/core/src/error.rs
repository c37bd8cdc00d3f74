//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rectangle sides must be finite and positive, got length={length}, height={height}")]
    BadRectangle { length: f64, height: f64 },

    #[error("disjointness threshold needs length > 2*height, got aspect {aspect}")]
    AspectTooSmall { aspect: f64 },

    #[error("angle {angle} outside the open interval (0, {limit})")]
    AngleOutOfRange { angle: f64, limit: f64 },

    #[error("angles must satisfy 0 <= low < high, got low={low}, high={high}")]
    AngleOrder { low: f64, high: f64 },

    #[error("need at least {needed} {what}, got {got}")]
    TooFew {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    #[error("polygon is not convex with positive area: {reason}")]
    BadPolygon { reason: &'static str },

    #[error("disk radius must be finite and positive, got {radius}")]
    BadDisk { radius: f64 },

    #[error("envelope must satisfy 0 < low < high < 1, got low={low}, high={high}")]
    BadEnvelope { low: f64, high: f64 },

    #[error("base slope must lie in (0, 1], got {slope}")]
    BadBaseSlope { slope: f64 },

    #[error("sequence index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("no valid window in the first {prefix} slopes: {details}")]
    EnvelopeRejected { prefix: usize, details: String },

    #[error("validated window has {have} angles, level {level} needs {level}")]
    WindowTooShort { level: usize, have: usize },

    #[error("level count {requested} exceeds the construction cap {cap}")]
    LevelCapExceeded { requested: usize, cap: usize },

    #[error("invalid Orlicz function: {0}")]
    BadOrlicz(String),

    #[error(
        "certification failed at ({x}, {y}): maximal lower bound {value} < threshold {threshold}"
    )]
    CertificationFailed {
        x: f64,
        y: f64,
        value: f64,
        threshold: f64,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
