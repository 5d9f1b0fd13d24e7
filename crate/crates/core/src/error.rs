use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no events")]
    NoEvents,
    #[error("unsorted events: event {index} at {time} does not follow its predecessor")]
    UnsortedEvents { index: usize, time: f64 },
    #[error("event {index} at {time} lies outside the span [{start}, {end})")]
    EventOutOfSpan {
        index: usize,
        time: f64,
        start: f64,
        end: f64,
    },
    #[error("series is empty")]
    EmptySeries,
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series too short: need at least {needed} samples, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("too few points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("max lag {max_lag} must be smaller than the series length {len}")]
    MaxLagTooLarge { max_lag: usize, len: usize },
    #[error("zero variance")]
    ZeroVariance,
    #[error("zero denominator in normalization")]
    ZeroDenominator,
    #[error("empty {0} grid")]
    EmptyGrid(&'static str),
    #[error("unknown wavelet `{0}` (expected gaussian_wave, mexican_hat, haar or morlet)")]
    UnknownWavelet(String),
    #[error("wavelet fields differ in {0}")]
    GridMismatch(&'static str),
    #[error("phase requires complex wavelet")]
    PhaseRequiresComplex,
    #[error("degenerate ranges: every cell has zero range")]
    DegenerateRanges,
    #[error("skeleton is empty")]
    EmptySkeleton,
    #[error("non-finite scaling exponent at q = {0}")]
    NonFiniteTau(f64),
    #[error("missing column `{0}`")]
    MissingColumn(String),
    #[error("row {row}: {message}")]
    Csv { row: u64, message: String },
    #[error("no data rows")]
    NoDataRows,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
