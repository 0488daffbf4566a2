use thiserror::Error;

/// Errors produced by space construction, distance evaluation and the
/// four-point computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point outside domain: {0}")]
    Domain(String),

    #[error("matrix is not square: {rows} rows, row {bad_row} has {bad_len} entries")]
    NotSquare {
        rows: usize,
        bad_row: usize,
        bad_len: usize,
    },

    #[error("not a valid metric: {0}")]
    MetricViolation(String),

    #[error("quadruple has all six distances zero; the ratio is undefined")]
    UndefinedRatio,

    #[error("space has {got} points but the operation needs at least {need}")]
    TooFewPoints { got: usize, need: usize },

    #[error("{op} requires a parametric space; run the finite-matrix variant instead")]
    NotParametric { op: &'static str },

    #[error(
        "exhaustive enumeration is capped at n = {cap} (got n = {n}); \
         subsample the space to an explicit budget first"
    )]
    EnumerationCap { n: usize, cap: usize },

    #[error("budget {got} is below the minimum of {min}")]
    BudgetTooSmall { got: u64, min: u64 },

    #[error("no quadruple reached the scale floor {floor} inside the search region")]
    InfeasibleScale { floor: f64 },

    #[error("no sign change on [{lo}, {hi}]; cannot bracket a root")]
    NoBracket { lo: f64, hi: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
