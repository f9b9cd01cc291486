use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid point ({x}, {y}): need finite coordinates with y > 0")]
    InvalidPoint { x: f64, y: f64 },

    #[error("bound too large: {what} range {lo}..={hi} exceeds the supported magnitude")]
    BoundTooLarge { what: &'static str, lo: f64, hi: f64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(i64),

    #[error("invalid discriminant {0}: need d > 0 with d = 0 or 1 mod 4")]
    InvalidDiscriminant(i64),

    #[error("form ({a}, {b}, {c}) is not primitive")]
    NotPrimitive { a: i64, b: i64, c: i64 },

    #[error("matrix with trace {0} is not hyperbolic")]
    NotHyperbolic(i64),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("oracle range exceeded: X = {0} (supported X <= 1e4)")]
    OracleRange(f64),

    #[error("box growth cap exceeded while counting representations of {n}")]
    BoxGrowthCap { n: u64 },

    #[error("cache version mismatch: file has {found}, expected {expected}")]
    VersionMismatch { found: String, expected: u32 },

    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("invariant violation at line {line}: {reason}")]
    InvariantViolation { line: usize, reason: String },

    #[error("precision precondition not met: {0}")]
    Precision(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
