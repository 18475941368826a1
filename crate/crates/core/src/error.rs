use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its subdivision budget. The best
    /// estimate and its error bound are carried along so callers can decide
    /// whether the partial result is still useful.
    #[error(
        "quadrature did not converge within {max_subdivisions} subdivisions: \
         best estimate {value:e} +/- {est_error:e} after {evaluations} evaluations"
    )]
    Convergence {
        value: f64,
        est_error: f64,
        evaluations: u64,
        max_subdivisions: usize,
    },

    /// Chebyshev interpolation could not reach the requested accuracy.
    #[error("interpolation stalled at {achieved:e} relative accuracy (requested {requested:e})")]
    Interpolation { achieved: f64, requested: f64 },

    /// Malformed tabulated-curve data; `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    CsvFormat {
        path: String,
        line: usize,
        message: String,
    },

    /// Deviation curves share no common kL range.
    #[error("deviation curves do not overlap in kL (common range is empty)")]
    NoOverlap,

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
