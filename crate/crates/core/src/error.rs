use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix order n must be at least 1")]
    ZeroOrder,

    #[error("eigenvalue a must be nonzero")]
    ZeroEigenvalue,

    #[error("index {index} out of range: {reason}")]
    OutOfRange { index: usize, reason: String },

    #[error("hypergeometric lower parameter hits the pole c = -{pole} inside the summation range")]
    HypergeometricPole { pole: u32 },

    #[error("precision of {0} bits is below the 53-bit minimum")]
    PrecisionTooLow(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("Hankel determinant D_{m} vanishes inside the range where it must be nonzero")]
    DegenerateHankel { m: usize },

    #[error("root finder did not converge after {iterations} iterations (max correction {max_correction})")]
    NoConvergence {
        iterations: usize,
        max_correction: String,
        /// Best iterate as `(re, im)` decimal strings.
        best: Vec<(String, String)>,
        residuals: Vec<String>,
    },

    #[error("QR iteration stalled at active block {lo}..={hi} after {iterations} iterations")]
    QrNoConvergence {
        lo: usize,
        hi: usize,
        iterations: usize,
        /// Subdiagonal magnitudes of the active block at the time of failure.
        subdiagonal: Vec<String>,
    },
}
