//! Error types shared across the crate.

/// Errors produced by special-function evaluation, quadrature, steppers,
/// and spectral assembly.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Evaluation at a pole (e.g. Γ at a non-positive integer).
    #[error("pole encountered at {argument}")]
    Pole { argument: f64 },

    /// Result exceeds the representable range of f64.
    #[error("overflow: {what}")]
    Overflow { what: String },

    /// Argument outside the documented domain of the operation.
    #[error("domain error: {what}")]
    Domain { what: String },

    /// An iterative process hit its term cap before meeting tolerance.
    #[error("no convergence after {terms} terms (tol {tol:e})")]
    NonConvergence { terms: usize, tol: f64 },

    /// A time stepper produced values beyond its stability threshold.
    #[error("instability at step {step}: |u| = {magnitude:e} exceeds {threshold:e}")]
    Instability {
        step: usize,
        magnitude: f64,
        threshold: f64,
    },

    /// Mode or sample index outside the valid range.
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// A sampled grid that cannot support the requested operation.
    #[error("invalid grid: {what}")]
    InvalidGrid { what: String },

    /// An operation that needs non-trivial data received all zeros.
    #[error("zero data: {what}")]
    ZeroData { what: String },
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub(crate) fn grid(what: impl Into<String>) -> Self {
        Error::InvalidGrid { what: what.into() }
    }

    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow { what: what.into() }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
