use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Inverse of the zero quaternion.
    #[error("zero divisor: quaternion has no inverse")]
    ZeroDivisor,

    /// A real quaternion lies on every slice, so no unit can be picked for it.
    #[error("ambiguous slice: real quaternion {0} has no unique imaginary unit")]
    AmbiguousSlice(f64),

    #[error("numerical breakdown in {stage}: {detail}")]
    NumericalBreakdown { stage: &'static str, detail: String },

    #[error("polynomial is not nonnegative on the real line: {0}")]
    NotNonnegative(String),

    #[error("hypothesis violated: leading symmetrized coefficient is {0}")]
    HypothesisViolated(f64),
}

impl Error {
    pub(crate) fn breakdown(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::NumericalBreakdown {
            stage,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
