use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("step size underflow at T = {t}")]
    StepSizeUnderflow { t: f64 },

    #[error("step limit {max_steps} exhausted at T = {t}")]
    TooManySteps { t: f64, max_steps: usize },

    #[error("Wronskian drift {residual:e} at T = {t}")]
    WronskianDrift { t: f64, residual: f64 },

    #[error("quadrature did not converge, error estimate {estimate:e}")]
    QuadratureNonConvergence { estimate: f64 },

    #[error("phase sample phi = {phi} failed: {source}")]
    EnsembleSample {
        phi: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::StepSizeUnderflow { .. }
            | Error::TooManySteps { .. }
            | Error::WronskianDrift { .. }
            | Error::QuadratureNonConvergence { .. }
            | Error::Consistency(_) => true,
            Error::EnsembleSample { source, .. } => source.is_numerical(),
            _ => false,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
