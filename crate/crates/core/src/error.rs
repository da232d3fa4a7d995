use thiserror::Error;

/// Errors raised by the collapse solver and its numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// An iterative kernel ran out of iterations before meeting its tolerance.
    #[error("{op} did not converge within {iterations} iterations")]
    Convergence { op: &'static str, iterations: usize },

    /// A result over- or underflowed the representable range.
    #[error("overflow in {op}: {msg}")]
    Overflow { op: &'static str, msg: String },

    /// The requested exponent has no supported closed form or continuation.
    #[error("unsupported exponent gamma = {gamma} for {op}")]
    UnsupportedGamma { op: &'static str, gamma: f64 },

    /// An approximation shape parameter was requested outside its regime.
    #[error("shape {shape} is not available for gamma = {gamma}: {msg}")]
    IncompatibleShape {
        shape: &'static str,
        gamma: f64,
        msg: &'static str,
    },

    /// A scenario parameter is absent.
    #[error("missing parameter `{name}` for scenario {kind}")]
    MissingParameter { kind: &'static str, name: String },

    /// A scenario parameter is present but invalid.
    #[error("invalid parameter `{name}` for scenario {kind}: {msg}")]
    InvalidParameter {
        kind: &'static str,
        name: String,
        msg: String,
    },

    /// The adaptive integrator could not meet its tolerance.
    #[error("integrator step failure at t = {t}: {msg}")]
    StepFailure { t: f64, msg: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }

    /// True for errors caused by a kernel failing to converge, as opposed to
    /// bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::Convergence { .. } | Error::StepFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
