use thiserror::Error;

/// Errors raised by the numerical engines and model constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or integrand diverges at the requested point.
    #[error("divergence: {0}")]
    Divergence(String),

    /// A value lies outside the range an inverse or a table can handle.
    #[error("range error: {0}")]
    Range(String),

    /// A parameter or data set violates a model invariant.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Line-oriented input could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Both numerator and denominator of a Fresnel coefficient vanish.
    #[error("singular interface: {0}")]
    SingularInterface(String),

    /// The multiple-reflection denominator `1 - r^2 e^{i phi}` vanishes.
    #[error("cavity resonance: {0}")]
    Resonance(String),

    /// Quadrature did not reach the requested tolerance.
    #[error("accuracy: quadrature did not converge (estimate {estimate:e}, error {error:e})")]
    Accuracy { estimate: f64, error: f64 },

    /// The model does not support the requested evaluation.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = CasimirError> = std::result::Result<T, E>;
