use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum HypError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Möbius map was evaluated at (or numerically at) its pole.
    #[error("pole of Möbius map at z = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// Quadrature ran out of subdivisions before meeting its tolerance.
    #[error("quadrature budget exceeded after {evaluations} evaluations (value {value}, error estimate {error_estimate})")]
    BudgetExceeded {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// The point sits on the boundary, where distance-based bounds degenerate.
    #[error("point lies on the domain boundary")]
    Boundary,

    /// An image curve left the target domain.
    #[error("range error: {0}")]
    Range(String),

    /// A geometric construction produced an invalid object.
    #[error("construction error: {0}")]
    Construction(String),

    /// Least-squares fit could not be formed.
    #[error("fit error: {0}")]
    Fit(String),

    /// An integral diverged.
    #[error("divergent integral: {0}")]
    Divergence(String),

    /// Inputs are individually valid but violate a precondition together.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// A searched-for object (level set, crossing) does not exist.
    #[error("not found: {0}")]
    NotFound(String),

    /// An iterative solver did not reach its tolerance.
    #[error("no convergence after {iterations} iterations (residual {residual})")]
    NonConvergence { iterations: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, HypError>;

pub(crate) fn domain_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(HypError::Domain(msg.into()))
}
