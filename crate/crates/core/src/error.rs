use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Variants that stop short of a target carry the best value reached so a
/// caller can still report it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is out of range: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("series diverges: {0}")]
    Divergence(String),

    #[error("unsupported Bernoulli degree {0}")]
    UnsupportedDegree(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("accuracy {tol:e} not reached, best estimate {estimate} with error budget {budget:e}")]
    Accuracy {
        tol: f64,
        estimate: f64,
        budget: f64,
    },

    #[error("no isolated sign change on [{lo}, {hi}]: {detail}")]
    Bracket { lo: f64, hi: f64, detail: String },

    #[error("no convergence after {iterations} iterations, best estimate {estimate}, residual {residual:e}")]
    Convergence {
        iterations: usize,
        estimate: f64,
        residual: f64,
    },

    #[error("dimension {n} exceeds the dense matrix cap {cap}")]
    Resource { n: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Domain {
        name,
        value,
        reason,
    }
}
