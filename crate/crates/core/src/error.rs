use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller-supplied value violates an operation's precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// An argument lies outside the domain of a function.
    #[error("argument {value} outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    /// An iterative method did not reach its tolerance.
    #[error("{method} failed to converge after {iterations} iterations (residual {residual:e})")]
    Convergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
        /// Final iterate of a complex root search, when there is one.
        last_iterate: Option<Complex64>,
    },

    /// Quadrature tolerance not met at the maximum refinement depth.
    #[error("quadrature tolerance not met: estimate {estimate}, error bound {error_bound:e}")]
    Accuracy { estimate: f64, error_bound: f64 },

    /// A matrix factorisation hit a numerically zero pivot.
    #[error("degenerate matrix: {0}")]
    Degeneracy(String),

    /// A root was found on the wrong side of a branch cut.
    #[error("root on wrong branch: {0}")]
    Branch(String),

    /// A request exceeds an enumeration or integer-range cap.
    #[error("out of range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
