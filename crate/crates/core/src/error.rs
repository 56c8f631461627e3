//! Error type shared by all solver modules.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the solvers in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the function.
    OutOfDomain {
        func: &'static str,
        arg: f64,
        reason: &'static str,
    },
    /// An iteration reached its cap without meeting its tolerance.
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    /// A parameter fails a construction or precondition check.
    InvalidParameter { what: String },
    /// The scalar coefficient is too close to zero to divide by.
    SingularCoefficient { coefficient: f64 },
    /// Two matrices that must share a shape do not.
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// A user-supplied norm failed the absolute-homogeneity spot check.
    NotAbsolutelyHomogeneous { relative_error: f64 },
    /// An internal invariant failed; this signals a bug, not bad input.
    Internal { what: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfDomain { func, arg, reason } => {
                write!(f, "{func}: argument {arg:e} out of domain ({reason})")
            }
            Error::NoConvergence { what, iterations } => {
                write!(f, "{what} did not converge within {iterations} iterations")
            }
            Error::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::SingularCoefficient { coefficient } => {
                write!(
                    f,
                    "coefficient {coefficient:e} is too close to zero to invert"
                )
            }
            Error::ShapeMismatch { expected, got } => {
                write!(
                    f,
                    "shape mismatch: expected {}x{}, got {}x{}",
                    expected.0, expected.1, got.0, got.1
                )
            }
            Error::NotAbsolutelyHomogeneous { relative_error } => {
                write!(
                    f,
                    "custom norm is not absolutely homogeneous (relative error {relative_error:e})"
                )
            }
            Error::Internal { what } => write!(f, "internal error: {what}"),
        }
    }
}

impl std::error::Error for Error {}
