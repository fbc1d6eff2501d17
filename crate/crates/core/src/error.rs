use core::fmt;

/// Errors produced by the gyrogroup kernel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Error {
    /// Two operands (or a matrix and a vector) have incompatible sizes.
    DimensionMismatch {
        /// Size required by the first operand.
        expected: usize,
        /// Size actually supplied.
        found: usize,
    },
    /// A vector or matrix was empty.
    Empty,
    /// A NaN or infinite entry was supplied.
    NonFinite,
    /// A point does not lie strictly inside the unit ball.
    OutsideBall {
        /// Euclidean norm of the offending vector.
        norm: f64,
    },
    /// A matrix failed the orthogonality test `‖MᵀM − I‖_max ≤ tol`.
    NotOrthogonal {
        /// Observed max-norm residual.
        residual: f64,
    },
    /// A tolerance had a negative or non-finite component, or both were zero.
    InvalidTolerance,
    /// A sampling or construction argument was out of range.
    InvalidArgument(&'static str),
    /// A random sample stayed numerically singular after every retry.
    Degenerate {
        /// Number of samples drawn before giving up.
        attempts: u32,
    },
    /// A linear system was numerically singular.
    Singular,
    /// A black-box map could not be expressed as `L_u ∘ τ`.
    NotAnIsometry {
        /// Largest probe or orthogonality residual observed.
        residual: f64,
    },
    /// An internal identity failed; points at a bug rather than bad input.
    Inconsistent {
        /// What was being checked.
        what: &'static str,
        /// Observed residual.
        residual: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Self::Empty => f.write_str("empty vector or matrix"),
            Self::NonFinite => f.write_str("non-finite entry"),
            Self::OutsideBall { norm } => {
                write!(f, "point of norm {norm} is not inside the open unit ball")
            }
            Self::NotOrthogonal { residual } => {
                write!(f, "matrix is not orthogonal (residual {residual:e})")
            }
            Self::InvalidTolerance => f.write_str("invalid tolerance"),
            Self::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Self::Degenerate { attempts } => {
                write!(f, "degenerate random sample after {attempts} attempts")
            }
            Self::Singular => f.write_str("singular linear system"),
            Self::NotAnIsometry { residual } => {
                write!(f, "map is not an isometry (max residual {residual:e})")
            }
            Self::Inconsistent { what, residual } => {
                write!(
                    f,
                    "internal consistency check failed: {what} (residual {residual:e})"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
