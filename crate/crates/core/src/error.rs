use thiserror::Error;

/// Errors reported by every module of the crate.
///
/// Nothing in the crate panics on bad input or produces a silent NaN; every
/// degree violation, degenerate configuration and out-of-domain parameter
/// surfaces as one of these variants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree error: {0}")]
    Degree(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    /// Parameters outside the smooth locus `a != b`, `a^2 != 4`, `b^2 != 4`.
    /// The offending pair is carried as reduced fraction strings.
    #[error("domain error: {reason} (a = {a}, b = {b})")]
    Domain { reason: String, a: String, b: String },

    #[error("domain error: {0}")]
    OutOfDomain(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("phi undefined: a + b = 0")]
    PhiUndefined,

    #[error("level error: {0}")]
    Level(String),

    #[error("kernel is not isotropic: {0}")]
    NotIsotropic(String),

    #[error("point error: {0}")]
    Point(String),

    #[error("order error: {0}")]
    Order(String),

    #[error("singular curve: {0}")]
    Singular(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A broken internal invariant. Always a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InternalInvariant(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
