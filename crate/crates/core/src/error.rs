use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter violates an operation's precondition.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// An edge count or other integer is outside the admissible range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// Families are limited to 64 labelled vertices.
    #[error("ground set of {0} vertices exceeds the 64-vertex limit")]
    TooManyVertices(u32),

    #[error("malformed family: {0}")]
    MalformedFamily(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("search space too large: {0}")]
    SearchTooLarge(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown design '{0}'")]
    UnknownDesign(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    /// Stable identifier used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::OutOfRange(_) => "OutOfRange",
            Error::TooManyVertices(_) => "TooManyVertices",
            Error::MalformedFamily(_) => "MalformedFamily",
            Error::Parse { .. } => "Parse",
            Error::SearchTooLarge(_) => "SearchTooLarge",
            Error::Unsupported(_) => "Unsupported",
            Error::UnknownDesign(_) => "UnknownDesign",
            Error::CrossCheck(_) => "CrossCheck",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::CrossCheck(_))
    }
}

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;
