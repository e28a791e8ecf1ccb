use thiserror::Error;

/// Errors raised by the library. Validation failures (`InvalidParams`,
/// `InvalidLabel`, `Precondition`) are caller mistakes; `Unsupported` marks
/// requests outside the families this crate knows how to compute.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters (p, q) = ({p}, {q}): {reason}")]
    InvalidParams { p: i64, q: i64, reason: &'static str },
    #[error("invalid Kac label ({r}, {s}): labels must satisfy r >= 1 and s >= 1")]
    InvalidLabel { r: i64, s: i64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Error::Precondition(format!($($arg)+)));
        }
    };
}

pub(crate) use ensure;
