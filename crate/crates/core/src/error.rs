use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or measure lies outside the interval an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// Invalid input to an operation.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A randomized construction did not reach its target.
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, $kind:ident, $($arg:tt)+) => {{
        // bound first so NaN operands fail the check
        let ok: bool = $cond;
        if !ok {
            return Err($crate::error::Error::$kind(format!($($arg)+)));
        }
    }};
}
pub(crate) use ensure;
