use alloc::string::String;

/// Errors raised by the core operations.
///
/// The variants map onto the CLI exit-code classes: `Decode` and `Format`
/// are input-format problems, `InvalidArgument` is a caller error, and
/// `DegenerateVariance` is a statistical precondition failure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid UTF-8 at byte offset {offset}")]
    Decode { offset: u64 },
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("degenerate variance: both samples are constant, t is undefined")]
    DegenerateVariance,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
