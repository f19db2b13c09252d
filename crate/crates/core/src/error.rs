use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Unsupported,
    Parse,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable lists differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("generator list is zero")]
    ZeroIdeal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("classes have different support")]
    DifferentSupport,
    #[error("classes have different support presentations")]
    DifferentPresentation,
    #[error("({0}) is not a regular sequence")]
    NotRegularSequence(String),
    #[error("support of the class meets more than the chosen point")]
    MultiPointSupport,
    #[error("radical membership undecided at power bound {0}")]
    UndecidedAtBound(u32),
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
    #[error("size bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. } => ErrorKind::Parse,
            Error::MultiPointSupport
            | Error::UndecidedAtBound(_)
            | Error::UnsupportedPlace(_)
            | Error::BoundsExceeded(_) => ErrorKind::Unsupported,
            _ => ErrorKind::Precondition,
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
