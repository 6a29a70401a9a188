use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Validation,
    Resource,
    Arithmetic,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u32 },

    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),

    #[error("ideal does not have finite colength at the origin: {0}")]
    NotFiniteColength(String),

    #[error("dimension is undefined for the unit ideal")]
    UndefinedDimension,

    #[error(
        "ideal is not stable under the endomorphism: image of {generator} is not in the ideal"
    )]
    UnstableIdeal { generator: String },

    #[error("validation failed: {0}")]
    ValidationFailed(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at line {line}, column {column} near `{token}`: {message}")]
    Syntax {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },

    #[error("semantic error at line {line}: {message}")]
    Semantic { line: usize, message: String },

    #[error("at iteration n = {n}: {source}")]
    AtIteration {
        n: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DivisionByZero { .. } => ErrorKind::Arithmetic,
            Error::ResourceExceeded(_) => ErrorKind::Resource,
            Error::NotFiniteColength(_)
            | Error::UndefinedDimension
            | Error::UnstableIdeal { .. }
            | Error::ValidationFailed(_) => ErrorKind::Validation,
            Error::InvalidArgument(_) | Error::Syntax { .. } | Error::Semantic { .. } => {
                ErrorKind::Input
            }
            Error::AtIteration { source, .. } => source.kind(),
        }
    }

    pub(crate) fn at_iteration(n: usize, err: Error) -> Error {
        Error::AtIteration {
            n,
            source: Box::new(err),
        }
    }
}
