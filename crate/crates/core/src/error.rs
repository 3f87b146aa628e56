use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what}: n = {n} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ordering has width {width}, which exceeds c = {c}")]
    WidthExceeded { width: usize, c: usize },

    #[error("codewords were encoded under different bounds (c = {left} vs c = {right})")]
    MismatchedBound { left: usize, right: usize },

    #[error("digraph is not semi-complete: no arc between {0} and {1}")]
    NotSemiComplete(usize, usize),

    #[error("ordering is not linked: cuts {i} and {j} are not joined by enough paths")]
    NotLinked { i: usize, j: usize },

    #[error("sequence member {index}: {source}")]
    Member {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
