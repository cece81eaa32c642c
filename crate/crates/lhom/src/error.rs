use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Flow(#[from] lhom_flow::FlowError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}
