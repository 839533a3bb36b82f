use thiserror::Error;

/// Errors raised by constructors and verification engines.
///
/// `Invariant` signals a broken internal invariant (a bug or a counterexample
/// to an asserted identity); `Input` and `Bound` are user-facing rejections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("size bound exceeded: {what} = {value} > {limit}")]
    Bound {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("pattern mismatch: {0}")]
    Pattern(String),
    #[error("not connected: {0}")]
    NotConnected(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn invariant<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invariant(msg.into()))
}
