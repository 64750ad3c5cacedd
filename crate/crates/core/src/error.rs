use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter:?} is not in alphabet {alphabet}")]
    AlphabetMismatch { letter: char, alphabet: String },

    #[error("alphabets differ: {left} vs {right}")]
    AlphabetsDiffer { left: String, right: String },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("budget exceeded: {what} reached the limit of {limit}")]
    BudgetExceeded { what: &'static str, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for the failures the CLI reports with exit status 1.
    pub fn is_budget_or_unsupported(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Unsupported(_))
    }
}
