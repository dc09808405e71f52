use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure in {context} after {iterations} iterations")]
    NumericalFailure { context: String, iterations: usize },

    #[error("entry magnitude {magnitude:e} at product degree {degree} exceeds the overflow guard; rescale the family")]
    Overflow { degree: usize, magnitude: f64 },

    #[error("enumeration of {needed} products exceeds the cap of {cap}; use the retained active set instead")]
    EnumerationCap { needed: u128, cap: u128 },

    #[error("linear program failed while evaluating vertex {vertex}: {status}")]
    Lp { vertex: usize, status: String },

    #[error("rescaling iteration {iteration}: {source}")]
    Restart {
        iteration: usize,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numerical(context: impl Into<String>, iterations: usize) -> Self {
        Error::NumericalFailure {
            context: context.into(),
            iterations,
        }
    }
}
