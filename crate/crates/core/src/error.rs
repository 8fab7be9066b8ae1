use thiserror::Error;

/// Errors shared by every module in the crate.
///
/// `InvalidInput` covers precondition violations (bad vertices, parameter
/// triples outside a theorem's hypothesis, malformed files). `BudgetExceeded`
/// is an explicit refusal: the requested computation would blow through a
/// configured enumeration or solver budget, and the caller must either raise
/// the budget or switch to a sampled mode. Refusals are never silent
/// downgrades.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {what} requires {required} but the budget is {budget}")]
    BudgetExceeded {
        what: String,
        required: u128,
        budget: u128,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, required: u128, budget: u128) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            required,
            budget,
        }
    }
}
