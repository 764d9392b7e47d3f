use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An intersection array or partition pair fails a margin condition.
    #[error("margin violation: {0}")]
    Margin(String),

    /// A search-space guard or size cap would be exceeded. Nothing was computed.
    #[error("cap exceeded: {what} ({value} > {limit})")]
    CapExceeded { what: &'static str, value: u128, limit: u128 },

    /// The node budget ran out. `lower_bound` is the best value established so far.
    #[error("budget of {budget} nodes exhausted; best value so far {lower_bound}")]
    BudgetExhausted { budget: u64, lower_bound: usize },

    /// A supplied choice sequence indexed past the available greedy candidates.
    #[error("invalid policy index {index} at step {step}: only {available} candidates")]
    InvalidPolicy { step: usize, index: usize, available: usize },

    /// The preconditions of a construction do not hold.
    #[error("hypothesis ({which}) fails: {detail}")]
    Hypothesis { which: &'static str, detail: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn margin(msg: impl Into<String>) -> Self {
        Error::Margin(msg.into())
    }

    pub fn hypothesis(which: &'static str, detail: impl Into<String>) -> Self {
        Error::Hypothesis { which, detail: detail.into() }
    }

    pub fn cap(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::CapExceeded { what, value: value.into(), limit: limit.into() }
    }
}
