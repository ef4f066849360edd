use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid N-fold specification: {0}")]
    InvalidSpec(String),

    #[error("budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("relation cannot be put in lifting form: {0}")]
    NotCanonicalizable(String),

    #[error("lifting conditions failed{}: {reasons}", step.map(|s| format!(" at M={s}")).unwrap_or_default())]
    ConditionsFailed { step: Option<usize>, reasons: String },

    #[error("largest circuit support is {max_support}, need at least 3")]
    NoCircuitOfSupport3 { max_support: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}
