use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension overflow: {0}")]
    DimensionOverflow(String),

    #[error("search budget exceeded after {0} nodes")]
    BudgetExceeded(u64),

    #[error("edge budget exceeded: instance has {edges} edges, budget is {budget}")]
    EdgeBudget { edges: u64, budget: u64 },

    #[error("no base provider covers x = {0}")]
    BaseUnavailable(u64),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("certificate structure: {0}")]
    Structure(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
