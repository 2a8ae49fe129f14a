use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no root set")]
    NoRootSet,
    #[error("exact input required")]
    ExactInputRequired,
    #[error("mixed float and exact arithmetic; demote explicitly")]
    MixedArithmetic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("empty section")]
    EmptySection,
    #[error("empty potential")]
    EmptyPotential,
    #[error("non-finite potential entry")]
    NonFinite,
    #[error("word entries must be 0 or 1")]
    InvalidWord,
    #[error(
        "period {k} exceeds the configured maximum {max}; raise PERIODIC_FSM_MAX_K to allow it"
    )]
    PeriodTooLarge { k: usize, max: usize },
    #[error("numerically singular section (pivot magnitude {pivot:e})")]
    Singular { pivot: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
