use thiserror::Error;

pub type Result<T, E = VerifyError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Core(#[from] delshadow_core::Error),
    #[error("universe of {universe} elements is too large for {mode} search (limit {limit})")]
    Infeasible {
        universe: u64,
        limit: u64,
        mode: &'static str,
    },
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
