use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Graft(#[from] graft_core::Error),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for a violated structural property, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Graft(graft_core::Error::Violation { .. }) => 1,
            _ => 2,
        }
    }
}
