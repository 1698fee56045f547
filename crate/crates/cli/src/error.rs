use interest_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Computation(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Computation(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::InvalidParameter { .. }
            | CoreError::Infeasible(_)
            | CoreError::Unpriceable { .. } => CliError::Input(err.to_string()),
            _ => CliError::Computation(err.to_string()),
        }
    }
}
